//! Text formats for signatures, automata, terms and data trees.
//!
//! Automaton files are line based; `#` starts a comment.
//!
//! ```text
//! sig f/2 k/0
//! orbit q0 0
//! orbit q1 1
//! initial q0
//! rule q0 bound f -> q1{1<-new}, q1{1<-new}
//! rule q1 bound f -> q1{1<-1}, q1{1<-1}
//! rule q1 free 1 k ->
//! ```
//!
//! Further directives: `include <file>` (signature lines from another file),
//! `uses_dummy` (reserve register 0 for the dummy name `_`) and `dropped`
//! (the output of name dropping; orbit ids then carry their live registers as
//! in `q1@{1}`).

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use crate::nominal::{is_identifier, Name};
use crate::rnta::{ChildSpec, Orbit, OrbitId, RegSet, RegisterMap, RntaSpec, RuleKind, Source, SymbolicRule, Violation};
use crate::term::{ArityError, DataTree, Label, Signature, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatedViolation {
    /// 1-based line of the offending declaration, 0 if none applies.
    pub line: usize,
    pub violation: Violation,
}

impl fmt::Display for LocatedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.violation)
        } else {
            write!(f, "{}", self.violation)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid automaton:\n{}", .0.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<LocatedViolation>),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Resolves `include` targets to file contents.
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<String, String>;

fn no_includes(path: &str) -> Result<String, String> {
    Err(format!("cannot include `{path}` here"))
}

/// Whitespace-separated words of a line, with 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

// `#` starts a comment at the start of a line or when followed by a space;
// otherwise it belongs to a symbol such as `#data`.
fn strip_comment(line: &str) -> &str {
    if line.trim_start().starts_with('#') {
        return "";
    }
    let bytes = line.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        let after_space = i > 0 && bytes[i - 1].is_ascii_whitespace();
        let before_space = bytes.get(i + 1).is_none_or(|b| b.is_ascii_whitespace());
        if c == b'#' && after_space && before_space {
            return &line[..i];
        }
    }
    line
}

fn is_symbol_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"(),.{}/".contains(c))
}

fn parse_sig_word(line: usize, col: usize, w: &str, sig: &mut Signature) -> Result<(), FormatError> {
    let Some((name, arity)) = w.rsplit_once('/') else {
        return Err(syntax(line, col, format!("expected `symbol/arity`, found `{w}`")));
    };
    if !is_symbol_token(name) {
        return Err(syntax(line, col, format!("invalid symbol `{name}`")));
    }
    let arity: usize = arity
        .parse()
        .map_err(|_| syntax(line, col, format!("invalid arity in `{w}`")))?;
    sig.add(Symbol::intern(name), arity)
        .map_err(|e| syntax(line, col, e.to_string()))
}

fn parse_sig_lines(text: &str, sig: &mut Signature, resolver: Resolver, depth: usize) -> Result<(), FormatError> {
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let ws = words(strip_comment(raw));
        match ws.first() {
            None => {}
            Some((_, "sig")) => {
                for &(col, w) in &ws[1..] {
                    parse_sig_word(ln, col, w, sig)?;
                }
            }
            Some(&(col, "include")) => include(ln, col, &ws, sig, resolver, depth)?,
            Some(&(col, w)) => return Err(syntax(ln, col, format!("expected `sig` or `include`, found `{w}`"))),
        }
    }
    Ok(())
}

fn include(
    ln: usize,
    col: usize,
    ws: &[(usize, &str)],
    sig: &mut Signature,
    resolver: Resolver,
    depth: usize,
) -> Result<(), FormatError> {
    if ws.len() != 2 {
        return Err(syntax(ln, col, "expected `include <file>`"));
    }
    if depth > 8 {
        return Err(syntax(ln, col, "includes nested too deeply"));
    }
    let text = resolver(ws[1].1).map_err(|e| syntax(ln, ws[1].0, e))?;
    parse_sig_lines(&text, sig, resolver, depth + 1)
        .map_err(|e| syntax(ln, ws[1].0, format!("in `{}`: {e}", ws[1].1)))
}

/// Parses a signature file made of `sig f/2 k/0` lines.
pub fn parse_signature(text: &str) -> Result<Signature, FormatError> {
    let mut sig = Signature::default();
    parse_sig_lines(text, &mut sig, &no_includes, 0)?;
    if !sig.has_constant() {
        return Err(syntax(1, 1, "signature has no constant symbol"));
    }
    Ok(sig)
}

pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::from("sig");
    for (s, n) in sig.symbols() {
        write!(out, " {s}/{n}").unwrap();
    }
    out
}

/// An automaton together with the source lines of its declarations.
#[derive(Clone, Debug)]
pub struct ParsedSpec {
    pub spec: RntaSpec,
    pub orbit_lines: Vec<usize>,
    pub rule_lines: Vec<usize>,
}

impl ParsedSpec {
    /// Validation problems, located at the declaration they concern.
    pub fn violations(&self) -> Vec<LocatedViolation> {
        self.spec
            .violations()
            .into_iter()
            .map(|v| {
                let line = match (v.rule, v.orbit) {
                    (Some(r), _) => self.rule_lines[r],
                    (None, Some(o)) => self.orbit_lines[o],
                    _ => 0,
                };
                LocatedViolation { line, violation: v }
            })
            .collect()
    }
}

fn parse_orbit_id(s: &str) -> Option<(&str, Option<RegSet>)> {
    match s.split_once('@') {
        None => is_orbit_name(s).then_some((s, None)),
        Some((base, live)) => {
            let inner = live.strip_prefix('{')?.strip_suffix('}')?;
            let mut set = RegSet::empty();
            for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
                let j: usize = part.trim().parse().ok()?;
                if !(1..=crate::rnta::MAX_REGISTERS).contains(&j) {
                    return None;
                }
                set.insert(j);
            }
            is_orbit_name(base).then_some((base, Some(set)))
        }
    }
}

fn is_orbit_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses without validating; see [`ParsedSpec::violations`].
pub fn parse_automaton_unchecked(text: &str, resolver: Resolver) -> Result<ParsedSpec, FormatError> {
    let mut sig = Signature::default();
    let mut uses_dummy = false;
    let mut dropped = false;
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut orbit_lines = Vec::new();
    let mut ids: HashMap<String, OrbitId> = HashMap::new();
    let mut initial: Option<(usize, usize, String)> = None;
    // Rules are resolved after all orbits are known.
    let mut pending: Vec<(usize, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        let ws = words(line);
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        match head {
            "sig" => {
                for &(c, w) in &ws[1..] {
                    parse_sig_word(ln, c, w, &mut sig)?;
                }
            }
            "include" => include(ln, col, &ws, &mut sig, resolver, 0)?,
            "uses_dummy" | "dropped" => {
                if let Some(&(c, _)) = ws.get(1) {
                    return Err(syntax(ln, c, format!("`{head}` takes no arguments")));
                }
                if head == "dropped" {
                    dropped = true;
                } else {
                    uses_dummy = true;
                }
            }
            "orbit" => {
                if ws.len() != 3 {
                    return Err(syntax(ln, col, "expected `orbit <id> <registers>`"));
                }
                let (c, id) = ws[1];
                let (base, live) = parse_orbit_id(id).ok_or_else(|| syntax(ln, c, format!("invalid orbit id `{id}`")))?;
                let k: usize = ws[2].1.parse().map_err(|_| syntax(ln, ws[2].0, format!("invalid register count `{}`", ws[2].1)))?;
                if k > crate::rnta::MAX_REGISTERS {
                    return Err(syntax(ln, ws[2].0, "too many registers"));
                }
                if ids.contains_key(id) {
                    return Err(syntax(ln, c, format!("orbit `{id}` declared twice")));
                }
                ids.insert(id.to_string(), orbits.len());
                orbits.push(Orbit {
                    name: base.to_string(),
                    registers: k,
                    live: live.unwrap_or(RegSet::full(k)),
                });
                orbit_lines.push(ln);
            }
            "initial" => {
                if ws.len() != 2 {
                    return Err(syntax(ln, col, "expected `initial <id>`"));
                }
                if initial.is_some() {
                    return Err(syntax(ln, col, "only one initial orbit is supported"));
                }
                initial = Some((ln, ws[1].0, ws[1].1.to_string()));
            }
            "rule" => pending.push((ln, line.to_string())),
            _ => return Err(syntax(ln, col, format!("unknown directive `{head}`"))),
        }
    }
    if !dropped {
        if let Some(i) = ids.iter().filter(|(k, _)| k.contains('@')).map(|(_, &v)| v).min() {
            return Err(syntax(orbit_lines[i], 1, "orbit ids with `@{..}` need the `dropped` directive"));
        }
    }
    let Some((iln, icol, iname)) = initial else {
        return Err(syntax(text.lines().count().max(1), 1, "missing `initial` declaration"));
    };
    let initial = *ids
        .get(&iname)
        .ok_or_else(|| syntax(iln, icol, format!("unknown orbit `{iname}`")))?;

    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();
    for (ln, line) in pending {
        rules.push(parse_rule(ln, &line, &ids, &sig)?);
        rule_lines.push(ln);
    }
    if !sig.has_constant() {
        return Err(syntax(1, 1, "signature has no constant symbol"));
    }
    let spec = RntaSpec::unchecked(sig, orbits, rules, initial, uses_dummy, dropped);
    Ok(ParsedSpec {
        spec,
        orbit_lines,
        rule_lines,
    })
}

fn parse_rule(ln: usize, line: &str, ids: &HashMap<String, OrbitId>, sig: &Signature) -> Result<SymbolicRule, FormatError> {
    let Some(arrow) = line.find("->") else {
        return Err(syntax(ln, 1, "expected `->` in rule"));
    };
    let head = words(&line[..arrow]);
    if head.len() < 4 {
        return Err(syntax(ln, 1, "expected `rule <orbit> free <reg> <symbol> ->` or `rule <orbit> bound <symbol> ->`"));
    }
    let (oc, oname) = head[1];
    let source = *ids.get(oname).ok_or_else(|| syntax(ln, oc, format!("unknown orbit `{oname}`")))?;
    let (kind, (sc, sname)) = match head[2].1 {
        "free" if head.len() == 5 => {
            let letter = head[3]
                .1
                .parse()
                .map_err(|_| syntax(ln, head[3].0, format!("invalid register `{}`", head[3].1)))?;
            (RuleKind::Free { letter }, head[4])
        }
        "bound" if head.len() == 4 => (RuleKind::Bound, head[3]),
        k => return Err(syntax(ln, head[2].0, format!("malformed `{k}` rule"))),
    };
    let symbol = Symbol::intern(sname);
    if sig.arity(symbol).is_none() {
        return Err(syntax(ln, sc, format!("unknown symbol `{sname}`")));
    }
    let body = &line[arrow + 2..];
    let offset = arrow + 2;
    let mut children = Vec::new();
    for (start, part) in split_top_level(body) {
        let col = offset + start + 1 + (part.len() - part.trim_start().len());
        let part = part.trim();
        if part.is_empty() {
            if children.is_empty() && body.trim().is_empty() {
                break;
            }
            return Err(syntax(ln, col, "empty child"));
        }
        children.push(parse_child(ln, col, part, ids)?);
    }
    Ok(SymbolicRule {
        source,
        kind,
        symbol,
        children,
    })
}

fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_child(ln: usize, col: usize, s: &str, ids: &HashMap<String, OrbitId>) -> Result<ChildSpec, FormatError> {
    let Some(open) = s.rfind('{') else {
        return Err(syntax(ln, col, format!("expected `orbit{{..}}`, found `{s}`")));
    };
    // The `@{..}` of a dropped orbit id comes before the register map.
    let (id, map) = (&s[..open], &s[open..]);
    let Some(inner) = map.strip_prefix('{').and_then(|m| m.strip_suffix('}')) else {
        return Err(syntax(ln, col, format!("unterminated register map in `{s}`")));
    };
    let orbit = *ids.get(id.trim()).ok_or_else(|| syntax(ln, col, format!("unknown orbit `{}`", id.trim())))?;
    let mut entries = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((child, src)) = part.split_once("<-") else {
            return Err(syntax(ln, col, format!("expected `<reg><-<reg|new>`, found `{part}`")));
        };
        let child: usize = child
            .trim()
            .parse()
            .map_err(|_| syntax(ln, col, format!("invalid register `{}`", child.trim())))?;
        let src = match src.trim() {
            "new" => Source::Fresh,
            p => Source::Parent(p.parse().map_err(|_| syntax(ln, col, format!("invalid register `{p}`")))?),
        };
        entries.push((child, src));
    }
    Ok(ChildSpec {
        orbit,
        map: RegisterMap::new(entries),
    })
}

/// Parses and validates an automaton. `include` directives are resolved
/// with `resolver`.
pub fn parse_automaton_with(text: &str, resolver: Resolver) -> Result<RntaSpec, FormatError> {
    let parsed = parse_automaton_unchecked(text, resolver)?;
    let v = parsed.violations();
    if v.is_empty() {
        Ok(parsed.spec)
    } else {
        Err(FormatError::Invalid(v))
    }
}

/// Parses and validates a self-contained automaton.
pub fn parse_automaton(text: &str) -> Result<RntaSpec, FormatError> {
    parse_automaton_with(text, &no_includes)
}

pub fn print_automaton(a: &RntaSpec) -> String {
    let mut out = print_signature(a.signature());
    out.push('\n');
    if a.uses_dummy() {
        out.push_str("uses_dummy\n");
    }
    if a.is_dropped() {
        out.push_str("dropped\n");
    }
    for (i, o) in a.orbits().iter().enumerate() {
        writeln!(out, "orbit {} {}", a.orbit_label(i), o.registers).unwrap();
    }
    writeln!(out, "initial {}", a.orbit_label(a.initial())).unwrap();
    for r in a.rules() {
        write!(out, "rule {} ", a.orbit_label(r.source)).unwrap();
        match r.kind {
            RuleKind::Free { letter } => write!(out, "free {letter} {} ->", r.symbol).unwrap(),
            RuleKind::Bound => write!(out, "bound {} ->", r.symbol).unwrap(),
        }
        for (i, c) in r.children.iter().enumerate() {
            out.push_str(if i == 0 { " " } else { ", " });
            out.push_str(&a.orbit_label(c.orbit));
            out.push('{');
            for (k, &(j, s)) in c.map.entries().iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                match s {
                    Source::Parent(p) => write!(out, "{j}<-{p}").unwrap(),
                    Source::Fresh => write!(out, "{j}<-new").unwrap(),
                }
            }
            out.push('}');
        }
        out.push('\n');
    }
    out
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
    allow_binders: bool,
    sig: Option<&'a Signature>,
}

impl<'a> TermParser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(pos, |i| pos - i - 1) + 1;
        (line, column)
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> FormatError {
        let (line, column) = self.location(pos);
        syntax(line, column, message)
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            // `--` starts a comment running to the end of the line.
            if trimmed.starts_with("--") {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn token(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "(),.".contains(c))
            .unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn expect(&mut self, c: char) -> Result<(), FormatError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{c}`")))
        }
    }

    fn name(&self, pos: usize, s: &str) -> Result<Name, FormatError> {
        if is_identifier(s) {
            Ok(Name::intern(s))
        } else {
            Err(self.error(pos, format!("invalid name `{s}`")))
        }
    }

    fn term(&mut self) -> Result<Term, FormatError> {
        self.skip_ws();
        let (p0, first) = self.token();
        let label;
        let (sym_pos, sym);
        if first == "nu" && !matches!(self.peek_after_ws(), Some('(' | ',' | ')') | None) {
            if !self.allow_binders {
                return Err(self.error(p0, "binders are not allowed in a data tree"));
            }
            let (p1, a) = self.token();
            label = Label::Bound(self.name(p1, a)?);
            self.expect('.')?;
            (sym_pos, sym) = self.token();
        } else if first.is_empty() && self.peek_after_ws() == Some('.') {
            // `.f` spells out the dummy label.
            self.expect('.')?;
            label = Label::Free(Name::DUMMY);
            (sym_pos, sym) = self.token();
        } else if self.peek_after_ws() == Some('.') {
            label = Label::Free(self.name(p0, first)?);
            self.expect('.')?;
            (sym_pos, sym) = self.token();
        } else {
            label = Label::Free(Name::DUMMY);
            (sym_pos, sym) = (p0, first);
        }
        if !is_symbol_token(sym) {
            return Err(self.error(sym_pos, if sym.is_empty() { "expected a symbol".to_string() } else { format!("invalid symbol `{sym}`") }));
        }
        let symbol = Symbol::intern(sym);
        let arity = match self.sig {
            Some(sig) => Some(sig.arity(symbol).ok_or_else(|| self.error(sym_pos, ArityError::UnknownSymbol(symbol).to_string()))?),
            None => None,
        };
        let mut children = Vec::new();
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            // The arguments of a constant are only counted, so the arity
            // error is the one reported.
            let sig = self.sig;
            if arity == Some(0) {
                self.sig = None;
            }
            loop {
                let child = self.term();
                if child.is_err() {
                    self.sig = sig;
                }
                children.push(child?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        self.sig = sig;
                        return Err(self.error(self.pos, "expected `,` or `)`"));
                    }
                }
            }
            self.sig = sig;
        }
        if let Some(n) = arity.filter(|&n| n != children.len()) {
            let e = ArityError::Mismatch {
                symbol,
                expected: n,
                found: children.len(),
            };
            return Err(self.error(sym_pos, e.to_string()));
        }
        Ok(Term::new(label, symbol, children))
    }

    fn peek_after_ws(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }
}

fn parse_term_impl(text: &str, sig: Option<&Signature>, allow_binders: bool) -> Result<Term, FormatError> {
    let mut p = TermParser {
        src: text,
        pos: 0,
        allow_binders,
        sig,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(p.pos, "unexpected input after the term"));
    }
    Ok(t)
}

/// Parses a term such as `nu a. f(a.k, nu b. k)`. With a signature, arities
/// are checked. Text after `--` on a line is a comment.
pub fn parse_term(text: &str, sig: Option<&Signature>) -> Result<Term, FormatError> {
    parse_term_impl(text, sig, true)
}

/// Like [`parse_term`] but rejects binders.
pub fn parse_data_tree(text: &str, sig: Option<&Signature>) -> Result<DataTree, FormatError> {
    let t = parse_term_impl(text, sig, false)?;
    Ok(DataTree::try_from(t).expect("parser rejects binders"))
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}
