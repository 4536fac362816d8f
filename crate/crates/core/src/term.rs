//! Nominal Σ-terms: trees whose nodes carry either a free name or a binder.
//!
//! Term equality (`==`) is always literal. Alpha-equivalence is a separate,
//! explicit relation, see [`alpha_eq`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::nominal::{fresh_for, swap, Name, NameSet, Permutation};

/// An interned function symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

struct SymbolTable {
    strings: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
}

static SYMBOLS: LazyLock<RwLock<SymbolTable>> = LazyLock::new(|| {
    RwLock::new(SymbolTable {
        strings: Vec::new(),
        index: HashMap::new(),
    })
});

impl Symbol {
    pub fn intern(s: &str) -> Symbol {
        if let Some(&i) = SYMBOLS.read().unwrap().index.get(s) {
            return Symbol(i);
        }
        let mut table = SYMBOLS.write().unwrap();
        if let Some(&i) = table.index.get(s) {
            return Symbol(i);
        }
        let leaked: &'static str = Box::leak(s.to_owned().into_boxed_str());
        let i = table.strings.len() as u32;
        table.strings.push(leaked);
        table.index.insert(leaked, i);
        Symbol(i)
    }

    pub fn as_str(self) -> &'static str {
        SYMBOLS.read().unwrap().strings[self.0 as usize]
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite ranked alphabet, kept in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(Symbol, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice with different arities")]
    ConflictingArity(Symbol),
    #[error("signature has no constant symbol")]
    NoConstant,
}

impl Signature {
    /// Builds a signature; duplicate declarations with equal arity are merged.
    pub fn new<I>(symbols: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = (Symbol, usize)>,
    {
        let mut sig = Signature::default();
        for (s, n) in symbols {
            sig.add(s, n)?;
        }
        if !sig.has_constant() {
            return Err(SignatureError::NoConstant);
        }
        Ok(sig)
    }

    /// Convenience constructor from `("f", 2)` pairs.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Self, SignatureError> {
        Self::new(pairs.iter().map(|&(s, n)| (Symbol::intern(s), n)))
    }

    pub(crate) fn add(&mut self, s: Symbol, n: usize) -> Result<(), SignatureError> {
        match self.arity(s) {
            Some(m) if m == n => Ok(()),
            Some(_) => Err(SignatureError::ConflictingArity(s)),
            None => {
                self.symbols.push((s, n));
                Ok(())
            }
        }
    }

    pub fn arity(&self, s: Symbol) -> Option<usize> {
        self.symbols.iter().find(|(t, _)| *t == s).map(|&(_, n)| n)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, usize)> + '_ {
        self.symbols.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn has_constant(&self) -> bool {
        self.symbols.iter().any(|&(_, n)| n == 0)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|&(_, n)| n).max().unwrap_or(0)
    }

    /// Same symbols with the same arities, ignoring declaration order.
    pub fn same_symbols(&self, other: &Signature) -> bool {
        self.len() == other.len() && self.symbols().all(|(s, n)| other.arity(s) == Some(n))
    }

    /// Checks every node of `t` against the declared arities.
    pub fn check(&self, t: &Term) -> Result<(), ArityError> {
        match self.arity(t.symbol) {
            None => Err(ArityError::UnknownSymbol(t.symbol)),
            Some(n) if n != t.children.len() => Err(ArityError::Mismatch {
                symbol: t.symbol,
                expected: n,
                found: t.children.len(),
            }),
            Some(_) => t.children.iter().try_for_each(|c| self.check(c)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArityError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(Symbol),
    #[error("symbol `{symbol}` expects {expected} argument(s), found {found}")]
    Mismatch {
        symbol: Symbol,
        expected: usize,
        found: usize,
    },
}

/// The name annotation of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Free(Name),
    Bound(Name),
}

impl Label {
    pub fn name(self) -> Name {
        match self {
            Label::Free(a) | Label::Bound(a) => a,
        }
    }

    pub fn is_bound(self) -> bool {
        matches!(self, Label::Bound(_))
    }

    pub fn act(self, p: &Permutation) -> Label {
        match self {
            Label::Free(a) => Label::Free(p.apply(a)),
            Label::Bound(a) => Label::Bound(p.apply(a)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Free(a) if a.is_dummy() => Ok(()),
            Label::Free(a) => write!(f, "{a}."),
            Label::Bound(a) => write!(f, "nu {a}. "),
        }
    }
}

/// A nominal term `γ.f(t1, ..., tn)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub label: Label,
    pub symbol: Symbol,
    pub children: Vec<Term>,
}

impl Term {
    pub fn new(label: Label, symbol: Symbol, children: Vec<Term>) -> Self {
        Term {
            label,
            symbol,
            children,
        }
    }

    /// `a.f(children)`.
    pub fn free(a: &str, f: &str, children: Vec<Term>) -> Self {
        Term::new(Label::Free(Name::intern(a)), Symbol::intern(f), children)
    }

    /// `nu a. f(children)`.
    pub fn bound(a: &str, f: &str, children: Vec<Term>) -> Self {
        Term::new(Label::Bound(Name::intern(a)), Symbol::intern(f), children)
    }

    /// Number of nodes on the longest root-to-leaf path; a constant has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Term::size).sum::<usize>()
    }

    /// Every name occurring in the term, free or bound.
    pub fn names(&self) -> NameSet {
        let mut out = NameSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut NameSet) {
        out.insert(self.label.name());
        for c in &self.children {
            c.collect_names(out);
        }
    }

    /// Pre-order traversal of all nodes.
    pub fn nodes(&self) -> Vec<&Term> {
        let mut out = Vec::with_capacity(self.size());
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.children.iter().rev());
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        free_names(self).is_empty()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.symbol)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A term without binders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DataTree(Term);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("a data tree may not contain binders (found `nu {0}`)")]
pub struct BinderInDataTree(pub Name);

impl DataTree {
    pub fn as_term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}

impl TryFrom<Term> for DataTree {
    type Error = BinderInDataTree;

    fn try_from(t: Term) -> Result<Self, Self::Error> {
        match t.nodes().into_iter().find(|n| n.label.is_bound()) {
            Some(n) => Err(BinderInDataTree(n.label.name())),
            None => Ok(DataTree(t)),
        }
    }
}

impl fmt::Display for DataTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// FN(t).
pub fn free_names(t: &Term) -> NameSet {
    let mut out = NameSet::new();
    for c in &t.children {
        out.extend_from(&free_names(c));
    }
    match t.label {
        Label::Free(a) => {
            out.insert(a);
        }
        Label::Bound(a) => {
            out.remove(a);
        }
    }
    out
}

/// Applies a permutation to every label, binders included.
pub fn act(p: &Permutation, t: &Term) -> Term {
    Term {
        label: t.label.act(p),
        symbol: t.symbol,
        children: t.children.iter().map(|c| act(p, c)).collect(),
    }
}

/// Alpha-equivalence via the abstraction characterisation: `nu a.f(ts)` and
/// `nu b.f(ss)` are equivalent iff `(c a)·ts` and `(c b)·ss` are, for `c`
/// fresh for everything in sight.
pub fn alpha_eq(t: &Term, s: &Term) -> bool {
    if t.symbol != s.symbol || t.children.len() != s.children.len() {
        return false;
    }
    match (t.label, s.label) {
        (Label::Free(a), Label::Free(b)) => {
            a == b && t.children.iter().zip(&s.children).all(|(x, y)| alpha_eq(x, y))
        }
        (Label::Bound(a), Label::Bound(b)) if a == b => {
            t.children.iter().zip(&s.children).all(|(x, y)| alpha_eq(x, y))
        }
        (Label::Bound(a), Label::Bound(b)) => {
            let mut avoid = NameSet::new();
            avoid.insert(a);
            avoid.insert(b);
            for c in t.children.iter().chain(&s.children) {
                c.collect_names(&mut avoid);
            }
            let c = fresh_for(&avoid);
            let (pa, pb) = (swap(c, a), swap(c, b));
            t.children
                .iter()
                .zip(&s.children)
                .all(|(x, y)| alpha_eq(&act(&pa, x), &act(&pb, y)))
        }
        _ => false,
    }
}

fn bound_names_preorder(t: &Term, out: &mut Vec<Name>) {
    if let Label::Bound(a) = t.label {
        out.push(a);
    }
    for c in &t.children {
        bound_names_preorder(c, out);
    }
}

/// All bound names pairwise distinct and none of them free in `t`.
pub fn is_clean(t: &Term) -> bool {
    let mut bound = Vec::new();
    bound_names_preorder(t, &mut bound);
    let fv = free_names(t);
    let mut seen = NameSet::new();
    bound.into_iter().all(|a| !fv.contains(a) && seen.insert(a))
}

/// Like [`is_clean`], but only along each root-to-leaf branch.
pub fn is_non_shadowing(t: &Term) -> bool {
    fn go(t: &Term, fv: &NameSet, path: &mut Vec<Name>) -> bool {
        let pushed = if let Label::Bound(a) = t.label {
            if fv.contains(a) || path.contains(&a) {
                return false;
            }
            path.push(a);
            true
        } else {
            false
        };
        let ok = t.children.iter().all(|c| go(c, fv, path));
        if pushed {
            path.pop();
        }
        ok
    }
    go(t, &free_names(t), &mut Vec::new())
}

/// dν: forgets every binder, keeping its name as a free label.
pub fn denu(t: &Term) -> DataTree {
    fn go(t: &Term) -> Term {
        Term {
            label: Label::Free(t.label.name()),
            symbol: t.symbol,
            children: t.children.iter().map(go).collect(),
        }
    }
    DataTree(go(t))
}

/// `t ⊑ s`: `t` arises from `s` by turning zero or more binders `nu a` into
/// free labels `a`.
pub fn flat_leq(t: &Term, s: &Term) -> bool {
    let label_ok = match (t.label, s.label) {
        (Label::Free(a), Label::Free(b)) | (Label::Bound(a), Label::Bound(b)) => a == b,
        (Label::Free(a), Label::Bound(b)) => a == b,
        (Label::Bound(_), Label::Free(_)) => false,
    };
    label_ok
        && t.symbol == s.symbol
        && t.children.len() == s.children.len()
        && t.children.iter().zip(&s.children).all(|(x, y)| flat_leq(x, y))
}

/// An alpha-equivalent clean variant: every binder gets its own fresh name,
/// avoiding the free names of `t`.
pub fn clean_variant(t: &Term) -> Term {
    fn go(t: &Term, env: &mut Vec<(Name, Name)>, avoid: &mut NameSet) -> Term {
        let lookup = |a: Name, env: &[(Name, Name)]| {
            env.iter().rev().find(|(old, _)| *old == a).map(|&(_, new)| new).unwrap_or(a)
        };
        match t.label {
            Label::Free(a) => Term {
                label: Label::Free(lookup(a, env)),
                symbol: t.symbol,
                children: t.children.iter().map(|c| go(c, env, avoid)).collect(),
            },
            Label::Bound(a) => {
                let b = fresh_for(avoid);
                avoid.insert(b);
                env.push((a, b));
                let children = t.children.iter().map(|c| go(c, env, avoid)).collect();
                env.pop();
                Term {
                    label: Label::Bound(b),
                    symbol: t.symbol,
                    children,
                }
            }
        }
    }
    let mut avoid = free_names(t);
    go(t, &mut Vec::new(), &mut avoid)
}

/// Marks as binders the nodes of `s` at the positions where `t_prime` binds
/// and `t` does not. Given `t ≡α s` and `t ⊑ t_prime`, the result `s'`
/// satisfies `s ⊑ s'` and `t_prime ≡α s'`.
pub fn lift_binders(t: &Term, s: &Term, t_prime: &Term) -> Option<Term> {
    if t.symbol != s.symbol
        || t.symbol != t_prime.symbol
        || t.children.len() != s.children.len()
        || t.children.len() != t_prime.children.len()
    {
        return None;
    }
    let label = match (t.label, t_prime.label) {
        (Label::Free(_), Label::Bound(_)) => Label::Bound(s.label.name()),
        _ => s.label,
    };
    let children = t
        .children
        .iter()
        .zip(&s.children)
        .zip(&t_prime.children)
        .map(|((x, y), z)| lift_binders(x, y, z))
        .collect::<Option<Vec<_>>>()?;
    Some(Term {
        label,
        symbol: s.symbol,
        children,
    })
}
