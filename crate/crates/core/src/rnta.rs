//! Symbolic register presentation of regular nominal tree automata.
//!
//! An orbit has registers `1..=k`; a concrete state fills its live registers
//! with pairwise distinct names. When the dummy name is in use, slot 0 of
//! every state holds `_`, is passed implicitly to every child, and may serve
//! as the letter register of a free rule. It never counts towards the degree.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::nominal::{Name, NameSet, Permutation};
use crate::term::{free_names, Label, Signature, Symbol, Term};

pub type OrbitId = usize;

/// A set of register indices (bit `j` stands for register `j`, `j >= 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RegSet(u32);

pub const MAX_REGISTERS: usize = 30;

impl RegSet {
    pub fn empty() -> Self {
        RegSet(0)
    }

    /// `{1..=k}`.
    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_REGISTERS, "too many registers");
        RegSet(((1u32 << k) - 1) << 1)
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && j <= MAX_REGISTERS && self.0 & (1 << j) != 0
    }

    pub fn insert(&mut self, j: usize) {
        assert!((1..=MAX_REGISTERS).contains(&j), "register index out of range");
        self.0 |= 1 << j;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RegSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=MAX_REGISTERS).filter(move |&j| self.contains(j))
    }

    /// All subsets, starting with the empty one.
    pub fn subsets(self) -> impl Iterator<Item = RegSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(RegSet(cur))
        })
    }
}

impl FromIterator<usize> for RegSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RegSet::empty();
        for j in iter {
            s.insert(j);
        }
        s
    }
}

impl fmt::Display for RegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub name: String,
    pub registers: usize,
    /// Registers that hold a name. Always `{1..=registers}` outside dropped specs.
    pub live: RegSet,
}

impl Orbit {
    pub fn new(name: impl Into<String>, registers: usize) -> Self {
        Orbit {
            name: name.into(),
            registers,
            live: RegSet::full(registers),
        }
    }
}

/// Where a child register takes its value from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Parent(usize),
    /// The name bound at this node; only meaningful in bound rules.
    Fresh,
}

/// Child register index to source, sorted by child register.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegisterMap(Vec<(usize, Source)>);

impl RegisterMap {
    pub fn new(mut entries: Vec<(usize, Source)>) -> Self {
        entries.sort();
        RegisterMap(entries)
    }

    pub fn entries(&self) -> &[(usize, Source)] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Option<Source> {
        self.0.iter().find(|(k, _)| *k == j).map(|&(_, s)| s)
    }

    pub fn domain(&self) -> RegSet {
        self.0.iter().map(|&(j, _)| j).collect()
    }

    pub fn restrict(&self, keep: RegSet) -> RegisterMap {
        RegisterMap(self.0.iter().copied().filter(|&(j, _)| keep.contains(j)).collect())
    }

    /// Parent registers read by this map.
    pub fn parents(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|&(_, s)| match s {
            Source::Parent(p) => Some(p),
            Source::Fresh => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    /// Reads the free name held in register `letter`.
    Free { letter: usize },
    Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChildSpec {
    pub orbit: OrbitId,
    pub map: RegisterMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicRule {
    pub source: OrbitId,
    pub kind: RuleKind,
    pub symbol: Symbol,
    pub children: Vec<ChildSpec>,
}

/// A structural problem found by [`RntaSpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
    /// Index of the offending rule or orbit, if any.
    pub rule: Option<usize>,
    pub orbit: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid automaton: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidSpec(pub Vec<Violation>);

/// An element of the state space: an orbit plus a register assignment.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConcreteState {
    pub orbit: OrbitId,
    /// Slot `j` holds register `j`; slot 0 is the dummy slot.
    regs: SmallVec<[Option<Name>; 4]>,
}

impl ConcreteState {
    pub fn new(orbit: OrbitId, regs: impl IntoIterator<Item = Option<Name>>) -> Self {
        ConcreteState {
            orbit,
            regs: regs.into_iter().collect(),
        }
    }

    pub fn reg(&self, j: usize) -> Option<Name> {
        self.regs.get(j).copied().flatten()
    }

    pub fn regs(&self) -> &[Option<Name>] {
        &self.regs
    }

    /// supp(q): every assigned name, the dummy included.
    pub fn support(&self) -> NameSet {
        self.regs.iter().flatten().copied().collect()
    }

    pub fn act(&self, p: &Permutation) -> ConcreteState {
        ConcreteState {
            orbit: self.orbit,
            regs: self.regs.iter().map(|r| r.map(|a| p.apply(a))).collect(),
        }
    }
}

impl fmt::Debug for ConcreteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}[", self.orbit)?;
        for (i, r) in self.regs.iter().enumerate().skip(1) {
            if i > 1 {
                f.write_str(",")?;
            }
            match r {
                Some(a) => write!(f, "{a}")?,
                None => f.write_str("-")?,
            }
        }
        f.write_str("]")
    }
}

/// How free-labelled nodes may be consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchMode {
    /// Labels are read as written.
    Literal,
    /// A node `a.f(..)` may also be consumed by a bound rule instantiated at
    /// `a`, as if it were `nu a. f(..)`.
    Flattened,
}

/// A finite symbolic RNTA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RntaSpec {
    signature: Signature,
    orbits: Vec<Orbit>,
    rules: Vec<SymbolicRule>,
    initial: OrbitId,
    uses_dummy: bool,
    dropped: bool,
    by_orbit: Vec<Vec<usize>>,
}

impl RntaSpec {
    /// Builds and validates a plain (not name-dropped) automaton.
    pub fn new(
        signature: Signature,
        orbits: Vec<Orbit>,
        rules: Vec<SymbolicRule>,
        initial: OrbitId,
        uses_dummy: bool,
    ) -> Result<Self, InvalidSpec> {
        let spec = Self::unchecked(signature, orbits, rules, initial, uses_dummy, false);
        spec.validate().map(|()| spec)
    }

    /// Builds without validation; call [`RntaSpec::validate`] before use.
    pub fn unchecked(
        signature: Signature,
        orbits: Vec<Orbit>,
        rules: Vec<SymbolicRule>,
        initial: OrbitId,
        uses_dummy: bool,
        dropped: bool,
    ) -> Self {
        let mut by_orbit = vec![Vec::new(); orbits.len()];
        for (i, r) in rules.iter().enumerate() {
            if let Some(v) = by_orbit.get_mut(r.source) {
                v.push(i);
            }
        }
        RntaSpec {
            signature,
            orbits,
            rules,
            initial,
            uses_dummy,
            dropped,
            by_orbit,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, id: OrbitId) -> &Orbit {
        &self.orbits[id]
    }

    pub fn orbit_by_name(&self, name: &str) -> Option<OrbitId> {
        self.orbits.iter().position(|o| o.name == name)
    }

    pub fn rules(&self) -> &[SymbolicRule] {
        &self.rules
    }

    pub fn rules_of(&self, orbit: OrbitId) -> impl Iterator<Item = &SymbolicRule> + '_ {
        self.by_orbit[orbit].iter().map(move |&i| &self.rules[i])
    }

    pub fn initial(&self) -> OrbitId {
        self.initial
    }

    pub fn uses_dummy(&self) -> bool {
        self.uses_dummy
    }

    /// True for the output of name dropping.
    pub fn is_dropped(&self) -> bool {
        self.dropped
    }

    /// Orbit name as printed: dropped orbits carry their live set, `q@{1}`.
    pub fn orbit_label(&self, id: OrbitId) -> String {
        let o = &self.orbits[id];
        if self.dropped {
            format!("{}@{}", o.name, o.live)
        } else {
            o.name.clone()
        }
    }

    /// Maximal number of live registers; the dummy slot is not counted.
    pub fn degree(&self) -> usize {
        self.orbits.iter().map(|o| o.live.len()).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), InvalidSpec> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(InvalidSpec(v))
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = Vec::new();
        let (mut cur_rule, mut cur_orbit) = (None, None);
        macro_rules! bad {
            ($loc:expr, $msg:expr $(,)?) => {
                out.push(Violation { location: $loc, message: $msg, rule: cur_rule, orbit: cur_orbit })
            };
        }
        if self.orbits.is_empty() {
            bad!("automaton".into(), "no orbits declared".into());
        }
        if !self.signature.has_constant() {
            bad!("signature".into(), "no constant symbol".into());
        }
        for (oi, o) in self.orbits.iter().enumerate() {
            cur_orbit = Some(oi);
            if o.registers > MAX_REGISTERS {
                bad!(format!("orbit {}", o.name), format!("more than {MAX_REGISTERS} registers"));
            } else if !o.live.is_subset(RegSet::full(o.registers)) {
                bad!(format!("orbit {}", o.name), "live register out of range".into());
            } else if !self.dropped && o.live != RegSet::full(o.registers) {
                bad!(format!("orbit {}", o.name), "partial orbit in a plain automaton".into());
            }
        }
        cur_orbit = None;
        match self.orbits.get(self.initial) {
            None => bad!("initial".into(), "initial orbit does not exist".into()),
            Some(o) if !o.live.is_empty() => bad!(
                format!("initial {}", o.name),
                format!("initial orbit must have empty support, has {} register(s)", o.live.len()),
            ),
            Some(_) => {}
        }
        let n = self.orbits.len();
        for (idx, r) in self.rules.iter().enumerate() {
            cur_rule = Some(idx);
            let loc = |extra: &str| {
                let src = self.orbits.get(r.source).map(|o| o.name.as_str()).unwrap_or("?");
                format!("rule {} ({src} {})", idx + 1, r.symbol) + extra
            };
            let Some(src) = self.orbits.get(r.source) else {
                bad!(loc(""), format!("unknown source orbit #{}", r.source));
                continue;
            };
            match self.signature.arity(r.symbol) {
                None => bad!(loc(""), format!("unknown symbol `{}`", r.symbol)),
                Some(a) if a != r.children.len() => bad!(
                    loc(""),
                    format!("symbol `{}` has arity {a} but the rule has {} children", r.symbol, r.children.len()),
                ),
                Some(_) => {}
            }
            let parent_ok = |p: usize| src.live.contains(p);
            if let RuleKind::Free { letter } = r.kind {
                let ok = if letter == 0 { self.uses_dummy } else { parent_ok(letter) };
                if !ok {
                    bad!(loc(""), format!("letter register {letter} is not a register of {}", src.name));
                }
            }
            for (c, child) in r.children.iter().enumerate() {
                let cloc = loc(&format!(", child {}", c + 1));
                let Some(target) = (child.orbit < n).then(|| &self.orbits[child.orbit]) else {
                    bad!(cloc, format!("unknown child orbit #{}", child.orbit));
                    continue;
                };
                let mut seen_child = RegSet::empty();
                let mut seen_src: Vec<Source> = Vec::new();
                for &(j, s) in child.map.entries() {
                    if !target.live.contains(j) {
                        bad!(cloc.clone(), format!("child register {j} is not a register of {}", target.name));
                        continue;
                    }
                    if seen_child.contains(j) {
                        bad!(cloc.clone(), format!("child register {j} assigned twice"));
                    }
                    seen_child.insert(j);
                    match s {
                        Source::Parent(p) if !parent_ok(p) => {
                            bad!(cloc.clone(), format!("parent register {p} is not a register of {}", src.name))
                        }
                        Source::Fresh if !matches!(r.kind, RuleKind::Bound) => {
                            bad!(cloc.clone(), "`new` is only allowed in bound rules".into())
                        }
                        _ => {}
                    }
                    if seen_src.contains(&s) {
                        bad!(cloc.clone(), "register map is not injective".into());
                    }
                    seen_src.push(s);
                }
                if seen_child != target.live {
                    bad!(cloc, format!("register map does not define every register of {}", target.name));
                }
            }
        }
        out
    }

    /// The state of `orbit` whose live registers hold `names` in order.
    pub fn state(&self, orbit: OrbitId, names: &[Name]) -> ConcreteState {
        let o = &self.orbits[orbit];
        assert_eq!(names.len(), o.live.len(), "wrong number of register values");
        let mut regs: SmallVec<[Option<Name>; 4]> = SmallVec::from_elem(None, o.registers + 1);
        if self.uses_dummy {
            regs[0] = Some(Name::DUMMY);
        }
        for (j, &a) in o.live.iter().zip(names) {
            regs[j] = Some(a);
        }
        ConcreteState { orbit, regs }
    }

    pub fn initial_state(&self) -> ConcreteState {
        self.state(self.initial, &[])
    }

    /// Every state of `orbit` whose support lies within `names`.
    pub fn concrete_states_within(&self, orbit: OrbitId, names: &NameSet) -> Vec<ConcreteState> {
        let pool: Vec<Name> = names.iter().filter(|a| !a.is_dummy()).collect();
        let k = self.orbits[orbit].live.len();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k);
        fn go(
            spec: &RntaSpec,
            orbit: OrbitId,
            pool: &[Name],
            k: usize,
            chosen: &mut Vec<Name>,
            out: &mut Vec<ConcreteState>,
        ) {
            if chosen.len() == k {
                out.push(spec.state(orbit, chosen));
                return;
            }
            for &a in pool {
                if !chosen.contains(&a) {
                    chosen.push(a);
                    go(spec, orbit, pool, k, chosen, out);
                    chosen.pop();
                }
            }
        }
        go(self, orbit, &pool, k, &mut chosen, &mut out);
        out
    }

    fn child_state(&self, q: &ConcreteState, child: &ChildSpec, fresh: Option<Name>) -> Option<ConcreteState> {
        let o = &self.orbits[child.orbit];
        let mut regs: SmallVec<[Option<Name>; 4]> = SmallVec::from_elem(None, o.registers + 1);
        if self.uses_dummy {
            regs[0] = Some(Name::DUMMY);
        }
        for &(j, s) in child.map.entries() {
            regs[j] = Some(match s {
                Source::Parent(p) => q.reg(p)?,
                Source::Fresh => fresh?,
            });
        }
        Some(ConcreteState {
            orbit: child.orbit,
            regs,
        })
    }

    /// Instantiates `rule` at state `q` for a node labelled `label`, giving
    /// the child states, or `None` if the rule does not apply.
    pub fn instantiate(&self, q: &ConcreteState, rule: &SymbolicRule, label: Label) -> Option<Vec<ConcreteState>> {
        match (rule.kind, label) {
            (RuleKind::Free { letter }, Label::Free(a)) => {
                if q.reg(letter) != Some(a) {
                    return None;
                }
                rule.children.iter().map(|c| self.child_state(q, c, None)).collect()
            }
            (RuleKind::Bound, Label::Bound(a)) => {
                if self.uses_dummy && a.is_dummy() {
                    return None;
                }
                for c in &rule.children {
                    for p in c.map.parents() {
                        if q.reg(p)? == a {
                            return None;
                        }
                    }
                }
                rule.children.iter().map(|c| self.child_state(q, c, Some(a))).collect()
            }
            _ => None,
        }
    }

    /// All child-state tuples reachable from `q` on a node `label.symbol(..)`.
    pub fn steps(&self, q: &ConcreteState, label: Label, symbol: Symbol, mode: MatchMode) -> Vec<Vec<ConcreteState>> {
        let mut out = Vec::new();
        for r in self.rules_of(q.orbit).filter(|r| r.symbol == symbol) {
            if let Some(cs) = self.instantiate(q, r, label) {
                out.push(cs);
            }
            if let (MatchMode::Flattened, Label::Free(a), RuleKind::Bound) = (mode, label, r.kind) {
                if let Some(cs) = self.instantiate(q, r, Label::Bound(a)) {
                    out.push(cs);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn run(
        &self,
        q: &ConcreteState,
        t: &Term,
        mode: MatchMode,
        memo: &mut HashMap<(ConcreteState, *const Term), bool>,
    ) -> bool {
        let key = (q.clone(), t as *const Term);
        if let Some(&b) = memo.get(&key) {
            return b;
        }
        let ok = self
            .steps(q, t.label, t.symbol, mode)
            .iter()
            .any(|cs| cs.len() == t.children.len() && cs.iter().zip(&t.children).all(|(c, s)| self.run(c, s, mode, memo)));
        memo.insert(key, ok);
        ok
    }

    /// Does some run rewrite `q(t)` to `t`?
    pub fn accepts_from(&self, q: &ConcreteState, t: &Term) -> bool {
        let ok = self.run(q, t, MatchMode::Literal, &mut HashMap::new());
        debug_assert!(!ok || free_names(t).is_subset(&q.support()), "accepted term with names outside the support");
        ok
    }

    pub fn accepts(&self, t: &Term) -> bool {
        self.accepts_from(&self.initial_state(), t)
    }

    /// Acceptance in [`MatchMode::Flattened`] from the initial state.
    pub fn accepts_flattened(&self, t: &Term) -> bool {
        self.run(&self.initial_state(), t, MatchMode::Flattened, &mut HashMap::new())
    }
}
