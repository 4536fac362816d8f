//! Classical top-down tree automata over the finite alphabet S̄ × Σ.

use std::collections::HashMap;
use std::fmt;

use crate::nominal::{Name, NameSet};
use crate::rnta::{ConcreteState, RntaSpec, RuleKind};
use crate::term::{Label, Signature, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NftaRule {
    pub state: usize,
    pub label: Label,
    pub symbol: Symbol,
    pub children: Vec<usize>,
}

/// A top-down NFTA whose states are numbered `0..states.len()`.
#[derive(Clone, Debug)]
pub struct Nfta {
    /// Printable state names.
    pub states: Vec<String>,
    pub rules: Vec<NftaRule>,
    pub initial: usize,
    by_state: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RestrictError {
    #[error("the automaton uses the dummy name, so the name set must contain `_`")]
    MissingDummy,
}

impl Nfta {
    /// Panics if a rule mentions an undeclared state.
    pub fn new(states: Vec<String>, mut rules: Vec<NftaRule>, initial: usize) -> Self {
        let n = states.len();
        assert!(initial < n, "initial state out of range");
        rules.sort();
        rules.dedup();
        let mut by_state = vec![Vec::new(); n];
        for (i, r) in rules.iter().enumerate() {
            assert!(r.state < n && r.children.iter().all(|&c| c < n), "rule mentions an unknown state");
            by_state[r.state].push(i);
        }
        Nfta {
            states,
            rules,
            initial,
            by_state,
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn rules_of(&self, q: usize) -> impl Iterator<Item = &NftaRule> + '_ {
        self.by_state[q].iter().map(move |&i| &self.rules[i])
    }

    /// States reachable top-down from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for r in self.rules_of(q) {
                for &c in &r.children {
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        seen
    }
}

impl fmt::Display for Nfta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial {}", self.states[self.initial])?;
        for r in &self.rules {
            let label = match r.label {
                Label::Free(a) => format!("{a}."),
                Label::Bound(a) => format!("nu {a}. "),
            };
            write!(f, "rule {} {label}{} ->", self.states[r.state], r.symbol)?;
            for (i, &c) in r.children.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{}", self.states[c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn state_name(a: &RntaSpec, q: &ConcreteState) -> String {
    let regs: Vec<String> = a
        .orbit(q.orbit)
        .live
        .iter()
        .map(|j| q.reg(j).map_or("-".to_string(), |n| n.to_string()))
        .collect();
    format!("{}[{}]", a.orbit_label(q.orbit), regs.join(","))
}

/// A_S: the states of `a` supported within `names` and every rule instance
/// over them.
pub fn restrict(a: &RntaSpec, names: &NameSet) -> Result<Nfta, RestrictError> {
    if a.uses_dummy() && !names.contains(Name::DUMMY) {
        return Err(RestrictError::MissingDummy);
    }
    let mut states = Vec::new();
    let mut index: HashMap<ConcreteState, usize> = HashMap::new();
    for o in 0..a.orbits().len() {
        for q in a.concrete_states_within(o, names) {
            index.insert(q.clone(), states.len());
            states.push(q);
        }
    }
    let binders: Vec<Name> = names.iter().filter(|n| !n.is_dummy()).collect();
    let mut rules = Vec::new();
    for (qi, q) in states.iter().enumerate() {
        for r in a.rules_of(q.orbit) {
            let labels: Vec<Label> = match r.kind {
                RuleKind::Free { letter } => q.reg(letter).map(Label::Free).into_iter().collect(),
                RuleKind::Bound => binders.iter().map(|&b| Label::Bound(b)).collect(),
            };
            for label in labels {
                if let Some(children) = a.instantiate(q, r, label) {
                    let children = children.iter().map(|c| index[c]).collect();
                    rules.push(NftaRule {
                        state: qi,
                        label,
                        symbol: r.symbol,
                        children,
                    });
                }
            }
        }
    }
    let names = states.iter().map(|q| state_name(a, q)).collect();
    Ok(Nfta::new(names, rules, index[&a.initial_state()]))
}

/// Adds `a.f(..)` next to every `nu a. f(..)` rule, closing the language
/// downwards under ⊑.
pub fn down_close(n: &Nfta) -> Nfta {
    let mut rules = n.rules.clone();
    for r in &n.rules {
        if let Label::Bound(a) = r.label {
            rules.push(NftaRule {
                label: Label::Free(a),
                ..r.clone()
            });
        }
    }
    Nfta::new(n.states.clone(), rules, n.initial)
}

pub fn nfta_member(n: &Nfta, t: &Term) -> bool {
    fn go(n: &Nfta, q: usize, t: &Term, memo: &mut HashMap<(usize, *const Term), bool>) -> bool {
        if let Some(&b) = memo.get(&(q, t as *const Term)) {
            return b;
        }
        let ok = n.rules_of(q).any(|r| {
            r.label == t.label
                && r.symbol == t.symbol
                && r.children.len() == t.children.len()
                && r.children.iter().zip(&t.children).all(|(&c, s)| go(n, c, s, memo))
        });
        memo.insert((q, t as *const Term), ok);
        ok
    }
    go(n, n.initial, t, &mut HashMap::new())
}

/// Outcome of an inclusion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NftaInclusion {
    Holds,
    /// A term accepted by the left automaton but not the right one.
    Counterexample(Term),
}

/// Fixed-size bit set over states.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct StateSet(Vec<u64>);

impl StateSet {
    fn new(n: usize) -> Self {
        StateSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Pair {
    set: StateSet,
    round: usize,
    rule: usize,
    children: Vec<usize>,
    alive: bool,
}

/// Decides `L(n1) ⊆ L(n2)`.
///
/// Saturates bottom-up pairs `(s, T)`: some tree is accepted from `s` in
/// `n1` and from exactly the states `T` in `n2`. Round `r` only builds trees
/// of height `r`, and a pair is dropped when a pair `(s, T')` with `T' ⊆ T`
/// is already known, so the first failing pair yields a counterexample of
/// minimal height.
pub fn nfta_inclusion(n1: &Nfta, n2: &Nfta) -> NftaInclusion {
    let live1 = n1.reachable();
    let live2 = n2.reachable();
    let mut by_letter2: HashMap<(Label, Symbol), Vec<usize>> = HashMap::new();
    for (i, r) in n2.rules.iter().enumerate() {
        if live2[r.state] {
            by_letter2.entry((r.label, r.symbol)).or_default().push(i);
        }
    }
    let rules1: Vec<usize> = (0..n1.rules.len()).filter(|&i| live1[n1.rules[i].state]).collect();

    let mut pairs: Vec<Pair> = Vec::new();
    let mut by_state: Vec<Vec<usize>> = vec![Vec::new(); n1.num_states()];
    let no_rules = Vec::new();

    for round in 1.. {
        let mut added_any = false;
        for &ri in &rules1 {
            let r = &n1.rules[ri];
            if round == 1 && !r.children.is_empty() || round > 1 && r.children.is_empty() {
                continue;
            }
            // Each tuple uses pairs from earlier rounds, at least one from the last.
            let cands: Vec<(Vec<usize>, Vec<usize>)> = r
                .children
                .iter()
                .map(|&c| {
                    let all: Vec<usize> = by_state[c].iter().copied().filter(|&p| pairs[p].alive && pairs[p].round < round).collect();
                    let newest = all.iter().copied().filter(|&p| pairs[p].round == round - 1).collect();
                    (all, newest)
                })
                .collect();
            let rules2 = by_letter2.get(&(r.label, r.symbol)).unwrap_or(&no_rules);
            let mut tuples = Vec::new();
            if r.children.is_empty() {
                tuples.push(Vec::new());
            } else {
                semi_naive_tuples(&cands, &pairs, round, &mut tuples);
            }
            for tuple in tuples {
                let mut set = StateSet::new(n2.num_states());
                for &r2 in rules2 {
                    let r2 = &n2.rules[r2];
                    if r2.children.len() == tuple.len() && r2.children.iter().zip(&tuple).all(|(&q, &p)| pairs[p].set.contains(q)) {
                        set.insert(r2.state);
                    }
                }
                if r.state == n1.initial && !set.contains(n2.initial) {
                    pairs.push(Pair { set, round, rule: ri, children: tuple, alive: true });
                    return NftaInclusion::Counterexample(rebuild(n1, &pairs, pairs.len() - 1));
                }
                if by_state[r.state].iter().any(|&p| pairs[p].alive && pairs[p].set.is_subset(&set)) {
                    continue;
                }
                // Supersets from this round have not been used yet.
                for &p in &by_state[r.state] {
                    if pairs[p].round == round && set.is_subset(&pairs[p].set) {
                        pairs[p].alive = false;
                    }
                }
                by_state[r.state].push(pairs.len());
                pairs.push(Pair { set, round, rule: ri, children: tuple, alive: true });
                added_any = true;
            }
        }
        if !added_any {
            break;
        }
    }
    NftaInclusion::Holds
}

fn semi_naive_tuples(cands: &[(Vec<usize>, Vec<usize>)], pairs: &[Pair], round: usize, out: &mut Vec<Vec<usize>>) {
    // Position `first` is the leftmost component drawn from the last round.
    for first in 0..cands.len() {
        let lists: Vec<Vec<usize>> = cands
            .iter()
            .enumerate()
            .map(|(i, (all, newest))| match i.cmp(&first) {
                std::cmp::Ordering::Less => all.iter().copied().filter(|&p| pairs[p].round < round - 1).collect(),
                std::cmp::Ordering::Equal => newest.clone(),
                std::cmp::Ordering::Greater => all.clone(),
            })
            .collect();
        if lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut idx = vec![0; lists.len()];
        'next: loop {
            out.push(idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect());
            for k in (0..lists.len()).rev() {
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    continue 'next;
                }
                idx[k] = 0;
            }
            break;
        }
    }
}

fn rebuild(n1: &Nfta, pairs: &[Pair], p: usize) -> Term {
    let r = &n1.rules[pairs[p].rule];
    Term::new(r.label, r.symbol, pairs[p].children.iter().map(|&c| rebuild(n1, pairs, c)).collect())
}

/// Every term over `signature` with labels from `labels` of height at most `depth`.
pub fn all_terms(signature: &Signature, labels: &[Label], depth: usize) -> Vec<Term> {
    let mut levels: Vec<Term> = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (s, n) in signature.symbols() {
            let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
            for _ in 0..n {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        levels.iter().map(move |c| {
                            let mut t = t.clone();
                            t.push(c.clone());
                            t
                        })
                    })
                    .collect();
            }
            for l in labels {
                for t in &tuples {
                    next.push(Term::new(*l, s, t.clone()));
                }
            }
        }
        levels = next;
    }
    levels
}
