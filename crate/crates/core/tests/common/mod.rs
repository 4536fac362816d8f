#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rnta::nominal::{standard_names, Name, NameSet, Permutation};
use rnta::rnta::{ChildSpec, ConcreteState, Orbit, RegSet, RegisterMap, RntaSpec, RuleKind, Source, SymbolicRule};
use rnta::term::{free_names, Label, Signature, Symbol, Term};

pub fn fk() -> Signature {
    Signature::from_pairs(&[("f", 2), ("k", 0)]).unwrap()
}

pub fn pool(n: usize) -> NameSet {
    standard_names(n).into_iter().collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An automaton whose alphatic language is exactly the class of the closed
/// term `t`: one orbit per node, holding that node's free names.
pub fn singleton(t: &Term, sig: &Signature) -> RntaSpec {
    assert!(t.is_closed());
    let mut orbits = Vec::new();
    let mut rules = Vec::new();
    fn go(t: &Term, orbits: &mut Vec<Orbit>, rules: &mut Vec<SymbolicRule>) -> (usize, Vec<Name>) {
        let me = orbits.len();
        let regs: Vec<Name> = free_names(t).iter().collect();
        orbits.push(Orbit::new(format!("n{me}"), regs.len()));
        let pos = |a: Name| regs.iter().position(|&b| b == a).map(|i| i + 1);
        let kind = match t.label {
            Label::Free(a) => RuleKind::Free { letter: pos(a).expect("free name is a register") },
            Label::Bound(_) => RuleKind::Bound,
        };
        let rule_at = rules.len();
        rules.push(SymbolicRule {
            source: me,
            kind,
            symbol: t.symbol,
            children: Vec::new(),
        });
        let mut children = Vec::new();
        for c in &t.children {
            let (orbit, names) = go(c, orbits, rules);
            let map = names
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let src = match pos(x) {
                        Some(p) => Source::Parent(p),
                        None => Source::Fresh,
                    };
                    (j + 1, src)
                })
                .collect();
            children.push(ChildSpec {
                orbit,
                map: RegisterMap::new(map),
            });
        }
        rules[rule_at].children = children;
        (me, regs)
    }
    go(t, &mut orbits, &mut rules);
    RntaSpec::new(sig.clone(), orbits, rules, 0, false).expect("singleton fixture is valid")
}

/// A uniformly shaped random term over `f/2, k/0`-like signatures.
pub fn sample_term<R: Rng>(rng: &mut R, sig: &Signature, names: &[Name], depth: usize) -> Term {
    let symbols: Vec<(Symbol, usize)> = sig.symbols().collect();
    let choices: Vec<(Symbol, usize)> = if depth <= 1 {
        symbols.iter().copied().filter(|s| s.1 == 0).collect()
    } else {
        symbols.clone()
    };
    let (s, n) = *choices.choose(rng).unwrap();
    let a = *names.choose(rng).unwrap();
    let label = if rng.gen_bool(0.5) && !a.is_dummy() { Label::Bound(a) } else { Label::Free(a) };
    Term::new(label, s, (0..n).map(|_| sample_term(rng, sig, names, depth - 1)).collect())
}

pub fn sample_permutation<R: Rng>(rng: &mut R, names: &[Name]) -> Permutation {
    let mut image: Vec<Name> = names.to_vec();
    image.shuffle(rng);
    Permutation::from_map(names.iter().copied().zip(image).collect()).unwrap()
}

pub fn sample_state<R: Rng>(rng: &mut R, a: &RntaSpec, names: &NameSet) -> Option<ConcreteState> {
    let orbit = rng.gen_range(0..a.orbits().len());
    a.concrete_states_within(orbit, names).choose(rng).cloned()
}

/// A term accepted from `q`, built by running random rules top-down.
pub fn sample_accepted<R: Rng>(rng: &mut R, a: &RntaSpec, q: &ConcreteState, names: &[Name], depth: usize) -> Option<Term> {
    if depth == 0 {
        return None;
    }
    let mut rules: Vec<&SymbolicRule> = a.rules_of(q.orbit).collect();
    rules.shuffle(rng);
    for r in rules {
        let labels: Vec<Label> = match r.kind {
            RuleKind::Free { letter } => q.reg(letter).map(Label::Free).into_iter().collect(),
            RuleKind::Bound => {
                let mut ls: Vec<Label> = names.iter().filter(|a| !a.is_dummy()).map(|&a| Label::Bound(a)).collect();
                ls.shuffle(rng);
                ls
            }
        };
        for l in labels {
            let Some(kids) = a.instantiate(q, r, l) else { continue };
            let sub: Option<Vec<Term>> = kids.iter().map(|c| sample_accepted(rng, a, c, names, depth - 1)).collect();
            if let Some(sub) = sub {
                return Some(Term::new(l, r.symbol, sub));
            }
        }
    }
    None
}

/// The orbit of `dropped` that is orbit `i` of `a` with live registers `d`.
pub fn dropped_orbit(dropped: &RntaSpec, a: &RntaSpec, i: usize, d: RegSet) -> usize {
    let name = &a.orbit(i).name;
    (0..dropped.orbits().len())
        .find(|&j| dropped.orbit(j).name == *name && dropped.orbit(j).live == d)
        .expect("dropped orbit exists")
}

/// `q` with only the registers in `keep` filled, as a state of `dropped`.
pub fn drop_state(dropped: &RntaSpec, a: &RntaSpec, q: &ConcreteState, keep: RegSet) -> ConcreteState {
    let j = dropped_orbit(dropped, a, q.orbit, keep);
    let names: Vec<Name> = keep.iter().map(|r| q.reg(r).unwrap()).collect();
    dropped.state(j, &names)
}

/// Randomized cases for the structural properties of automata and terms. Each returns whether the case
/// was non-vacuous, or a description of the failure.
pub mod cases {
    use super::*;
    use rnta::namedrop::{check_subautomaton, name_drop};
    use rnta::oracle::{random_spec, RandomParams};
    use rnta::semantics::annotations;
    use rnta::term::{act, denu, is_non_shadowing};

    fn state_and_term<R: Rng>(rng: &mut R, a: &RntaSpec, names: &[Name]) -> Option<(ConcreteState, Term)> {
        let set: NameSet = names.iter().copied().collect();
        let q = sample_state(rng, a, &set)?;
        let depth = rng.gen_range(1..=4);
        let t = if rng.gen_bool(0.7) {
            sample_accepted(rng, a, &q, names, depth)?
        } else {
            sample_term(rng, a.signature(), names, depth)
        };
        Some((q, t))
    }

    pub fn equiv_acc<R: Rng>(rng: &mut R) -> Result<bool, String> {
        let a = random_spec(rng, &RandomParams::default());
        let names = standard_names(5);
        let Some((q, t)) = state_and_term(rng, &a, &names) else { return Ok(false) };
        let p = sample_permutation(rng, &names);
        let before = a.accepts_from(&q, &t);
        let after = a.accepts_from(&q.act(&p), &act(&p, &t));
        if before != after {
            return Err(format!("{q:?} on {t}: {before}, permuted: {after}"));
        }
        Ok(before)
    }

    pub fn supp_fn<R: Rng>(rng: &mut R) -> Result<bool, String> {
        let a = random_spec(rng, &RandomParams::default());
        let Some((q, t)) = state_and_term(rng, &a, &standard_names(4)) else { return Ok(false) };
        if !a.accepts_from(&q, &t) {
            return Ok(false);
        }
        if !free_names(&t).is_subset(&q.support()) {
            return Err(format!("{q:?} accepts {t} with free names outside its support"));
        }
        Ok(true)
    }

    /// At most one closed non-shadowing annotation per data tree.
    pub fn dnu_injective<R: Rng>(rng: &mut R) -> Result<bool, String> {
        let depth = rng.gen_range(1..=4);
        let s = denu(&sample_term(rng, &fk(), &standard_names(3), depth));
        let hits: Vec<Term> = annotations(&s).filter(|t| t.is_closed() && is_non_shadowing(t)).collect();
        if hits.len() > 1 {
            return Err(format!("{} and {} share a flattening", hits[0], hits[1]));
        }
        if let Some(t) = hits.first() {
            if denu(t) != s {
                return Err(format!("{t} does not flatten to {}", s.as_term()));
            }
        }
        Ok(hits.len() == 1)
    }

    pub fn drop_state_acc<R: Rng>(rng: &mut R) -> Result<bool, String> {
        let a = random_spec(rng, &RandomParams::default());
        let dropped = name_drop(&a).unwrap();
        let names = standard_names(4);
        let set: NameSet = names.iter().copied().collect();
        let Some(q) = sample_state(rng, &a, &set) else { return Ok(false) };
        let depth = rng.gen_range(1..=4);
        let Some(t) = sample_accepted(rng, &a, &q, &names, depth) else { return Ok(false) };
        let fnt = free_names(&t);
        let mut checked = false;
        for keep in a.orbit(q.orbit).live.subsets() {
            let kept: NameSet = keep.iter().map(|r| q.reg(r).unwrap()).collect();
            if !fnt.is_subset(&kept) {
                continue;
            }
            checked = true;
            let qd = drop_state(&dropped, &a, &q, keep);
            if !dropped.accepts_from(&qd, &t) {
                return Err(format!("{q:?} accepts {t} but its restriction {qd:?} does not"));
            }
        }
        Ok(checked)
    }

    pub fn preserve_all_rules<R: Rng>(rng: &mut R) -> Result<bool, String> {
        let a = random_spec(rng, &RandomParams::default());
        let dropped = name_drop(&a).unwrap();
        if !check_subautomaton(&a, &dropped) {
            return Err("a rule of the automaton is missing after dropping".into());
        }
        let names = standard_names(4);
        let depth = rng.gen_range(1..=4);
        let Some(t) = sample_accepted(rng, &a, &a.initial_state(), &names, depth) else { return Ok(false) };
        if !dropped.accepts(&t) {
            return Err(format!("{t} is accepted before dropping but not after"));
        }
        Ok(true)
    }
}

/// Terms over `f/2, k/0` with names from the first `names` standard names.
pub fn arb_term(names: usize, depth: u32) -> impl proptest::strategy::Strategy<Value = Term> {
    use proptest::prelude::*;
    let pool = standard_names(names);
    let p = pool.clone();
    let label = move |bound: bool, i: usize| if bound { Label::Bound(p[i]) } else { Label::Free(p[i]) };
    let l2 = label.clone();
    let leaf = (any::<bool>(), 0..names).prop_map(move |(b, i)| Term::new(label(b, i), Symbol::intern("k"), vec![]));
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        let l = l2.clone();
        (any::<bool>(), 0..names, inner.clone(), inner).prop_map(move |(b, i, x, y)| Term::new(l(b, i), Symbol::intern("f"), vec![x, y]))
    })
}
