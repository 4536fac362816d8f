mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use rnta::nfta::{down_close, nfta_inclusion, nfta_member, Nfta, NftaInclusion, NftaRule};
use rnta::nominal::Name;
use rnta::term::{Label, Signature, Symbol, Term};

struct Alphabet {
    labels: Vec<Label>,
    symbols: Vec<(Symbol, usize)>,
}

impl Alphabet {
    fn small() -> Self {
        let a = Name::intern("a");
        Alphabet {
            labels: vec![Label::Free(a), Label::Bound(a)],
            symbols: fk().symbols().collect(),
        }
    }

    /// Four labels times three symbols.
    fn twelve() -> Self {
        let (a, b) = (Name::intern("a"), Name::intern("b"));
        let sig = Signature::from_pairs(&[("f", 2), ("g", 1), ("k", 0)]).unwrap();
        Alphabet {
            labels: vec![Label::Free(a), Label::Free(b), Label::Bound(a), Label::Bound(b)],
            symbols: sig.symbols().collect(),
        }
    }
}

/// Mostly layered: children usually sit one state deeper and leaves mostly
/// at the last state, so languages differ only on tall trees.
fn random_nfta<R: Rng>(rng: &mut R, alpha: &Alphabet) -> Nfta {
    let n = rng.gen_range(1..=4);
    let density: f64 = rng.gen_range(0.1..0.5);
    let mut rules = Vec::new();
    for state in 0..n {
        for &label in &alpha.labels {
            for &(symbol, arity) in &alpha.symbols {
                let p = match arity {
                    0 if state + 1 == n => density,
                    0 => density / 4.0,
                    _ => 0.35,
                };
                while rng.gen_bool(p) && rules.len() < 40 {
                    let child = |rng: &mut R| if rng.gen_bool(0.7) { (state + 1).min(n - 1) } else { rng.gen_range(0..n) };
                    rules.push(NftaRule {
                        state,
                        label,
                        symbol,
                        children: (0..arity).map(|_| child(rng)).collect(),
                    });
                }
            }
        }
    }
    Nfta::new((0..n).map(|i| format!("s{i}")).collect(), rules, 0)
}

/// Bitmask of the states accepting a tree, given its children's masks.
fn accepting(n: &Nfta, label: Label, symbol: Symbol, kids: &[u32]) -> u32 {
    n.rules
        .iter()
        .filter(|r| r.label == label && r.symbol == symbol && r.children.iter().zip(kids).all(|(&c, &m)| m >> c & 1 == 1))
        .fold(0, |m, r| m | 1 << r.state)
}

/// Minimal height of a tree accepted by `n1` from its initial state and not
/// by `n2`. Trees are generated height by height; trees with the same pair of
/// accepting-state sets behave identically in any context, so one of each
/// pair is kept as a child candidate.
fn brute_counterexample_height(n1: &Nfta, n2: &Nfta, alpha: &Alphabet, depth: usize) -> Option<usize> {
    let mut below: Vec<(u32, u32)> = Vec::new();
    for d in 1..=depth {
        let mut level = Vec::new();
        for &label in &alpha.labels {
            for &(symbol, arity) in &alpha.symbols {
                if (arity == 0) != (d == 1) {
                    continue;
                }
                let tuples = (0..arity).fold(vec![Vec::new()], |acc, _| {
                    acc.into_iter()
                        .flat_map(|t: Vec<(u32, u32)>| {
                            below.iter().map(move |&k| {
                                let mut t = t.clone();
                                t.push(k);
                                t
                            })
                        })
                        .collect::<Vec<_>>()
                });
                for kids in tuples {
                    let m1 = accepting(n1, label, symbol, &kids.iter().map(|k| k.0).collect::<Vec<_>>());
                    let m2 = accepting(n2, label, symbol, &kids.iter().map(|k| k.1).collect::<Vec<_>>());
                    level.push((m1, m2));
                }
            }
        }
        if level.iter().any(|&(m1, m2)| m1 >> n1.initial & 1 == 1 && m2 >> n2.initial & 1 == 0) {
            return Some(d);
        }
        below.extend(level);
        below.sort();
        below.dedup();
    }
    None
}

/// Independent automata, or one automaton against itself with a rule removed
/// or with extra rules.
fn random_pair(seed: u64, alpha: &Alphabet) -> (Nfta, Nfta) {
    let mut g = rng(seed);
    let n1 = random_nfta(&mut g, alpha);
    let other = random_nfta(&mut g, alpha);
    let mut rules = n1.rules.clone();
    match g.gen_range(0..3) {
        0 => return (n1, other),
        1 if !rules.is_empty() => {
            rules.remove(g.gen_range(0..rules.len()));
        }
        _ => rules.extend(other.rules.iter().filter(|r| r.state < n1.num_states() && r.children.iter().all(|&c| c < n1.num_states())).cloned()),
    }
    let n2 = Nfta::new(n1.states.clone(), rules, n1.initial);
    (n1, n2)
}

fn decide_and_compare(seed: u64, alpha: &Alphabet, depth: usize) -> Result<(), TestCaseError> {
    let (n1, n2) = random_pair(seed, alpha);
    let brute = brute_counterexample_height(&n1, &n2, alpha, depth);
    match nfta_inclusion(&n1, &n2) {
        NftaInclusion::Holds => prop_assert_eq!(brute, None),
        NftaInclusion::Counterexample(t) => {
            prop_assert!(nfta_member(&n1, &t), "witness {} not accepted on the left", t);
            prop_assert!(!nfta_member(&n2, &t), "witness {} accepted on the right", t);
            if t.depth() <= depth {
                prop_assert_eq!(brute, Some(t.depth()));
            } else {
                prop_assert_eq!(brute, None);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inclusion_matches_enumeration_depth_four(seed in any::<u64>()) {
        decide_and_compare(seed, &Alphabet::small(), 4)?;
    }

    #[test]
    fn inclusion_matches_enumeration_twelve_letters(seed in any::<u64>()) {
        decide_and_compare(seed, &Alphabet::twelve(), 3)?;
    }

    #[test]
    fn down_close_is_monotone_and_idempotent(seed in any::<u64>()) {
        let alpha = Alphabet::twelve();
        let mut g = rng(seed);
        let n = random_nfta(&mut g, &alpha);
        let once = down_close(&n);
        let twice = down_close(&once);
        prop_assert!(matches!(nfta_inclusion(&n, &once), NftaInclusion::Holds));
        prop_assert!(matches!(nfta_inclusion(&once, &twice), NftaInclusion::Holds));
        prop_assert!(matches!(nfta_inclusion(&twice, &once), NftaInclusion::Holds));
        // any binder of an accepted tree may be read as a free label
        for _ in 0..20 {
            let t = sample_term(&mut g, &Signature::from_pairs(&[("f", 2), ("g", 1), ("k", 0)]).unwrap(), &[Name::intern("a"), Name::intern("b")], 3);
            if nfta_member(&n, &t) {
                prop_assert!(nfta_member(&once, &t));
                for i in 0..t.size() {
                    let flat = flatten_at(&t, i);
                    prop_assert!(nfta_member(&once, &flat), "{} in the closure but not {}", t, flat);
                }
            }
        }
    }
}

// `t` with the i-th node in preorder made free.
fn flatten_at(t: &Term, i: usize) -> Term {
    fn go(t: &Term, i: usize, pos: &mut usize) -> Term {
        let label = if *pos == i { Label::Free(t.label.name()) } else { t.label };
        *pos += 1;
        Term::new(label, t.symbol, t.children.iter().map(|c| go(c, i, pos)).collect())
    }
    go(t, i, &mut 0)
}

#[test]
fn random_nftas_cover_both_answers() {
    let alpha = Alphabet::small();
    let (mut holds, mut deep) = (0, 0);
    let mut refuted = 0;
    for seed in 0..200 {
        let (n1, n2) = random_pair(seed, &alpha);
        match nfta_inclusion(&n1, &n2) {
            NftaInclusion::Holds => holds += 1,
            NftaInclusion::Counterexample(t) => {
                refuted += 1;
                deep += usize::from(t.depth() >= 3);
            }
        }
    }
    assert!(holds >= 20 && refuted >= 20 && deep >= 5, "holds {holds}, refuted {refuted}, deep {deep}");
}
