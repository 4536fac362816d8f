//! The name-dropping modification: every orbit is split by which of its
//! registers are still filled, and rules may forget inherited names.

use std::collections::{HashMap, HashSet};

use crate::rnta::{ChildSpec, Orbit, OrbitId, RegSet, RntaSpec, RuleKind, Source, SymbolicRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NameDropError {
    #[error("automaton is already name-dropped")]
    AlreadyDropped,
}

/// Builds A⊥. Output orbits are all pairs `(i, D)` with `D` a set of
/// registers of orbit `i`; the initial orbit is `(initial, ∅)`.
pub fn name_drop(a: &RntaSpec) -> Result<RntaSpec, NameDropError> {
    if a.is_dropped() {
        return Err(NameDropError::AlreadyDropped);
    }
    let mut orbits = Vec::new();
    let mut index: HashMap<(OrbitId, RegSet), OrbitId> = HashMap::new();
    for (i, o) in a.orbits().iter().enumerate() {
        for d in o.live.subsets() {
            index.insert((i, d), orbits.len());
            orbits.push(Orbit {
                name: o.name.clone(),
                registers: o.registers,
                live: d,
            });
        }
    }

    let mut seen = HashSet::new();
    let mut rules = Vec::new();
    for r in a.rules() {
        for d in a.orbit(r.source).live.subsets() {
            if let RuleKind::Free { letter } = r.kind {
                if letter != 0 && !d.contains(letter) {
                    continue;
                }
            }
            // Registers of each child that may stay filled.
            let allowed: Vec<RegSet> = r
                .children
                .iter()
                .map(|c| {
                    c.map
                        .entries()
                        .iter()
                        .filter(|&&(_, s)| match s {
                            Source::Parent(p) => d.contains(p),
                            Source::Fresh => true,
                        })
                        .map(|&(j, _)| j)
                        .collect()
                })
                .collect();
            let mut choice: Vec<RegSet> = allowed.iter().map(|_| RegSet::empty()).collect();
            emit_products(&allowed, 0, &mut choice, &mut |choice| {
                let rule = SymbolicRule {
                    source: index[&(r.source, d)],
                    kind: r.kind,
                    symbol: r.symbol,
                    children: r
                        .children
                        .iter()
                        .zip(choice)
                        .map(|(c, &dt)| ChildSpec {
                            orbit: index[&(c.orbit, dt)],
                            map: c.map.restrict(dt),
                        })
                        .collect(),
                };
                if seen.insert(rule.clone()) {
                    rules.push(rule);
                }
            });
        }
    }
    let initial = index[&(a.initial(), RegSet::empty())];
    let out = RntaSpec::unchecked(a.signature().clone(), orbits, rules, initial, a.uses_dummy(), true);
    debug_assert!(out.validate().is_ok(), "{:?}", out.validate());
    Ok(out)
}

fn emit_products(allowed: &[RegSet], i: usize, choice: &mut Vec<RegSet>, f: &mut impl FnMut(&[RegSet])) {
    if i == allowed.len() {
        f(choice);
        return;
    }
    for s in allowed[i].subsets() {
        choice[i] = s;
        emit_products(allowed, i + 1, choice, f);
    }
}

// Orbits are matched by name with the full register set live.
fn full_embedding(a: &RntaSpec, b: &RntaSpec) -> Option<Vec<OrbitId>> {
    a.orbits()
        .iter()
        .map(|o| {
            b.orbits()
                .iter()
                .position(|p| p.name == o.name && p.registers == o.registers && p.live == RegSet::full(o.registers))
        })
        .collect()
}

/// Does `b` contain every rule of `a`, reading each orbit of `a` as the orbit
/// of `b` with the same name and all registers filled?
pub fn check_subautomaton(a: &RntaSpec, b: &RntaSpec) -> bool {
    let Some(emb) = full_embedding(a, b) else {
        return a.rules().is_empty();
    };
    let rules: HashSet<&SymbolicRule> = b.rules().iter().collect();
    a.rules().iter().all(|r| {
        let image = SymbolicRule {
            source: emb[r.source],
            kind: r.kind,
            symbol: r.symbol,
            children: r
                .children
                .iter()
                .map(|c| ChildSpec {
                    orbit: emb[c.orbit],
                    map: c.map.clone(),
                })
                .collect(),
        };
        rules.contains(&image)
    })
}

/// Does every rule of `dropped` arise from a rule of `a` by emptying
/// registers? Orbits are related by name.
pub fn projects_onto(dropped: &RntaSpec, a: &RntaSpec) -> bool {
    let base = |b: OrbitId| a.orbit_by_name(&dropped.orbit(b).name);
    dropped.rules().iter().all(|r| {
        let Some(src) = base(r.source) else {
            return false;
        };
        a.rules_of(src).any(|orig| {
            orig.kind == r.kind
                && orig.symbol == r.symbol
                && orig.children.len() == r.children.len()
                && orig.children.iter().zip(&r.children).all(|(oc, rc)| {
                    base(rc.orbit) == Some(oc.orbit)
                        && rc.map == oc.map.restrict(dropped.orbit(rc.orbit).live)
                        && rc.map.domain() == dropped.orbit(rc.orbit).live
                })
                && match r.kind {
                    RuleKind::Free { letter } => letter == 0 || dropped.orbit(r.source).live.contains(letter),
                    RuleKind::Bound => true,
                }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rnta::RegisterMap;
    use crate::term::{Signature, Symbol, Term};

    fn sig() -> Signature {
        Signature::from_pairs(&[("f", 2), ("k", 0)]).unwrap()
    }

    fn root_reappears() -> RntaSpec {
        let f = Symbol::intern("f");
        let ch = |o, m: &[(usize, Source)]| ChildSpec { orbit: o, map: RegisterMap::new(m.to_vec()) };
        RntaSpec::new(
            sig(),
            vec![Orbit::new("q0", 0), Orbit::new("q1", 1)],
            vec![
                SymbolicRule {
                    source: 0,
                    kind: RuleKind::Bound,
                    symbol: f,
                    children: vec![ch(1, &[(1, Source::Fresh)]), ch(1, &[(1, Source::Fresh)])],
                },
                SymbolicRule {
                    source: 1,
                    kind: RuleKind::Bound,
                    symbol: f,
                    children: vec![ch(1, &[(1, Source::Parent(1))]), ch(1, &[(1, Source::Parent(1))])],
                },
                SymbolicRule { source: 1, kind: RuleKind::Free { letter: 1 }, symbol: Symbol::intern("k"), children: vec![] },
            ],
            0,
            false,
        )
        .unwrap()
    }

    #[test]
    fn root_reappears_orbits_and_rules() {
        let a = root_reappears();
        let d = name_drop(&a).unwrap();
        let labels: Vec<String> = (0..d.orbits().len()).map(|i| d.orbit_label(i)).collect();
        assert_eq!(labels, ["q0@{}", "q1@{}", "q1@{1}"]);
        assert_eq!(d.degree(), a.degree());
        // q1 with register 1 emptied keeps only the bound f rule.
        let empty = d.orbit_by_name("q1").unwrap();
        assert_eq!(d.orbit(empty).live, RegSet::empty());
        let rules: Vec<_> = d.rules_of(empty).collect();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].kind, RuleKind::Bound);
        assert!(check_subautomaton(&a, &d));
        assert!(projects_onto(&d, &a));
    }

    #[test]
    fn dropping_admits_vacuous_rebinding() {
        let (f, k) = (Symbol::intern("f"), Symbol::intern("k"));
        let ch = |o, m: &[(usize, Source)]| ChildSpec { orbit: o, map: RegisterMap::new(m.to_vec()) };
        let new = [(1, Source::Fresh)];
        let keep = [(1, Source::Parent(1))];
        let a = RntaSpec::new(
            sig(),
            vec![Orbit::new("q0", 0), Orbit::new("q1", 1), Orbit::new("q2", 1)],
            vec![
                SymbolicRule { source: 0, kind: RuleKind::Bound, symbol: f, children: vec![ch(1, &new), ch(1, &new)] },
                SymbolicRule { source: 1, kind: RuleKind::Bound, symbol: f, children: vec![ch(2, &keep), ch(2, &keep)] },
                SymbolicRule { source: 2, kind: RuleKind::Bound, symbol: k, children: vec![] },
            ],
            0,
            false,
        )
        .unwrap();
        let d = name_drop(&a).unwrap();
        let body = |x: &str| Term::bound(x, "f", vec![Term::bound("c", "k", vec![]), Term::bound("c", "k", vec![])]);
        // The inner binder may reuse `a` since nothing below mentions it.
        let t = Term::bound("a", "f", vec![body("a"), body("a")]);
        assert!(!a.accepts(&t));
        assert!(d.accepts(&t));
        let t = Term::bound("a", "f", vec![body("b"), body("a")]);
        assert!(d.accepts(&t));
    }

    #[test]
    fn double_drop_is_rejected() {
        let d = name_drop(&root_reappears()).unwrap();
        assert_eq!(name_drop(&d), Err(NameDropError::AlreadyDropped));
    }

    #[test]
    fn subautomaton_edge_cases() {
        let a = root_reappears();
        assert!(check_subautomaton(&a, &a));
        let empty = RntaSpec::unchecked(sig(), vec![Orbit::new("q0", 0)], vec![], 0, false, false);
        assert!(!check_subautomaton(&a, &empty));
    }
}
