//! Brute-force reference implementations: bounded enumeration of terms,
//! literal languages, α-closure, and inclusion by enumeration of α-classes
//! and data trees. Everything here is exponential by design.
//!
//! Binders never use the dummy name `_`; it only ever occurs free.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::nominal::{standard_names, Name, NameSet};
use crate::rnta::{ChildSpec, ConcreteState, MatchMode, Orbit, RegisterMap, RntaSpec, RuleKind, Source, SymbolicRule};
use crate::term::{free_names, DataTree, Label, Signature, Symbol, Term};

/// Labels over `names` in enumeration order: free before bound, then by name.
pub fn labels_over(names: &NameSet) -> Vec<Label> {
    let free = names.iter().map(Label::Free);
    let bound = names.iter().filter(|a| !a.is_dummy()).map(Label::Bound);
    free.chain(bound).collect()
}

/// All terms of height at most `depth`, kept in enumeration order: by height,
/// then label, symbol and the positions of the children.
#[derive(Clone, Debug)]
pub struct TermSpace {
    signature: Signature,
    labels: Vec<Label>,
    terms: Vec<Term>,
    /// `level_end[d]` is the number of terms of height at most `d`.
    level_end: Vec<usize>,
}

impl TermSpace {
    pub fn new(signature: &Signature, names: &NameSet, depth: usize) -> Self {
        let mut space = TermSpace {
            signature: signature.clone(),
            labels: labels_over(names),
            terms: Vec::new(),
            level_end: vec![0],
        };
        for d in 1..=depth {
            let level: Vec<Term> = space.level(d).collect();
            space.terms.extend(level);
            space.level_end.push(space.terms.len());
        }
        space
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn depth(&self) -> usize {
        self.level_end.len() - 1
    }

    /// Terms of height exactly `d`, built from the stored terms; `d` may
    /// exceed the stored depth by one.
    pub fn level(&self, d: usize) -> impl Iterator<Item = Term> + '_ {
        assert!(d >= 1 && d <= self.depth() + 1, "level out of range");
        let below = self.level_end[d - 1];
        let newest = if d >= 2 { self.level_end[d - 2] } else { 0 };
        let mut shapes = Vec::new();
        for l in &self.labels {
            for (s, n) in self.signature.symbols() {
                if (n == 0) == (d == 1) {
                    shapes.push((*l, s, n));
                }
            }
        }
        shapes.into_iter().flat_map(move |(l, s, n)| {
            TupleIter::new(n, below, newest).map(move |idx| Term::new(l, s, idx.iter().map(|&i| self.terms[i].clone()).collect()))
        })
    }
}

/// Index tuples over `0..bound` with at least one entry `>= newest`, in
/// lexicographic order. Arity 0 yields the empty tuple once.
struct TupleIter {
    idx: Vec<usize>,
    bound: usize,
    newest: usize,
    done: bool,
}

impl TupleIter {
    fn new(arity: usize, bound: usize, newest: usize) -> Self {
        let done = arity > 0 && bound == 0;
        TupleIter {
            idx: vec![0; arity],
            bound,
            newest,
            done,
        }
    }

    fn advance(&mut self) {
        for k in (0..self.idx.len()).rev() {
            self.idx[k] += 1;
            if self.idx[k] < self.bound {
                return;
            }
            self.idx[k] = 0;
        }
        self.done = true;
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            if self.done {
                return None;
            }
            let cur = self.idx.clone();
            if self.idx.is_empty() {
                self.done = true;
                return Some(cur);
            }
            self.advance();
            if cur.iter().any(|&i| i >= self.newest) {
                return Some(cur);
            }
        }
    }
}

/// Every term of height at most `depth` whose names lie in `names`,
/// duplicate-free and in a fixed order.
pub fn enum_terms(sig: &Signature, names: &NameSet, depth: usize) -> impl Iterator<Item = Term> {
    assert!(depth >= 1, "depth must be positive");
    let space = TermSpace::new(sig, names, depth - 1);
    let stored: Vec<Term> = space.terms().to_vec();
    let top: Vec<Term> = space.level(depth).collect();
    stored.into_iter().chain(top)
}

/// `L(a)` restricted to terms of height at most `depth` over `names`.
///
/// Subterms below the root are evaluated once per state; only terms accepted
/// from the initial state are ever built at the top level.
pub fn brute_language(a: &RntaSpec, names: &NameSet, depth: usize) -> BTreeSet<Term> {
    assert!(depth >= 1, "depth must be positive");
    let space = TermSpace::new(a.signature(), names, depth - 1);
    let mut states: Vec<ConcreteState> = Vec::new();
    let mut index: HashMap<ConcreteState, usize> = HashMap::new();
    for o in 0..a.orbits().len() {
        for q in a.concrete_states_within(o, names) {
            index.insert(q.clone(), states.len());
            states.push(q);
        }
    }
    let mut steps: HashMap<(usize, Label, Symbol), Vec<Vec<usize>>> = HashMap::new();
    let mut step = |qi: usize, l: Label, s: Symbol| -> Vec<Vec<usize>> {
        steps
            .entry((qi, l, s))
            .or_insert_with(|| {
                a.steps(&states[qi], l, s, MatchMode::Literal)
                    .iter()
                    .map(|cs| cs.iter().map(|c| index[c]).collect())
                    .collect()
            })
            .clone()
    };
    // acc[q][i]: state q accepts stored term i. Children precede parents.
    let n = space.terms().len();
    let positions: HashMap<&Term, usize> = space.terms().iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut acc = vec![vec![false; n]; states.len()];
    for (i, t) in space.terms().iter().enumerate() {
        let kids: Vec<usize> = t.children.iter().map(|c| positions[c]).collect();
        for q in 0..states.len() {
            acc[q][i] = step(q, t.label, t.symbol)
                .iter()
                .any(|cs| cs.iter().zip(&kids).all(|(&c, &k)| acc[c][k]));
        }
    }
    let q0 = index[&a.initial_state()];
    let mut out = BTreeSet::new();
    for l in labels_over(names) {
        for (s, arity) in a.signature().symbols() {
            for cs in step(q0, l, s) {
                if arity == 0 {
                    out.insert(Term::new(l, s, vec![]));
                    continue;
                }
                let lists: Vec<Vec<usize>> = cs.iter().map(|&c| (0..n).filter(|&i| acc[c][i]).collect()).collect();
                for_each_product(&lists, &mut |idx| {
                    out.insert(Term::new(l, s, idx.iter().map(|&i| space.terms()[i].clone()).collect()));
                });
            }
        }
    }
    out
}

fn for_each_product(lists: &[Vec<usize>], f: &mut impl FnMut(&[usize])) {
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0; lists.len()];
    let mut cur: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    'next: loop {
        f(&cur);
        for k in (0..lists.len()).rev() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                cur[k] = lists[k][idx[k]];
                continue 'next;
            }
            idx[k] = 0;
            cur[k] = lists[k][0];
        }
        return;
    }
}

/// One node of an [`AlphaKey`], in preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyNode {
    Bind(Symbol),
    /// A name bound `i` binders further up (`0` is the nearest).
    Ref(u32, Symbol),
    Free(Name, Symbol),
}

/// A name-free description of an α-class: binders are anonymous and bound
/// occurrences point at their binder by distance.
pub type AlphaKey = Vec<KeyNode>;

pub fn alpha_key(t: &Term) -> AlphaKey {
    fn go(t: &Term, env: &mut Vec<Name>, out: &mut AlphaKey) {
        match t.label {
            Label::Bound(a) => {
                out.push(KeyNode::Bind(t.symbol));
                env.push(a);
                for c in &t.children {
                    go(c, env, out);
                }
                env.pop();
            }
            Label::Free(a) => {
                out.push(match env.iter().rev().position(|&b| b == a) {
                    Some(i) => KeyNode::Ref(i as u32, t.symbol),
                    None => KeyNode::Free(a, t.symbol),
                });
                for c in &t.children {
                    go(c, env, out);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(t.size());
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Preorder layout of a key: per node, its symbol arity and the binder
/// nodes above it (outermost first).
struct KeyLayout<'k> {
    key: &'k [KeyNode],
    binders_above: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

fn symbol_of(n: KeyNode) -> Symbol {
    match n {
        KeyNode::Bind(s) | KeyNode::Ref(_, s) | KeyNode::Free(_, s) => s,
    }
}

impl<'k> KeyLayout<'k> {
    fn new(key: &'k [KeyNode], sig: &Signature) -> Option<Self> {
        let mut binders_above = vec![Vec::new(); key.len()];
        let mut children = vec![Vec::new(); key.len()];
        let mut pos = 0;
        fn go(
            key: &[KeyNode],
            sig: &Signature,
            pos: &mut usize,
            above: &mut Vec<usize>,
            binders_above: &mut [Vec<usize>],
            children: &mut [Vec<usize>],
        ) -> Option<usize> {
            let me = *pos;
            let node = *key.get(me)?;
            *pos += 1;
            binders_above[me] = above.clone();
            if let KeyNode::Ref(i, _) = node {
                if i as usize >= above.len() {
                    return None;
                }
            }
            let bind = matches!(node, KeyNode::Bind(_));
            if bind {
                above.push(me);
            }
            for _ in 0..sig.arity(symbol_of(node))? {
                let c = go(key, sig, pos, above, binders_above, children)?;
                children[me].push(c);
            }
            if bind {
                above.pop();
            }
            Some(me)
        }
        go(key, sig, &mut pos, &mut Vec::new(), &mut binders_above, &mut children)?;
        (pos == key.len()).then_some(KeyLayout {
            key,
            binders_above,
            children,
        })
    }

    /// Is assigning `names` (per binder node, in preorder) α-correct at node `i`?
    fn consistent_at(&self, i: usize, names: &[Option<Name>]) -> bool {
        let above = &self.binders_above[i];
        match self.key[i] {
            KeyNode::Bind(_) => true,
            KeyNode::Ref(d, _) => {
                let target = above.len() - 1 - d as usize;
                let a = names[above[target]].expect("binder above is named");
                above[target + 1..].iter().all(|&b| names[b] != Some(a))
            }
            KeyNode::Free(x, _) => above.iter().all(|&b| names[b] != Some(x)),
        }
    }

    fn build(&self, i: usize, names: &[Option<Name>]) -> Term {
        let (label, symbol) = match self.key[i] {
            KeyNode::Bind(s) => (Label::Bound(names[i].unwrap()), s),
            KeyNode::Ref(d, s) => {
                let above = &self.binders_above[i];
                (Label::Free(names[above[above.len() - 1 - d as usize]].unwrap()), s)
            }
            KeyNode::Free(x, s) => (Label::Free(x), s),
        };
        Term::new(label, symbol, self.children[i].iter().map(|&c| self.build(c, names)).collect())
    }

    /// All α-correct binder namings; `choices(used)` lists the candidate
    /// names for the next binder given the names used so far.
    fn realize(&self, choices: &dyn Fn(&[Name]) -> Vec<Name>) -> Vec<Term> {
        let mut out = Vec::new();
        let mut names = vec![None; self.key.len()];
        let mut used = Vec::new();
        self.dfs(0, &mut names, &mut used, choices, &mut out);
        out
    }

    fn dfs(
        &self,
        i: usize,
        names: &mut Vec<Option<Name>>,
        used: &mut Vec<Name>,
        choices: &dyn Fn(&[Name]) -> Vec<Name>,
        out: &mut Vec<Term>,
    ) {
        if i == self.key.len() {
            out.push(self.build(0, names));
            return;
        }
        if let KeyNode::Bind(_) = self.key[i] {
            for a in choices(used) {
                names[i] = Some(a);
                let fresh = !used.contains(&a);
                if fresh {
                    used.push(a);
                }
                self.dfs(i + 1, names, used, choices, out);
                if fresh {
                    used.pop();
                }
            }
            names[i] = None;
        } else if self.consistent_at(i, names) {
            self.dfs(i + 1, names, used, choices, out);
        }
    }
}

/// Every term in the class `key` whose binders use names from `names`.
pub fn variants_within(key: &AlphaKey, sig: &Signature, names: &NameSet) -> Vec<Term> {
    let pool: Vec<Name> = names.iter().filter(|a| !a.is_dummy()).collect();
    KeyLayout::new(key, sig)
        .expect("well-formed key")
        .realize(&|_| pool.clone())
}

/// One representative per binder-name pattern of `key`: the i-th new binder
/// name is always the i-th standard name not occurring free in the class. By
/// equivariance these decide membership of the class in any automaton whose
/// initial support holds no name other than `_`.
pub fn canonical_variants(key: &AlphaKey, sig: &Signature) -> Vec<Term> {
    let binders = key.iter().filter(|n| matches!(n, KeyNode::Bind(_))).count();
    let free: NameSet = key
        .iter()
        .filter_map(|n| match n {
            KeyNode::Free(a, _) => Some(*a),
            _ => None,
        })
        .collect();
    let mut pool = Vec::new();
    let mut i = 0;
    while pool.len() < binders {
        let a = crate::nominal::standard_name(i);
        if !free.contains(a) {
            pool.push(a);
        }
        i += 1;
    }
    KeyLayout::new(key, sig)
        .expect("well-formed key")
        .realize(&|used: &[Name]| pool[..(used.len() + 1).min(pool.len())].to_vec())
}

/// `{ s ∈ Terms_S : s ≡α t for some t ∈ L }`.
pub fn alpha_close(lang: &BTreeSet<Term>, sig: &Signature, names: &NameSet) -> BTreeSet<Term> {
    let keys: BTreeSet<AlphaKey> = lang.iter().map(alpha_key).collect();
    keys.iter().flat_map(|k| variants_within(k, sig, names)).collect()
}

/// The α-classes of height at most `depth` without free names, optionally
/// allowing the free dummy `_`, ordered by height.
pub fn closed_classes(sig: &Signature, depth: usize, with_dummy: bool) -> Vec<AlphaKey> {
    fn go(sig: &Signature, depth: usize, binders: u32, with_dummy: bool, memo: &mut HashMap<(usize, u32), Vec<AlphaKey>>) -> Vec<AlphaKey> {
        if depth == 0 {
            return Vec::new();
        }
        if let Some(v) = memo.get(&(depth, binders)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for (s, n) in sig.symbols() {
            let mut heads = vec![(KeyNode::Bind(s), binders + 1)];
            heads.extend((0..binders).map(|i| (KeyNode::Ref(i, s), binders)));
            if with_dummy {
                heads.push((KeyNode::Free(Name::DUMMY, s), binders));
            }
            for (head, inner) in heads {
                let kids = go(sig, depth - 1, inner, with_dummy, memo);
                let mut acc: Vec<AlphaKey> = vec![vec![head]];
                for _ in 0..n {
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            kids.iter().map(move |k| {
                                let mut p = prefix.clone();
                                p.extend_from_slice(k);
                                p
                            })
                        })
                        .collect();
                }
                out.extend(acc);
            }
        }
        memo.insert((depth, binders), out.clone());
        out
    }
    let mut all = go(sig, depth, 0, with_dummy, &mut HashMap::new());
    let height = |k: &AlphaKey| {
        let layout = KeyLayout::new(k, sig).unwrap();
        fn h(l: &KeyLayout, i: usize) -> usize {
            1 + l.children[i].iter().map(|&c| h(l, c)).max().unwrap_or(0)
        }
        h(&layout, 0)
    };
    all.sort_by_cached_key(|k| (height(k), k.clone()));
    all
}

/// Membership of α-classes in the language of a plain automaton, decided on
/// canonical representatives and cached by key.
pub struct ClassOracle<'a> {
    spec: &'a RntaSpec,
    cache: HashMap<AlphaKey, bool>,
}

impl<'a> ClassOracle<'a> {
    pub fn new(spec: &'a RntaSpec) -> Self {
        ClassOracle {
            spec,
            cache: HashMap::new(),
        }
    }

    pub fn member_key(&mut self, key: &AlphaKey) -> bool {
        if let Some(&b) = self.cache.get(key) {
            return b;
        }
        let b = canonical_variants(key, self.spec.signature()).iter().any(|t| self.spec.accepts(t));
        self.cache.insert(key.clone(), b);
        b
    }

    pub fn member(&mut self, t: &Term) -> bool {
        self.member_key(&alpha_key(t))
    }

    /// Local-freshness membership of a data tree: some closed annotation of
    /// it lies in an accepted class.
    pub fn member_data(&mut self, s: &DataTree) -> bool {
        crate::semantics::annotations(s).any(|t| is_closed_mod_dummy(&t) && self.member(&t))
    }
}

fn is_closed_mod_dummy(t: &Term) -> bool {
    free_names(t).iter().all(|a| a.is_dummy())
}

/// A closed α-class of height at most `depth` in `L(a)` but not `L(b)`, of
/// minimal height, as a representative accepted by `a`.
pub fn brute_alphatic_counterexample(a: &RntaSpec, b: &RntaSpec, depth: usize) -> Option<Term> {
    let dummy = a.uses_dummy() || b.uses_dummy();
    let (mut oa, mut ob) = (ClassOracle::new(a), ClassOracle::new(b));
    closed_classes(a.signature(), depth, dummy)
        .into_iter()
        .find(|k| oa.member_key(k) && !ob.member_key(k))
        .map(|k| {
            canonical_variants(&k, a.signature())
                .into_iter()
                .find(|t| a.accepts(t))
                .expect("class is accepted")
        })
}

/// Data trees of height at most `depth` up to renaming: names are assigned
/// in order of first occurrence from `a, b, c, ...`. With `with_dummy`, any
/// node may also carry `_`. Ordered by height.
pub fn data_trees_up_to_renaming(sig: &Signature, depth: usize, with_dummy: bool) -> Vec<DataTree> {
    // Shapes: terms over the single label `_`.
    let dummy: NameSet = [Name::DUMMY].into_iter().collect();
    let shapes: Vec<Term> = enum_terms(sig, &dummy, depth).collect();
    let mut out = Vec::new();
    for shape in shapes {
        let n = shape.size();
        let pool = standard_names(n);
        let mut assignment: Vec<Name> = Vec::with_capacity(n);
        fn go(
            shape: &Term,
            n: usize,
            pool: &[Name],
            with_dummy: bool,
            assignment: &mut Vec<Name>,
            used: usize,
            out: &mut Vec<DataTree>,
        ) {
            if assignment.len() == n {
                let mut i = 0;
                let t = relabel(shape, assignment, &mut i);
                out.push(DataTree::try_from(t).unwrap());
                return;
            }
            for (j, &a) in pool.iter().enumerate().take(used + 1) {
                assignment.push(a);
                go(shape, n, pool, with_dummy, assignment, used.max(j + 1), out);
                assignment.pop();
            }
            if with_dummy {
                assignment.push(Name::DUMMY);
                go(shape, n, pool, with_dummy, assignment, used, out);
                assignment.pop();
            }
        }
        go(&shape, n, &pool, with_dummy, &mut assignment, 0, &mut out);
    }
    out.sort_by_key(|s| s.as_term().depth());
    out
}

fn relabel(t: &Term, names: &[Name], i: &mut usize) -> Term {
    let a = names[*i];
    *i += 1;
    Term::new(Label::Free(a), t.symbol, t.children.iter().map(|c| relabel(c, names, i)).collect())
}

/// A data tree of height at most `depth` in the local-freshness language of
/// `a` but not of `b`, of minimal height.
pub fn brute_local_counterexample(a: &RntaSpec, b: &RntaSpec, depth: usize) -> Option<DataTree> {
    let dummy = a.uses_dummy() || b.uses_dummy();
    let (mut oa, mut ob) = (ClassOracle::new(a), ClassOracle::new(b));
    data_trees_up_to_renaming(a.signature(), depth, dummy)
        .into_iter()
        .find(|s| oa.member_data(s) && !ob.member_data(s))
}

/// Shape of random automata.
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_orbits: usize,
    pub max_registers: usize,
    pub max_rules_per_orbit: usize,
    pub signature: Signature,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_orbits: 3,
            max_registers: 2,
            max_rules_per_orbit: 4,
            signature: Signature::from_pairs(&[("f", 2), ("k", 0)]).unwrap(),
        }
    }
}

/// A random valid plain automaton; orbit `q0` is initial and has no registers.
pub fn random_spec<R: Rng>(rng: &mut R, params: &RandomParams) -> RntaSpec {
    let n = rng.gen_range(1..=params.max_orbits);
    let orbits: Vec<Orbit> = (0..n)
        .map(|i| {
            let k = if i == 0 { 0 } else { rng.gen_range(0..=params.max_registers) };
            Orbit::new(format!("q{i}"), k)
        })
        .collect();
    let symbols: Vec<(Symbol, usize)> = params.signature.symbols().collect();
    let constants: Vec<Symbol> = symbols.iter().filter(|s| s.1 == 0).map(|s| s.0).collect();
    let mut rules = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let count = rng.gen_range(1..=params.max_rules_per_orbit);
        for r in 0..count {
            let (symbol, arity) = if r == 0 && rng.gen_bool(0.7) {
                (*constants.choose(rng).unwrap(), 0)
            } else {
                *symbols.choose(rng).unwrap()
            };
            let free = o.registers > 0 && rng.gen_bool(0.4);
            let kind = if free {
                RuleKind::Free {
                    letter: rng.gen_range(1..=o.registers),
                }
            } else {
                RuleKind::Bound
            };
            let mut sources: Vec<Source> = (1..=o.registers).map(Source::Parent).collect();
            if !free {
                sources.push(Source::Fresh);
            }
            let children = (0..arity)
                .map(|_| {
                    let feasible: Vec<usize> = (0..n).filter(|&c| orbits[c].registers <= sources.len()).collect();
                    // Favour children that inherit names; those exercise binder blocking.
                    let c = *feasible.choose_weighted(rng, |&c| 1 + 2 * orbits[c].registers).unwrap();
                    let mut pick = sources.clone();
                    pick.shuffle(rng);
                    let map = (1..=orbits[c].registers).zip(pick).collect();
                    ChildSpec {
                        orbit: c,
                        map: RegisterMap::new(map),
                    }
                })
                .collect();
            rules.push(SymbolicRule {
                source: i,
                kind,
                symbol,
                children,
            });
        }
    }
    RntaSpec::new(params.signature.clone(), orbits, rules, 0, false).expect("random automaton is valid")
}

/// A random pair: independent, `b` extending `a`, or `a` extending `b`.
pub fn random_pair<R: Rng>(rng: &mut R, params: &RandomParams) -> (RntaSpec, RntaSpec) {
    let a = random_spec(rng, params);
    match rng.gen_range(0..3) {
        0 => (a, random_spec(rng, params)),
        mode => {
            let extra = random_spec(rng, params);
            let big = merge_rules(&a, &extra, rng);
            let small = drop_one_rule(&a, rng);
            if mode == 1 {
                (a, big)
            } else {
                (a, small)
            }
        }
    }
}

/// Is `L(a)` within `Terms_S` up to `depth` already closed under α?
pub fn is_literally_alpha_closed(a: &RntaSpec, names: &NameSet, depth: usize) -> bool {
    let plain = brute_language(a, names, depth);
    alpha_close(&plain, a.signature(), names) == plain
}

/// A random automaton whose literal language over four names, up to height
/// 3, misses some α-variant of a term it accepts.
pub fn random_open_spec<R: Rng>(rng: &mut R, params: &RandomParams) -> RntaSpec {
    let names: NameSet = standard_names(4).into_iter().collect();
    loop {
        let a = random_spec(rng, params);
        if !is_literally_alpha_closed(&a, &names, 3) {
            return a;
        }
    }
}

/// A pair whose right automaton has a literal language that is not α-closed,
/// against a left automaton of degree at most 1, so few names are available
/// and binder names collide.
pub fn random_open_pair<R: Rng>(rng: &mut R, params: &RandomParams) -> (RntaSpec, RntaSpec) {
    let b = random_open_spec(rng, params);
    let small = RandomParams {
        max_registers: 1,
        ..params.clone()
    };
    let a = match rng.gen_range(0..3) {
        0 => random_spec(rng, &small),
        1 => merge_rules(&random_spec(rng, &small), &b, rng),
        _ => drop_one_rule(&b, rng),
    };
    (a, b)
}

// Adds a few rules of `extra` to `a`, when they fit its orbits.
fn merge_rules<R: Rng>(a: &RntaSpec, extra: &RntaSpec, rng: &mut R) -> RntaSpec {
    let mut rules = a.rules().to_vec();
    for r in extra.rules() {
        let fits = r.source < a.orbits().len()
            && a.orbit(r.source).registers == extra.orbit(r.source).registers
            && r.children.iter().all(|c| c.orbit < a.orbits().len() && a.orbit(c.orbit).registers == extra.orbit(c.orbit).registers);
        if fits && rng.gen_bool(0.5) && !rules.contains(r) {
            rules.push(r.clone());
        }
    }
    RntaSpec::new(a.signature().clone(), a.orbits().to_vec(), rules, a.initial(), false).expect("merged automaton is valid")
}

fn drop_one_rule<R: Rng>(a: &RntaSpec, rng: &mut R) -> RntaSpec {
    let mut rules = a.rules().to_vec();
    if !rules.is_empty() {
        rules.remove(rng.gen_range(0..rules.len()));
    }
    RntaSpec::new(a.signature().clone(), a.orbits().to_vec(), rules, a.initial(), false).expect("automaton is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::alpha_eq;

    fn names(s: &[&str]) -> NameSet {
        s.iter().map(|x| Name::intern(x)).collect()
    }

    fn fk() -> Signature {
        Signature::from_pairs(&[("f", 2), ("k", 0)]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let k = Signature::from_pairs(&[("k", 0)]).unwrap();
        let one: Vec<Term> = enum_terms(&k, &names(&["a"]), 1).collect();
        assert_eq!(one.len(), 2);
        assert_eq!(enum_terms(&fk(), &names(&["a"]), 2).count(), 10);
        // closed form: t1 = 2n, t_{d+1} = 2n + 2n·t_d², with n names
        for n in 1..=3 {
            let s: NameSet = standard_names(n).into_iter().collect();
            let t1 = 2 * n;
            let t2 = 2 * n + 2 * n * t1 * t1;
            assert_eq!(enum_terms(&fk(), &s, 1).count(), t1);
            assert_eq!(enum_terms(&fk(), &s, 2).count(), t2);
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_monotone() {
        let s = names(&["a", "b"]);
        let d2: Vec<Term> = enum_terms(&fk(), &s, 2).collect();
        let set: BTreeSet<Term> = d2.iter().cloned().collect();
        assert_eq!(set.len(), d2.len());
        let d3: BTreeSet<Term> = enum_terms(&fk(), &s, 3).collect();
        assert!(set.is_subset(&d3));
        assert!(d3.iter().all(|t| t.depth() <= 3 && t.names().is_subset(&s)));
    }

    #[test]
    fn keys_decide_alpha_equivalence() {
        let s = names(&["a", "b", "c"]);
        let terms: Vec<Term> = enum_terms(&fk(), &s, 2).collect();
        for t in &terms {
            for u in &terms {
                assert_eq!(alpha_key(t) == alpha_key(u), alpha_eq(t, u), "{t} vs {u}");
            }
        }
    }

    #[test]
    fn alpha_close_examples() {
        let t = Term::bound("a", "k", vec![]);
        let l: BTreeSet<Term> = [t].into_iter().collect();
        let s = names(&["a", "b"]);
        let c = alpha_close(&l, &fk(), &s);
        let expected: BTreeSet<Term> = [Term::bound("a", "k", vec![]), Term::bound("b", "k", vec![])].into_iter().collect();
        assert_eq!(c, expected);
        assert!(alpha_close(&BTreeSet::new(), &fk(), &s).is_empty());
        assert_eq!(alpha_close(&c, &fk(), &s), c);
    }

    #[test]
    fn variants_are_exactly_the_class_within_s() {
        let s = names(&["a", "b", "c"]);
        let terms: Vec<Term> = enum_terms(&fk(), &s, 3).take(4000).collect();
        for t in terms.iter().step_by(37) {
            let v: BTreeSet<Term> = variants_within(&alpha_key(t), &fk(), &s).into_iter().collect();
            let brute: BTreeSet<Term> = enum_terms(&fk(), &s, t.depth()).filter(|u| alpha_eq(t, u)).collect();
            assert_eq!(v, brute, "{t}");
        }
    }

    #[test]
    fn closed_class_count() {
        assert_eq!(closed_classes(&fk(), 1, false).len(), 1);
        assert_eq!(closed_classes(&fk(), 2, false).len(), 5);
        assert_eq!(closed_classes(&fk(), 3, false).len(), 226);
        for k in closed_classes(&fk(), 3, false) {
            let reps = canonical_variants(&k, &fk());
            assert!(!reps.is_empty());
            assert!(reps.iter().all(|t| alpha_key(t) == k && t.is_closed()));
        }
    }

    #[test]
    fn data_tree_counts() {
        // shapes of height <= 3 have 1, 3, 5, 5, 7 nodes; Bell numbers 1, 5, 52, 52, 877
        assert_eq!(data_trees_up_to_renaming(&fk(), 3, false).len(), 1 + 5 + 52 + 52 + 877);
    }

    #[test]
    fn random_specs_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_spec(&mut rng, &RandomParams::default());
            assert!(a.degree() <= 2 && a.orbits().len() <= 3);
            let (x, y) = random_pair(&mut rng, &RandomParams::default());
            assert!(x.validate().is_ok() && y.validate().is_ok());
        }
    }
}
