//! Names, finite permutations and finite name sets.
//!
//! Names are interned into a process-wide, append-only pool. Index 0 is
//! reserved for the dummy name `_` that stands in for unlabelled nodes; it is
//! an ordinary name everywhere except that [`fresh_for`] never returns it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

/// An atom drawn from the countably infinite name pool.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(u32);

struct Pool {
    strings: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
    next_generated: usize,
}

static POOL: LazyLock<RwLock<Pool>> = LazyLock::new(|| {
    let mut index = HashMap::new();
    index.insert("_", 0);
    RwLock::new(Pool {
        strings: vec!["_"],
        index,
        next_generated: 0,
    })
});

impl Pool {
    fn intern(&mut self, s: &str) -> Name {
        if let Some(&i) = self.index.get(s) {
            return Name(i);
        }
        let leaked: &'static str = Box::leak(s.to_owned().into_boxed_str());
        let i = self.strings.len() as u32;
        self.strings.push(leaked);
        self.index.insert(leaked, i);
        Name(i)
    }

    // a..z, then n1, n2, ... skipping anything a user already interned.
    fn generate(&mut self) -> Name {
        loop {
            let k = self.next_generated;
            self.next_generated += 1;
            let candidate = if k < 26 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                format!("n{}", k - 25)
            };
            if !self.index.contains_key(candidate.as_str()) {
                return self.intern(&candidate);
            }
        }
    }
}

/// Returns true if `s` is a valid name identifier (`[a-zA-Z_][a-zA-Z0-9_]*`).
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Name {
    /// The reserved dummy name `_`.
    pub const DUMMY: Name = Name(0);

    /// Interns `s`, returning the existing name if it was seen before.
    pub fn intern(s: &str) -> Name {
        if let Some(&i) = POOL.read().unwrap().index.get(s) {
            return Name(i);
        }
        POOL.write().unwrap().intern(s)
    }

    pub fn as_str(self) -> &'static str {
        POOL.read().unwrap().strings[self.0 as usize]
    }

    /// Position in the interning order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_dummy(self) -> bool {
        self == Name::DUMMY
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returns the lowest-index non-dummy name not in `avoid`, extending the pool
/// with a generated name if every interned name is taken.
pub fn fresh_for(avoid: &NameSet) -> Name {
    {
        let pool = POOL.read().unwrap();
        for i in 1..pool.strings.len() as u32 {
            if !avoid.contains(Name(i)) {
                return Name(i);
            }
        }
    }
    let mut pool = POOL.write().unwrap();
    // Another thread may have grown the pool in between.
    for i in 1..pool.strings.len() as u32 {
        if !avoid.contains(Name(i)) {
            return Name(i);
        }
    }
    pool.generate()
}

/// Returns `count` pairwise distinct names, each fresh for `avoid`.
pub fn fresh_names(avoid: &NameSet, count: usize) -> Vec<Name> {
    let mut avoid = avoid.clone();
    (0..count)
        .map(|_| {
            let n = fresh_for(&avoid);
            avoid.insert(n);
            n
        })
        .collect()
}

/// The `i`-th name of the fixed sequence `a, b, ..., z, n1, n2, ...`.
pub fn standard_name(i: usize) -> Name {
    if i < 26 {
        Name::intern(&((b'a' + i as u8) as char).to_string())
    } else {
        Name::intern(&format!("n{}", i - 25))
    }
}

/// The first `count` names of [`standard_name`]'s sequence.
pub fn standard_names(count: usize) -> Vec<Name> {
    (0..count).map(standard_name).collect()
}

/// A finite set of names.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NameSet(BTreeSet<Name>);

impl NameSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: Name) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: Name) -> bool {
        self.0.remove(&a)
    }

    pub fn contains(&self, a: Name) -> bool {
        self.0.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Name> + '_ {
        self.0.iter().copied()
    }

    pub fn extend_from(&mut self, other: &NameSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn union(&self, other: &NameSet) -> NameSet {
        NameSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &NameSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &NameSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Image of the set under a permutation.
    pub fn act(&self, p: &Permutation) -> NameSet {
        self.iter().map(|a| p.apply(a)).collect()
    }
}

impl FromIterator<Name> for NameSet {
    fn from_iter<I: IntoIterator<Item = Name>>(iter: I) -> Self {
        NameSet(iter.into_iter().collect())
    }
}

impl Extend<Name> for NameSet {
    fn extend<I: IntoIterator<Item = Name>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a NameSet {
    type Item = Name;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Name>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for NameSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for NameSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A finite permutation of names, stored as the sparse map of moved names.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Permutation {
    moved: BTreeMap<Name, Name>,
}

/// The transposition `(a b)`.
pub fn swap(a: Name, b: Name) -> Permutation {
    Permutation::swap(a, b)
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn swap(a: Name, b: Name) -> Self {
        let mut moved = BTreeMap::new();
        if a != b {
            moved.insert(a, b);
            moved.insert(b, a);
        }
        Permutation { moved }
    }

    /// Builds a permutation from an explicit map; `None` unless the map is a
    /// bijection on its own key set.
    pub fn from_map(map: BTreeMap<Name, Name>) -> Option<Self> {
        let keys: BTreeSet<Name> = map.keys().copied().collect();
        let values: BTreeSet<Name> = map.values().copied().collect();
        if keys != values || values.len() != map.len() {
            return None;
        }
        let moved = map.into_iter().filter(|(k, v)| k != v).collect();
        Some(Permutation { moved })
    }

    pub fn apply(&self, a: Name) -> Name {
        self.moved.get(&a).copied().unwrap_or(a)
    }

    /// Applicative-order composition: `self.compose(q)` maps `a` to `self(q(a))`.
    pub fn compose(&self, q: &Permutation) -> Permutation {
        let carrier: BTreeSet<Name> = self.moved.keys().chain(q.moved.keys()).copied().collect();
        let moved = carrier
            .into_iter()
            .map(|a| (a, self.apply(q.apply(a))))
            .filter(|(a, b)| a != b)
            .collect();
        Permutation { moved }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            moved: self.moved.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Names moved by the permutation.
    pub fn carrier(&self) -> NameSet {
        self.moved.keys().copied().collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.moved.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &[&str]) -> Vec<Name> {
        s.iter().map(|x| Name::intern(x)).collect()
    }

    #[test]
    fn swap_identity_and_transposition() {
        let [a, b]: [Name; 2] = names(&["a", "b"]).try_into().unwrap();
        assert!(swap(a, a).is_identity());
        assert_eq!(swap(a, b).apply(a), b);
        assert_eq!(swap(a, b).apply(b), a);
        assert!(swap(a, b).compose(&swap(a, b)).is_identity());
    }

    #[test]
    fn apply_fixes_names_outside_carrier() {
        let [a, b, c]: [Name; 3] = names(&["a", "b", "c"]).try_into().unwrap();
        assert_eq!(Permutation::identity().apply(a), a);
        assert_eq!(swap(a, b).apply(c), c);
    }

    #[test]
    fn composition_is_applicative_order() {
        let [a, b, c]: [Name; 3] = names(&["a", "b", "c"]).try_into().unwrap();
        // (a b)·(b c) applies (b c) first: c -> b -> a.
        let p = swap(a, b).compose(&swap(b, c));
        assert_eq!(p.apply(c), a);
        assert_eq!(p.apply(c), swap(a, b).apply(swap(b, c).apply(c)));
        // The other order sends c to b.
        let q = swap(b, c).compose(&swap(a, b));
        assert_eq!(q.apply(c), b);
    }

    #[test]
    fn fresh_for_empty_is_first_pool_name() {
        let n = fresh_for(&NameSet::new());
        assert_eq!(n.index(), 1);
        assert!(!n.is_dummy());
    }

    #[test]
    fn fresh_for_avoids_given_set() {
        let a = Name::intern("a");
        let s: NameSet = [a].into_iter().collect();
        assert_ne!(fresh_for(&s), a);
    }

    #[test]
    fn repeated_fresh_names_are_distinct() {
        let mut s = NameSet::new();
        for _ in 0..100 {
            let n = fresh_for(&s);
            assert!(!s.contains(n));
            s.insert(n);
        }
        assert_eq!(s.len(), 100);
    }

    #[test]
    fn from_map_rejects_non_bijections() {
        let [a, b, c]: [Name; 3] = names(&["a", "b", "c"]).try_into().unwrap();
        let bad: BTreeMap<_, _> = [(a, b), (b, c)].into_iter().collect();
        assert!(Permutation::from_map(bad).is_none());
        let cycle: BTreeMap<_, _> = [(a, b), (b, c), (c, a)].into_iter().collect();
        let p = Permutation::from_map(cycle).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity());
    }

    #[test]
    fn standard_names_are_fixed() {
        let v = standard_names(28);
        assert_eq!(v[0].as_str(), "a");
        assert_eq!(v[25].as_str(), "z");
        assert_eq!(v[27].as_str(), "n2");
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("a1_b"));
        assert!(is_identifier("_"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a-b"));
    }
}
