//! Language inclusion by reduction to finite tree automata over a finite
//! set of names.

use crate::namedrop::name_drop;
use crate::nfta::{down_close, nfta_inclusion, restrict, Nfta, NftaInclusion};
use crate::nominal::{standard_names, Name, NameSet};
use crate::rnta::RntaSpec;
use crate::semantics::SemanticsKind;
use crate::term::{clean_variant, denu, DataTree, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InclusionError {
    #[error("the automata are over different signatures")]
    SignatureMismatch,
}

/// A term in the left language whose class is missing on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub term: Term,
    /// For the data semantics: a data tree in the left language but not the
    /// right one.
    pub data_tree: Option<DataTree>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    Counterexample(Witness),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

/// `degree(a) · max_arity + 1` names from the fixed sequence `a, b, c, ...`,
/// plus `_` when `a` uses the dummy.
pub fn restriction_set(a: &RntaSpec) -> NameSet {
    let n = a.degree() * a.signature().max_arity() + 1;
    let mut s: NameSet = standard_names(n).into_iter().collect();
    if a.uses_dummy() {
        s.insert(Name::DUMMY);
    }
    s
}

/// The two finite automata whose inclusion decides `include(a, b, kind)`,
/// and the name set they range over.
pub fn reduce(a: &RntaSpec, b: &RntaSpec, kind: SemanticsKind) -> Result<(Nfta, Nfta, NameSet), InclusionError> {
    if !a.signature().same_symbols(b.signature()) {
        return Err(InclusionError::SignatureMismatch);
    }
    let mut s = restriction_set(a);
    if b.uses_dummy() {
        s.insert(Name::DUMMY);
    }
    let b_drop = if b.is_dropped() {
        b.clone()
    } else {
        name_drop(b).expect("plain automaton")
    };
    let left = restrict(a, &s).expect("name set has the dummy");
    let right = restrict(&b_drop, &s).expect("name set has the dummy");
    let right = match kind {
        SemanticsKind::Local => down_close(&right),
        _ => right,
    };
    Ok((left, right, s))
}

/// Decides inclusion of the languages of `a` and `b` under `kind`. Global
/// and branchwise inclusion coincide with alphatic inclusion.
pub fn include(a: &RntaSpec, b: &RntaSpec, kind: SemanticsKind) -> Result<Inclusion, InclusionError> {
    let (left, right, _) = reduce(a, b, kind)?;
    Ok(match nfta_inclusion(&left, &right) {
        NftaInclusion::Holds => Inclusion::Holds,
        NftaInclusion::Counterexample(term) => {
            let data_tree = match kind {
                SemanticsKind::Alphatic => None,
                _ => Some(denu(&clean_variant(&term))),
            };
            Inclusion::Counterexample(Witness { term, data_tree })
        }
    })
}
