//! Alphatic membership and data-tree membership under global, branchwise
//! and local freshness.

use std::fmt;
use std::str::FromStr;

use crate::namedrop::name_drop;
use crate::rnta::RntaSpec;
use crate::term::{is_clean, is_non_shadowing, DataTree, Label, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemanticsKind {
    Alphatic,
    Global,
    Branchwise,
    Local,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 4] = [
        SemanticsKind::Alphatic,
        SemanticsKind::Global,
        SemanticsKind::Branchwise,
        SemanticsKind::Local,
    ];
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsKind::Alphatic => "alphatic",
            SemanticsKind::Global => "global",
            SemanticsKind::Branchwise => "branchwise",
            SemanticsKind::Local => "local",
        })
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alphatic" => Ok(SemanticsKind::Alphatic),
            "global" => Ok(SemanticsKind::Global),
            "branchwise" => Ok(SemanticsKind::Branchwise),
            "local" => Ok(SemanticsKind::Local),
            _ => Err(format!("unknown semantics `{s}` (expected alphatic, global, branchwise or local)")),
        }
    }
}

/// Default node limit for global and branchwise membership.
pub const DEFAULT_MAX_NODES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("data tree has {nodes} nodes, more than the limit of {limit}")]
    TooManyNodes { nodes: usize, limit: usize },
    #[error("alphatic membership takes a term, not a data tree")]
    NotDataSemantics,
}

/// Membership tester that keeps the name-dropped automaton around.
#[derive(Clone, Debug)]
pub struct Recognizer {
    dropped: RntaSpec,
    max_nodes: usize,
}

impl Recognizer {
    pub fn new(a: &RntaSpec) -> Self {
        let dropped = if a.is_dropped() {
            a.clone()
        } else {
            name_drop(a).expect("plain automaton")
        };
        Recognizer {
            dropped,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn dropped(&self) -> &RntaSpec {
        &self.dropped
    }

    /// Is the α-class of `t` accepted?
    pub fn alphatic(&self, t: &Term) -> bool {
        self.dropped.accepts(t)
    }

    pub fn data(&self, s: &DataTree, kind: SemanticsKind) -> Result<bool, SemanticsError> {
        match kind {
            SemanticsKind::Alphatic => Err(SemanticsError::NotDataSemantics),
            SemanticsKind::Local => Ok(self.dropped.accepts_flattened(s.as_term())),
            SemanticsKind::Global | SemanticsKind::Branchwise => {
                let nodes = s.as_term().size();
                if nodes > self.max_nodes {
                    return Err(SemanticsError::TooManyNodes {
                        nodes,
                        limit: self.max_nodes,
                    });
                }
                let admissible = if kind == SemanticsKind::Global {
                    is_clean
                } else {
                    is_non_shadowing
                };
                Ok(annotations(s).any(|t| admissible(&t) && self.alphatic(&t)))
            }
        }
    }
}

pub fn member_alphatic(a: &RntaSpec, t: &Term) -> bool {
    Recognizer::new(a).alphatic(t)
}

pub fn member_data(a: &RntaSpec, s: &DataTree, kind: SemanticsKind) -> Result<bool, SemanticsError> {
    Recognizer::new(a).data(s, kind)
}

/// All `2^n` ways of turning some nodes of `s` into binders.
pub fn annotations(s: &DataTree) -> impl Iterator<Item = Term> + '_ {
    let n = s.as_term().size();
    assert!(n < 64, "too many nodes to annotate");
    (0u64..1 << n).map(move |mask| {
        let mut i = 0;
        annotate(s.as_term(), mask, &mut i)
    })
}

fn annotate(t: &Term, mask: u64, i: &mut usize) -> Term {
    let bound = mask & (1 << *i) != 0;
    *i += 1;
    let a = t.label.name();
    Term {
        label: if bound && !a.is_dummy() { Label::Bound(a) } else { Label::Free(a) },
        symbol: t.symbol,
        children: t.children.iter().map(|c| annotate(c, mask, i)).collect(),
    }
}
