//! Regular nominal tree automata over terms with name binding.

pub mod corpus;
pub mod format;
pub mod inclusion;
pub mod namedrop;
pub mod nfta;
pub mod nominal;
pub mod oracle;
pub mod rnta;
pub mod semantics;
pub mod term;
