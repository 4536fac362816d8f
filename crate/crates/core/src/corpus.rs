//! The bundled example automata and their witness terms.

use crate::format::{parse_automaton, parse_data_tree, parse_term};
use crate::rnta::RntaSpec;
use crate::term::{DataTree, Term};

pub struct Example {
    pub name: &'static str,
    pub source: &'static str,
    /// A term the automaton accepts literally.
    pub accepted: &'static str,
}

pub const EXAMPLES: [Example; 5] = [
    Example {
        name: "universal",
        source: include_str!("../corpus/universal.rnta"),
        accepted: include_str!("../corpus/universal.accept.term"),
    },
    Example {
        name: "root_reappears",
        source: include_str!("../corpus/root_reappears.rnta"),
        accepted: include_str!("../corpus/root_reappears.accept.term"),
    },
    Example {
        name: "some_letter_twice",
        source: include_str!("../corpus/some_letter_twice.rnta"),
        accepted: include_str!("../corpus/some_letter_twice.accept.term"),
    },
    Example {
        name: "xml",
        source: include_str!("../corpus/xml.rnta"),
        accepted: include_str!("../corpus/xml.accept.term"),
    },
    Example {
        name: "pi_calculus",
        source: include_str!("../corpus/pi_calculus.rnta"),
        accepted: include_str!("../corpus/pi_calculus.accept.term"),
    },
];

/// A term rejected by `some_letter_twice`.
pub const SOME_LETTER_TWICE_REJECTED: &str = include_str!("../corpus/some_letter_twice.reject.term");

/// The data tree underlying the accepted `xml` term.
pub const XML_DATA_TREE: &str = include_str!("../corpus/xml.local.tree");

impl Example {
    pub fn automaton(&self) -> RntaSpec {
        parse_automaton(self.source).unwrap_or_else(|e| panic!("bundled {}: {e}", self.name))
    }

    pub fn accepted_term(&self) -> Term {
        let a = self.automaton();
        parse_term(self.accepted, Some(a.signature())).unwrap_or_else(|e| panic!("bundled {}: {e}", self.name))
    }
}

pub fn get(name: &str) -> Option<RntaSpec> {
    EXAMPLES.iter().find(|e| e.name == name).map(Example::automaton)
}

/// All bundled automata, by name.
pub fn all() -> Vec<(&'static str, RntaSpec)> {
    EXAMPLES.iter().map(|e| (e.name, e.automaton())).collect()
}

pub fn xml_data_tree() -> DataTree {
    parse_data_tree(XML_DATA_TREE, None).expect("bundled data tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::print_automaton;

    #[test]
    fn bundled_automata_parse_and_accept_their_witnesses() {
        for e in &EXAMPLES {
            let a = e.automaton();
            assert!(a.accepts(&e.accepted_term()), "{}", e.name);
            let printed = print_automaton(&a);
            assert_eq!(parse_automaton(&printed).unwrap(), a, "{}", e.name);
        }
    }

    #[test]
    fn some_letter_twice_rejects_a_single_binder() {
        let a = get("some_letter_twice").unwrap();
        let t = parse_term(SOME_LETTER_TWICE_REJECTED, Some(a.signature())).unwrap();
        assert!(!a.accepts(&t));
    }
}
