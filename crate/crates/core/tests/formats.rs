mod common;

use common::*;
use proptest::prelude::*;

use rnta::corpus;
use rnta::format::{parse_automaton, parse_data_tree, parse_term, print_automaton, print_term, FormatError};
use rnta::namedrop::name_drop;

#[test]
fn bundled_files_are_fixpoints_of_print_and_parse() {
    for ex in corpus::EXAMPLES {
        let a = parse_automaton(ex.source).unwrap_or_else(|e| panic!("{}: {e}", ex.name));
        let printed = print_automaton(&a);
        let back = parse_automaton(&printed).unwrap();
        assert_eq!(back, a, "{}", ex.name);
        assert_eq!(print_automaton(&back), printed, "{}", ex.name);
        // dropped automata round-trip too
        let d = name_drop(&a).unwrap();
        assert_eq!(parse_automaton(&print_automaton(&d)).unwrap(), d, "{} dropped", ex.name);
        // and so do the witness terms
        let t = parse_term(ex.accepted, Some(a.signature())).unwrap();
        assert_eq!(parse_term(&print_term(&t), Some(a.signature())).unwrap(), t);
    }
}

#[test]
fn universal_parses_and_validates() {
    let a = parse_automaton(corpus::EXAMPLES[0].source).unwrap();
    assert_eq!((a.orbits().len(), a.rules().len(), a.degree()), (1, 2, 0));
}

#[test]
fn unknown_symbol_error_names_it() {
    let text = corpus::EXAMPLES[0].source.replace("bound k", "bound zeta");
    let err = parse_automaton(&text).unwrap_err();
    assert!(err.to_string().contains("`zeta`"), "{err}");
}

#[test]
fn term_syntax_examples() {
    let sig = fk();
    let t = parse_term("nu a. f(a.k, nu b. f(b.k, b.k))", Some(&sig)).unwrap();
    assert!(t.label.is_bound() && !t.children[0].label.is_bound() && t.children[1].label.is_bound());
    assert_eq!(t.size(), 5);
    assert_eq!(print_term(&parse_term("a.k", Some(&sig)).unwrap()), "a.k");
    let err = parse_data_tree("a.f(nu b. k, b.k)", Some(&sig)).unwrap_err();
    assert!(matches!(err, FormatError::Syntax { .. }));
}

#[test]
fn k_with_an_argument_is_an_arity_error() {
    for text in ["nu a. k(x)", "nu a. k(x.k)", "nu a. k(nu b. f(b.k))"] {
        let err = parse_term(text, Some(&fk())).unwrap_err();
        assert!(err.to_string().contains("`k` expects 0 argument(s)"), "{text}: {err}");
    }
    let err = parse_term("nu a. f(a.k)", Some(&fk())).unwrap_err();
    assert!(err.to_string().contains("`f` expects 2 argument(s), found 1"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn terms_round_trip(t in arb_term(4, 5)) {
        let text = print_term(&t);
        prop_assert_eq!(parse_term(&text, Some(&fk())).unwrap(), t.clone());
        prop_assert_eq!(parse_term(&text, None).unwrap(), t);
    }
}
