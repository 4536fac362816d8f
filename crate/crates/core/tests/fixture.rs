mod common;

use common::*;
use rnta::format::parse_term;
use rnta::oracle::brute_language;
use rnta::term::alpha_eq;

#[test]
fn singleton_fixture_accepts_exactly_one_class() {
    let t = parse_term("nu a. f(nu b. f(a.k, b.k), nu b. f(b.k, b.k))", Some(&fk())).unwrap();
    let a = singleton(&t, &fk());
    let lang = brute_language(&a, &pool(3), 3);
    assert!(!lang.is_empty());
    assert!(lang.iter().all(|u| alpha_eq(u, &t)));
    assert!(lang.contains(&t));
}
