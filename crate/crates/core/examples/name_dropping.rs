//! The name-dropping modification and the orbit growth it causes.

use rnta::corpus;
use rnta::format::{parse_automaton, parse_term, print_automaton};
use rnta::namedrop::name_drop;
use rnta::semantics::member_alphatic;

// Accepts every term whose labels are all binders, but keeps the root name
// in a register it never reads, which blocks rebinding it.
const CARRIED: &str = "\
sig f/2 k/0
orbit q0 0
orbit q1 1
initial q0
rule q0 bound f -> q1{1<-new}, q1{1<-new}
rule q1 bound f -> q1{1<-1}, q1{1<-1}
rule q1 bound k ->
";

fn main() {
    let a = parse_automaton(CARRIED).unwrap();
    let d = name_drop(&a).unwrap();
    print!("{}", print_automaton(&d));

    for text in ["nu a. f(nu b. f(nu c. k, nu c. k), nu b. k)", "nu a. f(nu a. f(nu b. k, nu b. k), nu b. k)"] {
        let t = parse_term(text, Some(a.signature())).unwrap();
        println!(
            "{text}: literal {}, after dropping {}, alphatic {}",
            a.accepts(&t),
            d.accepts(&t),
            member_alphatic(&a, &t)
        );
    }

    for (name, a) in corpus::all() {
        let d = name_drop(&a).unwrap();
        println!("{name:<18} degree {} orbits {} -> {}", a.degree(), a.orbits().len(), d.orbits().len());
    }
}
