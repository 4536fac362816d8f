//! One automaton read under global, branchwise and local freshness.

use rnta::format::{parse_automaton, parse_data_tree};
use rnta::semantics::{Recognizer, SemanticsKind};

// The α-class of nu a. f(nu b. f(a.k, b.k), nu b. f(b.k, b.k)).
const SPEC: &str = "\
sig f/2 k/0
orbit top 0
orbit left 1
orbit right 0
orbit var 1
initial top
rule top bound f -> left{1<-new}, right{}
rule left bound f -> var{1<-1}, var{1<-new}
rule right bound f -> var{1<-new}, var{1<-new}
rule var free 1 k ->
";

fn main() {
    let a = parse_automaton(SPEC).unwrap();
    let r = Recognizer::new(&a);
    println!("data tree                        global branchwise local");
    for (x, y, z) in [("a", "b", "c"), ("a", "b", "b"), ("a", "b", "a"), ("a", "a", "b")] {
        let text = format!("{x}.f({y}.f({x}.k, {y}.k), {z}.f({z}.k, {z}.k))");
        let s = parse_data_tree(&text, Some(a.signature())).unwrap();
        let [g, b, l] = [SemanticsKind::Global, SemanticsKind::Branchwise, SemanticsKind::Local].map(|k| r.data(&s, k).unwrap());
        println!("{text:<32} {g:<6} {b:<10} {l}");
    }
}
