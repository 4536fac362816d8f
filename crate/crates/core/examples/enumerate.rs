//! Counting terms and α-classes of small height.

use rnta::format::parse_signature;
use rnta::nominal::standard_names;
use rnta::oracle::{closed_classes, enum_terms};

fn main() {
    let sig = parse_signature("sig f/2 k/0").unwrap();
    for n in 1..=3 {
        let names = standard_names(n).into_iter().collect();
        let counts: Vec<usize> = (1..=3).map(|d| enum_terms(&sig, &names, d).count()).collect();
        println!("{n} name(s): terms up to height 1..3: {counts:?}");
    }
    let classes = closed_classes(&sig, 3, false);
    println!("closed α-classes up to height 3: {}", classes.len());
}
