//! Restricting an automaton to finitely many names and deciding inclusion
//! of the resulting finite tree automata.

use rnta::corpus;
use rnta::inclusion::restriction_set;
use rnta::nfta::{down_close, nfta_inclusion, restrict, NftaInclusion};

fn main() {
    let twice = corpus::get("some_letter_twice").unwrap();
    let universal = corpus::get("universal").unwrap();
    let names = restriction_set(&twice);
    println!("names: {:?}", names.iter().map(|n| n.to_string()).collect::<Vec<_>>());

    let n = restrict(&twice, &names).unwrap();
    println!("{} states, {} rules", n.num_states(), n.rules.len());
    print!("{n}");

    let closed = down_close(&restrict(&universal, &names).unwrap());
    match nfta_inclusion(&n, &closed) {
        NftaInclusion::Holds => println!("included in the closed universal automaton"),
        NftaInclusion::Counterexample(t) => println!("not included: {t}"),
    }
    match nfta_inclusion(&closed, &down_close(&n)) {
        NftaInclusion::Holds => println!("reverse inclusion holds"),
        NftaInclusion::Counterexample(t) => println!("reverse inclusion fails on {t}"),
    }
}
