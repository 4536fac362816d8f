//! Language inclusion under all four semantics.

use rnta::corpus;
use rnta::inclusion::{include, Inclusion};
use rnta::semantics::SemanticsKind;

fn main() {
    let pairs = [("some_letter_twice", "universal"), ("universal", "some_letter_twice"), ("root_reappears", "universal")];
    for (l, r) in pairs {
        let (a, b) = (corpus::get(l).unwrap(), corpus::get(r).unwrap());
        for kind in SemanticsKind::ALL {
            match include(&a, &b, kind).unwrap() {
                Inclusion::Holds => println!("{l} <= {r} under {kind}: holds"),
                Inclusion::Counterexample(w) => {
                    let data = w.data_tree.map(|s| format!(" (data tree {})", s.as_term())).unwrap_or_default();
                    println!("{l} <= {r} under {kind}: fails on {}{data}", w.term);
                }
            }
        }
    }
}
