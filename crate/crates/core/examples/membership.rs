//! Alphatic membership for the bundled automata.

use rnta::corpus;
use rnta::format::parse_term;
use rnta::semantics::member_alphatic;

fn main() {
    for ex in corpus::EXAMPLES {
        let a = ex.automaton();
        let t = ex.accepted_term();
        println!("{:<18} accepts {t}: {}", ex.name, member_alphatic(&a, &t));
    }

    // α-invariance: renaming the binders changes nothing
    let a = corpus::get("root_reappears").unwrap();
    for text in ["nu a. f(a.k, a.k)", "nu z. f(z.k, z.k)", "nu a. f(a.k, b.k)", "nu a. f(nu b. f(a.k, a.k), a.k)"] {
        let t = parse_term(text, Some(a.signature())).unwrap();
        println!("root_reappears on {text}: {}", member_alphatic(&a, &t));
    }
}
