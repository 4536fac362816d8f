//! Processes that read on fresh channels, in the style of the π-calculus.

use rnta::corpus;
use rnta::format::parse_term;
use rnta::semantics::member_alphatic;

fn main() {
    let pi = corpus::get("pi_calculus").unwrap();
    let terms = [
        "par(nu a. ch(nu b. rw(b.ch(nu c. rw(0)))), nu a. ch(nu b. rw(0)))",
        "nu a. ch(nu b. rw(b.ch(nu c. rw(c.ch(nu d. rw(0))))))",
        // continues on a channel it did not read
        "nu a. ch(nu b. rw(a.ch(nu c. rw(0))))",
    ];
    for text in terms {
        let t = parse_term(text, Some(pi.signature())).unwrap();
        println!("{}: {text}", if member_alphatic(&pi, &t) { "accept" } else { "reject" });
    }
}
