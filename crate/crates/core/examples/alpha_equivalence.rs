//! α-equivalence, clean variants and flattening to data trees.

use rnta::format::parse_term;
use rnta::term::{alpha_eq, clean_variant, denu, free_names, is_clean, is_non_shadowing};

fn main() {
    let t = parse_term("nu a. f(a.k, nu a. f(a.k, a.k))", None).unwrap();
    let s = parse_term("nu b. f(b.k, nu c. f(c.k, c.k))", None).unwrap();
    let u = parse_term("nu b. f(b.k, nu c. f(b.k, c.k))", None).unwrap();
    println!("t = {t}");
    println!("s = {s}");
    println!("u = {u}");
    println!("t =α s: {}", alpha_eq(&t, &s));
    println!("t =α u: {}", alpha_eq(&t, &u));
    println!("t non-shadowing: {}, clean: {}", is_non_shadowing(&t), is_clean(&t));
    let c = clean_variant(&t);
    println!("clean variant of t: {c}");
    println!("flattened: {}", denu(&c).as_term());
    let open = parse_term("nu a. f(a.k, b.k)", None).unwrap();
    println!("free names of {open}: {:?}", free_names(&open).iter().map(|n| n.to_string()).collect::<Vec<_>>());
}
