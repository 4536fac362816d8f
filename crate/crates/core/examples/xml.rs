//! Well-nested documents: every element is closed by a matching end tag.

use rnta::corpus;
use rnta::format::parse_data_tree;
use rnta::semantics::{member_data, SemanticsKind};

fn main() {
    let xml = corpus::get("xml").unwrap();
    let doc = corpus::xml_data_tree();
    println!("document: {}", doc.as_term());
    println!("local: {}", member_data(&xml, &doc, SemanticsKind::Local).unwrap());

    // an element closed with the wrong name
    let bad = parse_data_tree("a.!elem(b.#data(b.eof), eof)", Some(xml.signature())).unwrap();
    println!("{}: {}", bad.as_term(), member_data(&xml, &bad, SemanticsKind::Local).unwrap());
    let good = parse_data_tree("a.!elem(b.#data(a.eof), eof)", Some(xml.signature())).unwrap();
    println!("{}: {}", good.as_term(), member_data(&xml, &good, SemanticsKind::Local).unwrap());
}
