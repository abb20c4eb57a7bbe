//! Parse surface syntax and show what the sugar expands to: `let`,
//! `let rec`, pattern lambdas, wildcard binders, and general pair
//! expressions all disappear before the engine ever runs.
//!
//! Run with: cargo run --example parse_and_desugar

use skc::{parse_term, pretty};

fn main() {
    let snippets = [
        "let x = () in x",
        "let rec loop = \\x.loop x in loop",
        "\\(key,value).key",
        "(f (), True)",
        "let _ = async (h () x) in ()",
        "callHandler (my-handler)",
        "if check status then push (compose_msg x) else ()",
    ];
    for src in snippets {
        let term = parse_term(src).expect("snippet parses");
        println!("{src}");
        println!("  => {}", pretty::term(&term));
        println!();
    }
}
