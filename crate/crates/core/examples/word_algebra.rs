// Free-group words: parsing, free reduction, products and commutators.
//
// Run with `cargo run --example word_algebra`.

use commutator_calculus::{parse, parse_word, BracketExpr, Generator, Word};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u = parse_word("x1 * x2 * x2^-1 * x1")?;
    println!("x1*x2*x2^-1*x1 reduces to {u}");

    let a = parse_word("x1*x2")?;
    let b = parse_word("x2^-1*x3")?;
    println!("({a}) * ({b}) = {}", a.multiply(&b));
    println!("inverse of {a} is {}", a.invert());

    let x1 = Word::generator(Generator::a(1));
    let x2 = Word::generator(Generator::a(2));
    let c = x1.commutator(&x2);
    println!("[x1,x2] = {c} ({} letters)", c.len());
    assert_eq!(c.len(), 4);

    let tree = parse("[[xA1,xA2],[xB1,xB2]]")?;
    let flat = tree.into_word();
    println!("[[xA1,xA2],[xB1,xB2]] flattens to {} letters", flat.len());
    for g in flat.generators() {
        println!("  exponent sum of {g}: {}", flat.exponent_sum(g));
    }

    let nested = BracketExpr::node(
        BracketExpr::node(BracketExpr::leaf(Generator::a(1)), BracketExpr::leaf(Generator::a(2))),
        BracketExpr::leaf(Generator::a(3)),
    );
    println!("{nested} has depth {} and flattens to {}", nested.depth(), nested.flatten());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("word algebra example");
}
