// Lie polynomials, Lyndon bases and Witt ranks, and their agreement with the
// Magnus expansion.
//
// Run with `cargo run --example lie_cross_check`.

use commutator_calculus::lie::lyndon_words;
use commutator_calculus::series::bare_var_name;
use commutator_calculus::{cross_check_lie, lie_expand, lyndon_basis, parse_expr, witt_rank, Budget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = parse_expr("[[x1,x2],x3]")?;
    let p = lie_expand(&e);
    println!("lie_expand({e}) = {}", p.series().to_text_with(bare_var_name));
    println!("magnus agreement: {}", cross_check_lie(&e, &Budget::default())?);

    for k in 1..=5u32 {
        let words = lyndon_words(2, k as usize);
        println!("N = 2, k = {k}: witt rank {}, {} Lyndon words", witt_rank(2, k), words.len());
    }
    for b in lyndon_basis(2, 4) {
        println!("  {b}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lie cross-check example");
}
