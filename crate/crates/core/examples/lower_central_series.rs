// Lower central series membership, weights and multilinear coefficients.
//
// Run with `cargo run --example lower_central_series`.

use commutator_calculus::{in_gamma, lcs_weight, multilinear_coefficient, parse, parse_expr, Budget, Generator};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let c = parse("[x1,x2]")?.into_word();
    for k in 1..=3 {
        println!("[x1,x2] in gamma_{k}: {}", in_gamma(&c, k, &budget)?);
    }

    for text in ["x1", "[x1,x2]", "[[x1,x2],x3]", "[[x1,x2],[x3,x4]]", "x1*x2*x1^-1*x2^-1*x1"] {
        let w = parse(text)?.into_word();
        println!("weight of {text}: {}", lcs_weight(&w, 6, &budget)?);
    }

    let e = parse_expr("[[x1,x2],[x3,x4]]")?;
    let w = e.flatten();
    let leaf_order = e.leaves();
    let reversed: Vec<Generator> = leaf_order.iter().rev().copied().collect();
    println!(
        "coefficient of X1X2X3X4: {}, of X4X3X2X1: {}",
        multilinear_coefficient(&w, &leaf_order)?,
        multilinear_coefficient(&w, &reversed)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lower central series example");
}
