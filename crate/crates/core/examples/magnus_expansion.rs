// Magnus expansions in truncated non-commutative integer series.
//
// Run with `cargo run --example magnus_expansion`.

use commutator_calculus::series::bare_var_name;
use commutator_calculus::{magnus_expand, parse, Budget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    for (text, deg) in [("x1", 3), ("x1^-1", 3), ("[x1,x2]", 3), ("[[x1,x2],x3]", 3)] {
        let w = parse(text)?.into_word();
        let s = magnus_expand(&w, deg, &budget)?;
        println!("M({text}) mod deg > {deg}:\n  {}", s.to_text_with(bare_var_name));
    }

    // Sided generators print with their side.
    let w = parse("[xA1,xB1]")?.into_word();
    let s = magnus_expand(&w, 2, &budget)?;
    println!("M([xA1,xB1]) = {s}");
    println!("as JSON: {}", serde_json::to_string(&s.to_json_terms())?);

    // The expansion is multiplicative.
    let u = parse("x1*x2^2")?.into_word();
    let v = parse("x2^-1*x3")?.into_word();
    let lhs = magnus_expand(&u.multiply(&v), 4, &budget)?;
    let rhs = magnus_expand(&u, 4, &budget)?.mul(&magnus_expand(&v, 4, &budget)?)?;
    assert_eq!(lhs, rhs);
    println!("M(uv) = M(u) M(v) holds at degree 4 ({} terms)", lhs.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("magnus expansion example");
}
