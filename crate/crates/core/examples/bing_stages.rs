// Bing meridians of the first few stages and their weights.
//
// Run with `cargo run --example bing_stages`.

use commutator_calculus::verifier::verify_meridian_weight;
use commutator_calculus::{bing_meridian, clifford_commutator, stage_alphabet, Budget, Side, StageSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=3 {
        let spec = StageSpec::stage(n)?;
        let alphabet = stage_alphabet(&spec);
        let labels: Vec<String> = alphabet.all().iter().map(|g| g.label()).collect();
        println!("stage {n}: l = {}, N = {}, generators {}", spec.l(), spec.total_generators(), labels.join(" "));
        println!("  m_A = {}", bing_meridian(&spec, Side::A));
        println!("  m_B = {}", bing_meridian(&spec, Side::B));
        let c = clifford_commutator(&spec);
        println!("  [m_A,m_B] = {c} ({} letters)", c.flatten().len());
        if n <= 2 {
            let (wa, wb) = verify_meridian_weight(&spec, &Budget::default())?;
            println!("  meridian weights: {wa}, {wb}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bing stages example");
}
