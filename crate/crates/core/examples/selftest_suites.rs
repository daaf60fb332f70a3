// The seeded invariant suites behind `commcalc selftest`.
//
// Run with `cargo run --example selftest_suites -- <seed>`.

use commutator_calculus::checks;
use commutator_calculus::Budget;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let budget = Budget::default();
    let reports = [
        checks::word_laws(seed, 500),
        checks::magnus_homomorphism(seed, 100, &budget),
        checks::lie_magnus_agreement(5, &budget),
        checks::witt_lyndon(3, 5, 3, 6),
    ];
    for r in &reports {
        println!("{r}");
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err("a suite failed".into())
    }
}

#[allow(dead_code)]
fn main() {
    run_example().expect("selftest example");
}
