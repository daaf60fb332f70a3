// Stickiness certificates for the first Bing stages.
//
// Run with `cargo run --example stickiness_certificate`.

use commutator_calculus::{stickiness_certificate, CertificateRequest, Conclusion, Mode, StageSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=2u32 {
        let spec = StageSpec::stage(n)?;
        let big_n = spec.total_generators() as usize;
        for k in [big_n, big_n + 1] {
            let cert = stickiness_certificate(&CertificateRequest::new(spec, k, Mode::default_for_stage(n)))?;
            println!("stage {n}, k = {k}: {}", cert.conclusion);
            assert_ne!(cert.conclusion, Conclusion::Fail);
        }
    }

    // Both routes at stage 1, with the full report.
    let cert = stickiness_certificate(&CertificateRequest::new(StageSpec::stage(1)?, 5, Mode::Both))?;
    print!("{}", cert.to_text());
    println!("{}", cert.to_json_without_timing());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("stickiness certificate example");
}
