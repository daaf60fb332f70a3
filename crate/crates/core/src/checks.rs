//! Seeded invariant suites over random words and exhaustive bracket shapes.
//!
//! These back the `selftest` subcommand and the acceptance tests. All random
//! input comes from `ChaCha8Rng`, so a seed reproduces a run exactly.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bing::{bing_meridian, clifford_commutator, StageSpec};
use crate::lie::{lyndon_basis, necklace_sum, witt_rank};
use crate::magnus::magnus_expand;
use crate::parse::{parse_expr, serialize_expr};
use crate::series::Budget;
use crate::verifier::{cross_check_lie, CrossCheck};
use crate::word::{BracketExpr, Generator, Letter, Side, Word};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} cases, {} failures", self.name, self.cases, self.failures)?;
        if let Some(first) = &self.first_failure {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random letter sequence over `x1..x{n_gens}`, freely reduced afterwards.
pub fn random_word<R: Rng>(rng: &mut R, n_gens: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::reduce((0..len).map(|_| {
        let g = Generator::a(rng.gen_range(1..=n_gens));
        if rng.gen_bool(0.5) {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    }))
}

pub fn random_letters<R: Rng>(rng: &mut R, n_gens: u32, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = Generator::a(rng.gen_range(1..=n_gens));
            if rng.gen_bool(0.5) {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            }
        })
        .collect()
}

/// Every binary bracket shape with `leaves` leaves, labelled `x1..x{leaves}`
/// left to right. There are Catalan(leaves - 1) of them.
pub fn all_bracket_shapes(leaves: usize) -> Vec<BracketExpr> {
    shapes(1, leaves)
}

fn shapes(first: u32, count: usize) -> Vec<BracketExpr> {
    if count == 1 {
        return vec![BracketExpr::leaf(Generator::a(first))];
    }
    let mut out = Vec::new();
    for left in 1..count {
        let ls = shapes(first, left);
        let rs = shapes(first + left as u32, count - left);
        for l in &ls {
            for r in &rs {
                out.push(BracketExpr::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Homomorphism and inverse laws of the Magnus expansion on random pairs.
pub fn magnus_homomorphism(seed: u64, pairs: usize, budget: &Budget) -> SuiteReport {
    let mut report = SuiteReport::new("magnus homomorphism");
    let mut rng = rng(seed);
    for _ in 0..pairs {
        let n = rng.gen_range(1..=4);
        let d = rng.gen_range(0..=6);
        let u = random_word(&mut rng, n, 16);
        let v = random_word(&mut rng, n, 16);
        let ok = (|| -> Result<bool, crate::magnus::MagnusError> {
            let mu = magnus_expand(&u, d, budget)?;
            let mv = magnus_expand(&v, d, budget)?;
            let muv = magnus_expand(&u.multiply(&v), d, budget)?;
            let mui = magnus_expand(&u.invert(), d, budget)?;
            Ok(muv == mu.mul_with_budget(&mv, budget)?
                && mu.mul_with_budget(&mui, budget)?.is_one()
                && mui.mul_with_budget(&mu, budget)?.is_one())
        })()
        .unwrap_or(false);
        report.record(ok, || format!("u = {u}, v = {v}, D = {d}"));
    }
    report
}

/// Reduction idempotence, associativity, identity and inverse laws.
pub fn word_laws(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("word algebra laws");
    let mut rng = rng(seed);
    for _ in 0..count {
        let raw = random_letters(&mut rng, 4, 24);
        let once = Word::reduce(raw.iter().copied());
        let twice = Word::reduce(once.letters().iter().copied());
        let a = random_word(&mut rng, 4, 12);
        let b = random_word(&mut rng, 4, 12);
        let c = random_word(&mut rng, 4, 12);
        let id = Word::identity();
        let ok = once == twice
            && a.multiply(&b).multiply(&c) == a.multiply(&b.multiply(&c))
            && id.multiply(&a) == a
            && a.multiply(&id) == a
            && a.multiply(&a.invert()).is_identity()
            && a.invert().multiply(&a).is_identity()
            && a.invert().invert() == a;
        report.record(ok, || format!("a = {a}, b = {b}, c = {c}"));
    }
    report
}

/// Parse/serialize round trip of every meridian and Clifford commutator up to
/// `max_stage`.
pub fn stage_round_trip(max_stage: u32) -> SuiteReport {
    let mut report = SuiteReport::new("stage expression round trip");
    for n in 0..=max_stage {
        let spec = StageSpec::stage(n).expect("small stage");
        for e in [
            bing_meridian(&spec, Side::A),
            bing_meridian(&spec, Side::B),
            clifford_commutator(&spec),
        ] {
            let text = serialize_expr(&e);
            let ok = parse_expr(&text).as_ref() == Ok(&e);
            report.record(ok, || text.clone());
        }
    }
    report
}

/// Lie expansion against the Magnus expansion for every bracket shape with
/// `1..=max_leaves` distinct leaves.
pub fn lie_magnus_agreement(max_leaves: usize, budget: &Budget) -> SuiteReport {
    let mut report = SuiteReport::new("lie/magnus agreement");
    for leaves in 1..=max_leaves {
        let shapes = all_bracket_shapes(leaves);
        let results: Vec<(String, bool)> = shapes
            .par_iter()
            .map(|e| (e.to_string(), cross_check_lie(e, budget).ok() == Some(CrossCheck::Pass)))
            .collect();
        for (text, ok) in results {
            report.record(ok, || text);
        }
    }
    report
}

/// Lyndon basis sizes against Witt ranks, and the necklace identity.
pub fn witt_lyndon(max_gens_basis: u32, max_k_basis: usize, max_gens_necklace: u32, max_k_necklace: u32) -> SuiteReport {
    let mut report = SuiteReport::new("witt/lyndon consistency");
    for n in 1..=max_gens_basis {
        for k in 1..=max_k_basis {
            let basis = lyndon_basis(n, k);
            let ok = BigUint::from(basis.len()) == witt_rank(n, k as u32);
            report.record(ok, || format!("|lyndon_basis({n},{k})| = {}", basis.len()));
        }
    }
    for n in 1..=max_gens_necklace {
        for k in 1..=max_k_necklace {
            let ok = necklace_sum(n, k) == BigUint::from(n).pow(k);
            report.record(ok, || format!("necklace identity at N = {n}, k = {k}"));
        }
    }
    report
}

/// Quick versions of every suite, as run by `commcalc selftest`.
pub fn run_all(seed: u64, budget: &Budget) -> Vec<SuiteReport> {
    vec![
        word_laws(seed, 1000),
        stage_round_trip(4),
        magnus_homomorphism(seed, 200, budget),
        lie_magnus_agreement(6, budget),
        witt_lyndon(3, 6, 4, 8),
    ]
}
