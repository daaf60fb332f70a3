//! Stickiness certificates.
//!
//! The Clifford torus forces `[m_A, m_B] = 1` in the complement group, whose
//! lower central quotients are those of the free group `F_N`. A certificate
//! shows that `[m_A, m_B]` has Magnus weight exactly `N = 2l`, so it survives
//! in `F_N/γ_k` for every `k > N` and the relation cannot hold.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bing::{bing_meridian, clifford_commutator, StageSpec};
use crate::lie::lie_expand;
use crate::magnus::{in_gamma, lcs_weight, magnus_expand, multilinear_coefficient, MagnusError, Weight};
use crate::series::{Budget, Monomial};
use crate::word::{BracketExpr, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error("quotient class k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("expression has repeated leaves: {0}")]
    RepeatedLeaves(String),
    #[error("unknown mode `{0}` (expected full, multilinear or both)")]
    UnknownMode(String),
}

impl VerifyError {
    /// True for resource exhaustion rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            VerifyError::Magnus(MagnusError::Series(crate::series::SeriesError::BudgetExceeded { .. }))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Multilinear,
    Both,
}

impl Mode {
    /// Full expansion up to stage 1, the multilinear scan from stage 2 on.
    pub fn default_for_stage(n: u32) -> Mode {
        if n <= 1 {
            Mode::Full
        } else {
            Mode::Multilinear
        }
    }

    fn runs_full(self) -> bool {
        matches!(self, Mode::Full | Mode::Both)
    }

    fn runs_multilinear(self) -> bool {
        matches!(self, Mode::Multilinear | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "multilinear" => Ok(Mode::Multilinear),
            "both" => Ok(Mode::Both),
            other => Err(VerifyError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Multilinear => "multilinear",
            Mode::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    StickyCertified,
    InconclusiveKTooSmall,
    Fail,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::StickyCertified => "STICKY_CERTIFIED",
            Conclusion::InconclusiveKTooSmall => "INCONCLUSIVE_K_TOO_SMALL",
            Conclusion::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossCheck {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossCheck::Pass => "pass",
            CrossCheck::Fail => "fail",
            CrossCheck::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateRequest {
    pub spec: StageSpec,
    pub k: usize,
    pub mode: Mode,
    pub budget: Budget,
}

impl CertificateRequest {
    pub fn new(spec: StageSpec, k: usize, mode: Mode) -> Self {
        CertificateRequest { spec, k, mode, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub monomial_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub stage_n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub total_generators: u32,
    pub k: usize,
    pub ambient_dimension: u32,
    pub mode: Mode,
    #[serde(rename = "k_exceeds_N")]
    pub k_exceeds_n: bool,
    pub lowest_degree_found: Option<usize>,
    #[serde(serialize_with = "decimal")]
    pub leaf_order_coeff: BigInt,
    pub lie_cross_check: CrossCheck,
    /// Membership of the commutator in `γ_k`; only decided when `k ≤ N`.
    pub in_gamma_k: Option<bool>,
    pub assumptions: Vec<String>,
    pub diagnostics: Vec<String>,
    pub conclusion: Conclusion,
    pub budgets: Budgets,
    pub timing_ms: BTreeMap<String, u64>,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// JSON with the `timing_ms` object emptied, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut c = self.clone();
        c.timing_ms.clear();
        c.to_json()
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<usize>| v.map_or("null".to_string(), |d| d.to_string());
        let mut out = String::new();
        out.push_str(&format!("conclusion: {}\n", self.conclusion));
        out.push_str(&format!(
            "stage_n: {}  l: {}  N: {}  k: {}  ambient_dimension: {}\n",
            self.stage_n, self.l, self.total_generators, self.k, self.ambient_dimension
        ));
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("k_exceeds_N: {}\n", self.k_exceeds_n));
        out.push_str(&format!("lowest_degree_found: {}\n", opt(self.lowest_degree_found)));
        out.push_str(&format!("leaf_order_coeff: {}\n", self.leaf_order_coeff));
        out.push_str(&format!("lie_cross_check: {}\n", self.lie_cross_check));
        out.push_str(&format!(
            "in_gamma_k: {}\n",
            self.in_gamma_k.map_or("null".to_string(), |b| b.to_string())
        ));
        out.push_str(&format!("monomial_cap: {}\n", self.budgets.monomial_cap));
        out.push_str("assumptions:\n");
        for a in &self.assumptions {
            out.push_str(&format!("  - {a}\n"));
        }
        if !self.diagnostics.is_empty() {
            out.push_str("diagnostics:\n");
            for d in &self.diagnostics {
                out.push_str(&format!("  - {d}\n"));
            }
        }
        let timing: Vec<String> = self.timing_ms.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("timing_ms: {}\n", timing.join(" ")));
        out
    }
}

/// Weights of the two flattened stage meridians; both should equal `l`.
pub fn verify_meridian_weight(spec: &StageSpec, budget: &Budget) -> Result<(Weight, Weight), VerifyError> {
    let k_max = spec.l() as usize + 1;
    let wa = lcs_weight(&bing_meridian(spec, Side::A).flatten(), k_max, budget)?;
    let wb = lcs_weight(&bing_meridian(spec, Side::B).flatten(), k_max, budget)?;
    Ok((wa, wb))
}

/// Compares the degree-(leaf count) part of the Magnus expansion of the
/// flattened tree with its Lie expansion.
pub fn cross_check_lie(e: &BracketExpr, budget: &Budget) -> Result<CrossCheck, VerifyError> {
    if !e.has_distinct_leaves() {
        return Err(VerifyError::RepeatedLeaves(e.to_string()));
    }
    let deg = e.leaf_count();
    let expansion = magnus_expand(&e.flatten(), deg, budget)?;
    Ok(compare_with_lie(e, &expansion, deg))
}

fn compare_with_lie(e: &BracketExpr, expansion: &crate::series::Series, deg: usize) -> CrossCheck {
    let part = expansion.homogeneous_part(deg).expect("deg is the truncation");
    if &part == lie_expand(e).series() {
        CrossCheck::Pass
    } else {
        CrossCheck::Fail
    }
}

fn assumption_lines(mode: Mode, k_exceeds_n: bool) -> Vec<String> {
    let mut out = vec![
        "Stallings: the inclusion of the wedge of meridian circles induces an isomorphism \
         pi_1(Y)/pi_1(Y)^k = F_N/(F_N)^k (H_1 isomorphism and H_2 surjection taken as topological input)"
            .to_string(),
        "the Clifford torus 2-cell imposes the relation [m_A,m_B] = 1 in pi_1 of the complement".to_string(),
        "a small ambient isotopy leaves the commutator expressions of m_A and m_B unchanged".to_string(),
        "Magnus: w lies in gamma_k(F_N) iff its expansion has no terms in degrees 1..k-1".to_string(),
    ];
    if k_exceeds_n && mode == Mode::Multilinear {
        out.push(
            "a nonzero Magnus coefficient in degree N < k witnesses that [m_A,m_B] is not in gamma_k(F_N)"
                .to_string(),
        );
    }
    out
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Builds the certificate for one stage and quotient class.
pub fn stickiness_certificate(req: &CertificateRequest) -> Result<Certificate, VerifyError> {
    certify(req, clifford_commutator(&req.spec))
}

// Runs the checks on `expr` as if it were the stage's Clifford commutator.
fn certify(req: &CertificateRequest, expr: BracketExpr) -> Result<Certificate, VerifyError> {
    if req.k < 2 {
        return Err(VerifyError::InvalidK(req.k));
    }
    let started = Instant::now();
    let spec = &req.spec;
    let n_total = spec.total_generators() as usize;
    let k_exceeds_n = req.k > n_total;
    let word = expr.flatten();
    let leaves = expr.leaves();
    let leaf_monomial = Monomial::from(leaves.iter().map(|g| g.index()).collect::<Vec<_>>());

    let mut timing = BTreeMap::new();
    let mut diagnostics = Vec::new();
    let mut lowest_degree_found = None;
    let mut lie_cross_check = CrossCheck::Skipped;
    let mut in_gamma_k = None;
    let leaf_order_coeff;
    let conclusion;

    if !k_exceeds_n {
        let t = Instant::now();
        let member = in_gamma(&word, req.k, &req.budget)?;
        timing.insert("membership".to_string(), elapsed_ms(t));
        let t = Instant::now();
        leaf_order_coeff = multilinear_coefficient(&word, &leaves)?;
        timing.insert("multilinear".to_string(), elapsed_ms(t));
        in_gamma_k = Some(member);
        conclusion = if member {
            Conclusion::InconclusiveKTooSmall
        } else {
            diagnostics.push(format!(
                "expected [m_A,m_B] in gamma_{} since its weight is N = {}, but the expansion has low-degree terms",
                req.k, n_total
            ));
            Conclusion::Fail
        };
    } else {
        let mut witnesses_hold = true;
        let mut full_coeff = None;
        if req.mode.runs_full() {
            let t = Instant::now();
            let expansion = magnus_expand(&word, n_total, &req.budget)?;
            timing.insert("full_expansion".to_string(), elapsed_ms(t));
            lowest_degree_found = expansion.min_positive_degree();
            if !expansion.coefficient(&Monomial::unit()).expect("unit fits").is_one() {
                diagnostics.push("constant term of the expansion is not 1".to_string());
                witnesses_hold = false;
            }
            if lowest_degree_found != Some(n_total) {
                diagnostics.push(format!(
                    "lowest positive degree is {:?}, expected {}",
                    lowest_degree_found, n_total
                ));
                witnesses_hold = false;
            }
            let t = Instant::now();
            lie_cross_check = compare_with_lie(&expr, &expansion, n_total);
            timing.insert("lie_cross_check".to_string(), elapsed_ms(t));
            if lie_cross_check == CrossCheck::Fail {
                diagnostics.push(format!("degree-{n_total} Magnus part differs from the Lie expansion"));
                witnesses_hold = false;
            }
            let c = expansion.coefficient(&leaf_monomial).expect("leaf monomial has degree N");
            if !c.is_one() {
                diagnostics.push(format!("full-expansion leaf-order coefficient is {c}, expected 1"));
                witnesses_hold = false;
            }
            full_coeff = Some(c);
        }
        let mut dp_coeff = None;
        if req.mode.runs_multilinear() {
            let t = Instant::now();
            let c = multilinear_coefficient(&word, &leaves)?;
            timing.insert("multilinear".to_string(), elapsed_ms(t));
            if !c.is_one() {
                diagnostics.push(format!("multilinear leaf-order coefficient is {c}, expected 1"));
                witnesses_hold = false;
            }
            dp_coeff = Some(c);
        }
        if let (Some(a), Some(b)) = (&full_coeff, &dp_coeff) {
            if a != b {
                diagnostics.push(format!("full ({a}) and multilinear ({b}) leaf-order coefficients disagree"));
                witnesses_hold = false;
            }
        }
        leaf_order_coeff = full_coeff.or(dp_coeff).unwrap_or_else(BigInt::zero);
        conclusion = if witnesses_hold { Conclusion::StickyCertified } else { Conclusion::Fail };
    }
    timing.insert("total".to_string(), elapsed_ms(started));

    Ok(Certificate {
        stage_n: spec.n(),
        l: spec.l(),
        total_generators: spec.total_generators(),
        k: req.k,
        ambient_dimension: spec.ambient_dimension(),
        mode: req.mode,
        k_exceeds_n,
        lowest_degree_found,
        leaf_order_coeff,
        lie_cross_check,
        in_gamma_k,
        assumptions: assumption_lines(req.mode, k_exceeds_n),
        diagnostics,
        conclusion,
        budgets: Budgets { monomial_cap: req.budget.monomial_cap },
        timing_ms: timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn cert(n: u32, k: usize, mode: Mode) -> Certificate {
        stickiness_certificate(&CertificateRequest::new(StageSpec::stage(n).unwrap(), k, mode)).unwrap()
    }

    #[test]
    fn stage_one_full() {
        let c = cert(1, 5, Mode::Full);
        assert_eq!(c.conclusion, Conclusion::StickyCertified);
        assert_eq!(c.lowest_degree_found, Some(4));
        assert_eq!(c.leaf_order_coeff, BigInt::one());
        assert_eq!(c.lie_cross_check, CrossCheck::Pass);
    }

    #[test]
    fn stage_one_k_too_small() {
        let c = cert(1, 4, Mode::Full);
        assert_eq!(c.conclusion, Conclusion::InconclusiveKTooSmall);
        assert_eq!(c.in_gamma_k, Some(true));
        assert_eq!(c.lie_cross_check, CrossCheck::Skipped);
    }

    #[test]
    fn stage_two_multilinear() {
        let c = cert(2, 9, Mode::Multilinear);
        assert_eq!(c.conclusion, Conclusion::StickyCertified);
        assert_eq!(c.leaf_order_coeff, BigInt::one());
        assert_eq!(c.lowest_degree_found, None);
        assert_eq!(c.assumptions.len(), 5);
    }

    #[test]
    fn stage_zero_warm_up() {
        let c = cert(0, 3, Mode::Full);
        assert_eq!(c.conclusion, Conclusion::StickyCertified);
        assert_eq!(c.lowest_degree_found, Some(2));
    }

    #[test]
    fn wrong_commutator_fails() {
        // Weight 3 instead of N = 4.
        let wrong = crate::parse::parse_expr("[[xA1,xA2],xB1]").unwrap();
        let spec = StageSpec::stage(1).unwrap();
        let below = certify(&CertificateRequest::new(spec, 4, Mode::Full), wrong.clone()).unwrap();
        assert_eq!(below.conclusion, Conclusion::Fail);
        assert_eq!(below.in_gamma_k, Some(false));
        let above = certify(&CertificateRequest::new(spec, 5, Mode::Both), wrong).unwrap();
        assert_eq!(above.conclusion, Conclusion::Fail);
        assert_eq!(above.lowest_degree_found, Some(3));
        assert!(!above.diagnostics.is_empty());
    }

    #[test]
    fn invalid_k() {
        let req = CertificateRequest::new(StageSpec::stage(1).unwrap(), 1, Mode::Full);
        assert_eq!(stickiness_certificate(&req).unwrap_err(), VerifyError::InvalidK(1));
    }

    #[test]
    fn budget_error_is_reported() {
        let mut req = CertificateRequest::new(StageSpec::stage(1).unwrap(), 5, Mode::Full);
        req.budget = Budget::new(10);
        let err = stickiness_certificate(&req).unwrap_err();
        assert!(err.is_budget(), "{err}");
    }

    #[test]
    fn meridian_weights() {
        let b = Budget::default();
        for (n, w) in [(0, 1), (1, 2), (2, 4)] {
            let spec = StageSpec::stage(n).unwrap();
            assert_eq!(verify_meridian_weight(&spec, &b).unwrap(), (Weight::Exact(w), Weight::Exact(w)));
        }
    }

    #[test]
    fn cross_check_examples() {
        let b = Budget::default();
        for text in ["[x1,x2]", "[[x1,x2],x3]", "[[x1,x2],[x3,x4]]"] {
            assert_eq!(cross_check_lie(&parse_expr(text).unwrap(), &b).unwrap(), CrossCheck::Pass);
        }
        assert!(matches!(
            cross_check_lie(&parse_expr("[x1,x1]").unwrap(), &b),
            Err(VerifyError::RepeatedLeaves(_))
        ));
    }

    #[test]
    fn json_schema_fields() {
        let c = cert(1, 5, Mode::Both);
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        for key in [
            "stage_n", "l", "N", "k", "ambient_dimension", "mode", "k_exceeds_N",
            "lowest_degree_found", "leaf_order_coeff", "lie_cross_check", "assumptions",
            "conclusion", "budgets", "timing_ms",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["leaf_order_coeff"], "1");
        assert_eq!(v["conclusion"], "STICKY_CERTIFIED");
        assert_eq!(v["mode"], "both");
        assert_eq!(v["budgets"]["monomial_cap"], 10_000_000);
    }
}
