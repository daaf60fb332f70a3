//! Commutator calculus in free groups.
//!
//! Builds the iterated-commutator meridians of Bing-doubled sphere
//! collections, expands words in the Magnus ring of truncated non-commutative
//! integer series, decides lower central series membership, and assembles
//! certificates that `[m_A, m_B]` survives in `F_N/γ_k(F_N)` for `k > N`.
//!
//! Runnable tours of each capability live in this crate's `examples/`
//! directory; `commcalc` is the command-line front end.

pub mod bing;
pub mod checks;
pub mod cli;
pub mod lie;
pub mod magnus;
pub mod parse;
pub mod series;
pub mod verifier;
pub mod word;

pub use bing::{bing_meridian, clifford_commutator, stage_alphabet, Alphabet, StageSpec};
pub use lie::{leaf_order_coefficient, lie_expand, lyndon_basis, witt_rank, LiePoly};
pub use magnus::{in_gamma, lcs_weight, magnus_expand, multilinear_coefficient, Weight};
pub use parse::{parse, parse_expr, parse_word, serialize_expr, Parsed};
pub use series::{Budget, Monomial, Series};
pub use verifier::{
    cross_check_lie, stickiness_certificate, verify_meridian_weight, Certificate, CertificateRequest,
    Conclusion, CrossCheck, Mode,
};
pub use word::{BracketExpr, Generator, Letter, Side, Sign, Word};
