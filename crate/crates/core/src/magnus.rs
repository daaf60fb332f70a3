//! The Magnus embedding `x ↦ 1 + X` of the free group into truncated
//! power series, and the lower central series tests built on it.
//!
//! A word lies in the k-th term of the lower central series exactly when its
//! expansion has no terms in degrees `1..k`. That criterion is the classical
//! Magnus theorem; it is assumed here, and cross-checked against the free Lie
//! algebra computations in [`crate::lie`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{Budget, Series, SeriesError};
use crate::word::{Generator, Letter, Sign, Word};

// Segments at most this long are expanded letter by letter.
const LEAF_SEGMENT: usize = 8;
// Halves longer than this are expanded on separate rayon tasks.
const PAR_SEGMENT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("target index {0} is repeated")]
    RepeatedIndex(Generator),
    #[error("lower central series class must be at least 1, got {0}")]
    InvalidClass(usize),
}

/// Lower-central-series weight of a word, as far as a query could see.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(k) => write!(f, "{k}"),
            Weight::AtLeast(k) => write!(f, "at_least({k})"),
        }
    }
}

/// Image of a single letter: `1 + X` or the truncated `1 - X + X² - …`.
pub fn letter_series(letter: Letter, truncation: usize) -> Series {
    let budget = Budget::default();
    let one = Series::one(truncation);
    let index = letter.generator.index();
    match letter.sign {
        Sign::Plus => one.mul_one_plus_var(index, &budget),
        Sign::Minus => one.mul_one_plus_var_inverse(index, &budget),
    }
    .expect("a single letter series has at most truncation + 1 terms")
}

/// Magnus expansion of `w` truncated above degree `truncation`.
pub fn magnus_expand(w: &Word, truncation: usize, budget: &Budget) -> Result<Series, MagnusError> {
    Ok(expand_segment(w.letters(), truncation, budget)?)
}

// Balanced product tree. For iterated commutators the split points fall on
// commutator boundaries, where the partial products stay small.
fn expand_segment(letters: &[Letter], truncation: usize, budget: &Budget) -> Result<Series, SeriesError> {
    if letters.len() <= LEAF_SEGMENT {
        let mut acc = Series::one(truncation);
        for letter in letters {
            let index = letter.generator.index();
            acc = match letter.sign {
                Sign::Plus => acc.mul_one_plus_var(index, budget)?,
                Sign::Minus => acc.mul_one_plus_var_inverse(index, budget)?,
            };
        }
        return Ok(acc);
    }
    let (left, right) = letters.split_at(letters.len() / 2);
    let (a, b) = if letters.len() > PAR_SEGMENT {
        rayon::join(
            || expand_segment(left, truncation, budget),
            || expand_segment(right, truncation, budget),
        )
    } else {
        (
            expand_segment(left, truncation, budget),
            expand_segment(right, truncation, budget),
        )
    };
    a?.mul_with_budget(&b?, budget)
}

/// Membership of `w` in the k-th lower central subgroup, decided at truncation
/// `k - 1`.
pub fn in_gamma(w: &Word, k: usize, budget: &Budget) -> Result<bool, MagnusError> {
    match k {
        0 => Err(MagnusError::InvalidClass(0)),
        1 => Ok(true),
        _ => Ok(magnus_expand(w, k - 1, budget)?.is_one()),
    }
}

/// The weight of `w` when it is below `k_max`, read off as the lowest
/// positive degree of the expansion at truncation `k_max`.
pub fn lcs_weight(w: &Word, k_max: usize, budget: &Budget) -> Result<Weight, MagnusError> {
    if k_max == 0 {
        return Err(MagnusError::InvalidClass(0));
    }
    let s = magnus_expand(w, k_max, budget)?;
    Ok(match s.min_positive_degree() {
        Some(d) if d < k_max => Weight::Exact(d),
        _ => Weight::AtLeast(k_max),
    })
}

/// Coefficient of `X_{i1}…X_{id}` (distinct indices) in the full Magnus
/// expansion of `w`, without building any series.
///
/// With distinct target indices only the linear term of each letter's factor
/// can contribute, so a left-to-right scan over states `0..=d` suffices: a
/// letter on generator `i_{j+1}` moves weight from state `j` to `j+1`,
/// multiplied by its sign.
pub fn multilinear_coefficient(w: &Word, target: &[Generator]) -> Result<BigInt, MagnusError> {
    for (i, g) in target.iter().enumerate() {
        if target[..i].contains(g) {
            return Err(MagnusError::RepeatedIndex(*g));
        }
    }
    let d = target.len();
    let mut states = vec![BigInt::zero(); d + 1];
    states[0] = BigInt::from(1);
    for letter in w.letters() {
        // Distinct targets: at most one state transition per letter.
        if let Some(j) = target.iter().position(|g| *g == letter.generator) {
            if states[j].is_zero() {
                continue;
            }
            let moved = states[j].clone();
            match letter.sign {
                Sign::Plus => states[j + 1] += moved,
                Sign::Minus => states[j + 1] -= moved,
            }
        }
    }
    Ok(states.pop().expect("states has d + 1 entries"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Monomial;
    use crate::word::BracketExpr;

    fn x(i: u32) -> Generator {
        Generator::a(i)
    }

    fn br(a: BracketExpr, b: BracketExpr) -> BracketExpr {
        BracketExpr::node(a, b)
    }

    fn lf(i: u32) -> BracketExpr {
        BracketExpr::leaf(x(i))
    }

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v)
    }

    fn series(d: usize, terms: &[(&[u32], i64)]) -> Series {
        Series::from_terms(d, terms.iter().map(|(v, c)| (m(v), BigInt::from(*c))))
    }

    #[test]
    fn expansion_examples() {
        let b = Budget::default();
        assert!(magnus_expand(&Word::identity(), 4, &b).unwrap().is_one());
        assert_eq!(
            magnus_expand(&Word::generator(x(1)), 2, &b).unwrap(),
            series(2, &[(&[], 1), (&[1], 1)])
        );
        assert_eq!(
            magnus_expand(&Word::generator(x(1)).invert(), 3, &b).unwrap(),
            series(3, &[(&[], 1), (&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1)])
        );
        let c = br(lf(1), lf(2)).flatten();
        assert_eq!(
            magnus_expand(&c, 2, &b).unwrap(),
            series(2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)])
        );
    }

    #[test]
    fn long_word_uses_product_tree() {
        // 64 letters exercises both the split and the parallel branch.
        let b = Budget::default();
        let e = br(br(br(lf(1), lf(2)), br(lf(3), lf(4))), br(br(lf(5), lf(6)), br(lf(7), lf(8))));
        let w = e.flatten();
        assert_eq!(w.len(), 64);
        let mut sequential = Series::one(5);
        for l in w.letters() {
            sequential = sequential.mul(&letter_series(*l, 5)).unwrap();
        }
        assert_eq!(magnus_expand(&w, 5, &b).unwrap(), sequential);
    }

    #[test]
    fn membership_examples() {
        let b = Budget::default();
        let c = br(lf(1), lf(2)).flatten();
        assert!(in_gamma(&Word::generator(x(5)), 1, &b).unwrap());
        assert!(in_gamma(&c, 2, &b).unwrap());
        assert!(!in_gamma(&c, 3, &b).unwrap());
        assert!(!in_gamma(&Word::generator(x(1)), 2, &b).unwrap());
        assert_eq!(in_gamma(&c, 0, &b), Err(MagnusError::InvalidClass(0)));
    }

    #[test]
    fn weight_examples() {
        let b = Budget::default();
        assert_eq!(lcs_weight(&Word::generator(x(1)), 4, &b).unwrap(), Weight::Exact(1));
        assert_eq!(lcs_weight(&br(lf(1), lf(2)).flatten(), 4, &b).unwrap(), Weight::Exact(2));
        let e = br(br(lf(1), lf(2)), br(lf(3), lf(4)));
        assert_eq!(lcs_weight(&e.flatten(), 6, &b).unwrap(), Weight::Exact(4));
        assert_eq!(lcs_weight(&Word::identity(), 3, &b).unwrap(), Weight::AtLeast(3));
        assert_eq!(lcs_weight(&e.flatten(), 4, &b).unwrap(), Weight::AtLeast(4));
    }

    #[test]
    fn multilinear_examples() {
        assert_eq!(multilinear_coefficient(&Word::identity(), &[x(1)]).unwrap(), BigInt::zero());
        let c = br(lf(1), lf(2)).flatten();
        assert_eq!(multilinear_coefficient(&c, &[x(1), x(2)]).unwrap(), BigInt::from(1));
        assert_eq!(multilinear_coefficient(&c, &[x(2), x(1)]).unwrap(), BigInt::from(-1));
        let e = br(br(lf(1), lf(2)), br(lf(3), lf(4))).flatten();
        let target = [x(1), x(2), x(3), x(4)];
        assert_eq!(multilinear_coefficient(&e, &target).unwrap(), BigInt::from(1));
        let full = magnus_expand(&e, 4, &Budget::default()).unwrap();
        assert_eq!(full.coefficient(&m(&[1, 2, 3, 4])).unwrap(), BigInt::from(1));
        assert_eq!(
            multilinear_coefficient(&e, &[x(1), x(1)]),
            Err(MagnusError::RepeatedIndex(x(1)))
        );
    }

    #[test]
    fn empty_target_is_constant_term() {
        let c = br(lf(1), lf(2)).flatten();
        assert_eq!(multilinear_coefficient(&c, &[]).unwrap(), BigInt::from(1));
    }
}
