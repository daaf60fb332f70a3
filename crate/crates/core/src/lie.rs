//! Free Lie algebra side of the cross-checks: bracket trees expanded as Lie
//! polynomials, Lyndon bases, and Witt ranks.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::series::{Monomial, Series};
use crate::word::{BracketExpr, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("leaf {0} appears more than once")]
    RepeatedLeaf(Generator),
}

/// A homogeneous Lie polynomial stored as a series truncated at its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePoly {
    weight: usize,
    series: Series,
}

impl LiePoly {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn into_series(self) -> Series {
        self.series
    }
}

/// `leaf(g) ↦ X_g`, `[L, R] ↦ LR - RL`.
pub fn lie_expand(e: &BracketExpr) -> LiePoly {
    let weight = e.leaf_count();
    LiePoly { weight, series: expand_at(e, weight) }
}

fn expand_at(e: &BracketExpr, truncation: usize) -> Series {
    match e {
        BracketExpr::Leaf(g) => Series::var(g.index(), truncation).expect("truncation is at least 1"),
        BracketExpr::Node(l, r) => {
            let a = expand_at(l, truncation);
            let b = expand_at(r, truncation);
            // Homogeneous factors of total degree ≤ truncation: nothing is cut,
            // and the term counts stay far below any budget.
            let ab = a.mul(&b).expect("bracket expansion within default budget");
            let ba = b.mul(&a).expect("bracket expansion within default budget");
            ab.sub(&ba).expect("equal truncation")
        }
    }
}

/// Coefficient of the monomial reading the leaves left to right.
pub fn leaf_order_coefficient(e: &BracketExpr) -> Result<BigInt, LieError> {
    let leaves = e.leaves();
    for (i, g) in leaves.iter().enumerate() {
        if leaves[..i].contains(g) {
            return Err(LieError::RepeatedLeaf(*g));
        }
    }
    let m = Monomial::from(leaves.iter().map(|g| g.index()).collect::<Vec<_>>());
    Ok(lie_expand(e)
        .series
        .coefficient(&m)
        .expect("leaf monomial has degree equal to the weight"))
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n >= 1, "mobius is defined for positive integers");
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the k-th lower central quotient of the free group of rank `n`:
/// `(1/k) Σ_{d | k} μ(d) n^{k/d}`.
pub fn witt_rank(n: u32, k: u32) -> BigUint {
    assert!(n >= 1 && k >= 1, "witt_rank needs n >= 1 and k >= 1");
    let base = BigInt::from(n);
    let mut sum = BigInt::zero();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        match mobius(u64::from(d)) {
            0 => {}
            mu => sum += BigInt::from(mu) * base.pow(k / d),
        }
    }
    let q = sum / BigInt::from(k);
    q.to_biguint().expect("witt rank is non-negative")
}

/// Lyndon words of length exactly `k` over the letters `1..=n`, in
/// lexicographic order (Duval's generation).
pub fn lyndon_words(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u32> = vec![1];
    loop {
        if w.len() == k {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < k {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&n) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u32]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[u32]) -> BracketExpr {
    assert!(is_lyndon(w), "standard bracketing needs a Lyndon word");
    if w.len() == 1 {
        return BracketExpr::leaf(Generator::a(w[0]));
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("the last letter is a Lyndon suffix");
    BracketExpr::node(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}

/// Standard bracketings of all Lyndon words of length `k` over `n` letters,
/// sorted by the underlying word.
pub fn lyndon_basis(n: u32, k: usize) -> Vec<BracketExpr> {
    lyndon_words(n, k).iter().map(|w| standard_bracketing(w)).collect()
}

/// `Σ_{d | k} d · witt_rank(n, d)`, which should equal `n^k`.
pub fn necklace_sum(n: u32, k: u32) -> BigUint {
    (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| BigUint::from(d) * witt_rank(n, d))
        .fold(BigUint::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;
    use num_traits::One;

    fn terms(s: &Series) -> Vec<(Vec<u32>, i64)> {
        s.terms()
            .map(|(m, c)| (m.vars().to_vec(), i64::try_from(c.clone()).unwrap()))
            .collect()
    }

    #[test]
    fn lie_expand_examples() {
        let p = lie_expand(&parse_expr("x1").unwrap());
        assert_eq!(terms(p.series()), vec![(vec![1], 1)]);
        let p = lie_expand(&parse_expr("[x1,x2]").unwrap());
        assert_eq!(terms(p.series()), vec![(vec![1, 2], 1), (vec![2, 1], -1)]);
        let p = lie_expand(&parse_expr("[[x1,x2],x3]").unwrap());
        assert_eq!(p.weight(), 3);
        assert_eq!(
            terms(p.series()),
            vec![
                (vec![1, 2, 3], 1),
                (vec![2, 1, 3], -1),
                (vec![3, 1, 2], -1),
                (vec![3, 2, 1], 1)
            ]
        );
    }

    #[test]
    fn leaf_order_examples() {
        for text in ["[x1,x2]", "[[x1,x2],[x3,x4]]", "[[x1,x2],x3]"] {
            assert_eq!(leaf_order_coefficient(&parse_expr(text).unwrap()).unwrap(), BigInt::one());
        }
        assert_eq!(
            leaf_order_coefficient(&parse_expr("[x1,[x2,x1]]").unwrap()),
            Err(LieError::RepeatedLeaf(Generator::a(1)))
        );
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, mu) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), *mu, "mu({})", i + 1);
        }
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_rank(2, 1), BigUint::from(2u32));
        assert_eq!(witt_rank(2, 2), BigUint::from(1u32));
        assert_eq!(witt_rank(2, 3), BigUint::from(2u32));
        assert_eq!(witt_rank(3, 2), BigUint::from(3u32));
    }

    #[test]
    fn lyndon_examples() {
        let show = |v: Vec<BracketExpr>| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        assert_eq!(show(lyndon_basis(2, 1)), vec!["xA1", "xA2"]);
        assert_eq!(show(lyndon_basis(2, 2)), vec!["[xA1,xA2]"]);
        assert_eq!(show(lyndon_basis(2, 3)), vec!["[xA1,[xA1,xA2]]", "[[xA1,xA2],xA2]"]);
        assert_eq!(lyndon_words(2, 4), vec![vec![1, 1, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 2]]);
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[1, 1, 2]));
        assert!(!is_lyndon(&[1, 1]));
        assert!(!is_lyndon(&[2, 1]));
        assert!(!is_lyndon(&[]));
    }
}
