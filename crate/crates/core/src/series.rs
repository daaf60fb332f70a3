//! Sparse truncated power series in non-commuting variables with integer
//! coefficients.
//!
//! A [`Series`] lives in `Z<X_i>` modulo all monomials of degree greater than
//! its truncation degree. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose ordering (degree first, then lexicographic on variable
//! indices) is the canonical order for printing and serialization.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::word::Generator;

/// Default cap on stored terms per series.
pub const DEFAULT_MONOMIAL_CAP: usize = 10_000_000;

// Below this many term pairs a product is computed on the calling thread.
const PAR_PAIR_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation degrees differ ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },
    #[error("monomial budget exceeded: more than {cap} stored terms")]
    BudgetExceeded { cap: usize },
    #[error("a variable does not fit at truncation degree 0")]
    VariableDoesNotFit,
    #[error("degree {degree} is outside 0..={truncation}")]
    DegreeOutOfRange { degree: usize, truncation: usize },
}

/// Resource limits for series arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub monomial_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { monomial_cap: DEFAULT_MONOMIAL_CAP }
    }
}

impl Budget {
    pub fn new(monomial_cap: usize) -> Self {
        Budget { monomial_cap }
    }

    fn check(&self, len: usize) -> Result<(), SeriesError> {
        if len > self.monomial_cap {
            Err(SeriesError::BudgetExceeded { cap: self.monomial_cap })
        } else {
            Ok(())
        }
    }
}

/// A word in the variable indices. The empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn new(vars: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(vars))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = SmallVec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(v: Vec<u32>) -> Self {
        Monomial(SmallVec::from_vec(v))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One term of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    truncation: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(truncation: usize) -> Self {
        Series { truncation, terms: BTreeMap::new() }
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(truncation, BigInt::one())
    }

    pub fn constant(truncation: usize, c: BigInt) -> Self {
        let mut s = Self::zero(truncation);
        if !c.is_zero() {
            s.terms.insert(Monomial::unit(), c);
        }
        s
    }

    /// The series `X_index`.
    pub fn var(index: u32, truncation: usize) -> Result<Self, SeriesError> {
        if truncation == 0 {
            return Err(SeriesError::VariableDoesNotFit);
        }
        let mut s = Self::zero(truncation);
        s.terms.insert(Monomial::new(&[index]), BigInt::one());
        Ok(s)
    }

    /// Builds a series from raw terms, summing duplicates and discarding zero
    /// coefficients and monomials above the truncation degree.
    pub fn from_terms<I>(truncation: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut s = Self::zero(truncation);
        for (m, c) in terms {
            if m.degree() <= truncation {
                s.add_term(m, c);
            }
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::unit()).is_some_and(|c| c.is_one())
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn same_truncation(&self, other: &Series) -> Result<(), SeriesError> {
        if self.truncation == other.truncation {
            Ok(())
        } else {
            Err(SeriesError::DegreeMismatch { left: self.truncation, right: other.truncation })
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_truncation(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            truncation: self.truncation,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        if k.is_zero() {
            return Self::zero(self.truncation);
        }
        Series {
            truncation: self.truncation,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Product under the default budget.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.mul_with_budget(other, &Budget::default())
    }

    /// Non-commutative product, discarding terms above the truncation degree.
    ///
    /// Large products are split across rayon workers by chunks of the left
    /// operand; partial sums are merged in chunk order, and since integer
    /// addition is exact the result does not depend on the split.
    pub fn mul_with_budget(&self, other: &Series, budget: &Budget) -> Result<Series, SeriesError> {
        self.same_truncation(other)?;
        let d = self.truncation;
        let mut by_degree: Vec<Vec<(&Monomial, &BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &other.terms {
            by_degree[m.degree()].push((m, c));
        }
        let left: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        let pairs: usize = left
            .iter()
            .map(|(m, _)| by_degree[..=d - m.degree()].iter().map(Vec::len).sum::<usize>())
            .sum();

        let accumulate = |chunk: &[(&Monomial, &BigInt)]| -> Result<HashMap<Monomial, BigInt>, SeriesError> {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
            for (ma, ca) in chunk {
                for bucket in &by_degree[..=d - ma.degree()] {
                    for (mb, cb) in bucket {
                        let prod = *ca * *cb;
                        acc.entry(ma.concat(mb))
                            .and_modify(|c| *c += &prod)
                            .or_insert(prod);
                    }
                }
                budget.check(acc.len())?;
            }
            Ok(acc)
        };

        let parts: Vec<HashMap<Monomial, BigInt>> = if pairs < PAR_PAIR_THRESHOLD || left.len() < 2 {
            vec![accumulate(&left)?]
        } else {
            let chunk = left.len().div_ceil(rayon::current_num_threads() * 4).max(1);
            left.par_chunks(chunk).map(accumulate).collect::<Result<_, _>>()?
        };

        let mut merged: HashMap<Monomial, BigInt> = HashMap::new();
        let mut iter = parts.into_iter();
        if let Some(first) = iter.next() {
            merged = first;
        }
        for part in iter {
            for (m, c) in part {
                merged.entry(m).and_modify(|x| *x += &c).or_insert(c);
            }
            budget.check(merged.len())?;
        }
        let mut sorted: Vec<(Monomial, BigInt)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        budget.check(sorted.len())?;
        sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Ok(Series { truncation: d, terms: sorted.into_iter().collect() })
    }

    /// Right multiplication by `1 + X_index`.
    pub fn mul_one_plus_var(&self, index: u32, budget: &Budget) -> Result<Series, SeriesError> {
        let x = Monomial::new(&[index]);
        let mut out = self.clone();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() < self.truncation) {
            out.add_term(m.concat(&x), c.clone());
        }
        budget.check(out.len())?;
        Ok(out)
    }

    /// Right multiplication by `(1 + X_index)⁻¹ = 1 - X + X² - …`, computed
    /// degree by degree from `T = S - T·X`.
    pub fn mul_one_plus_var_inverse(&self, index: u32, budget: &Budget) -> Result<Series, SeriesError> {
        let x = Monomial::new(&[index]);
        let mut out = Self::zero(self.truncation);
        for deg in 0..=self.truncation {
            let mut layer: Vec<(Monomial, BigInt)> = self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if deg > 0 {
                let below: Vec<(Monomial, BigInt)> = out
                    .terms
                    .iter()
                    .filter(|(m, _)| m.degree() == deg - 1)
                    .map(|(m, c)| (m.concat(&x), -c))
                    .collect();
                layer.extend(below);
            }
            for (m, c) in layer {
                out.add_term(m, c);
            }
            budget.check(out.len())?;
        }
        Ok(out)
    }

    /// Restriction to a smaller truncation degree.
    pub fn truncate(&self, truncation: usize) -> Series {
        Series {
            truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= truncation)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of exactly degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Result<Series, SeriesError> {
        if d > self.truncation {
            return Err(SeriesError::DegreeOutOfRange { degree: d, truncation: self.truncation });
        }
        Ok(Series {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Smallest positive degree carrying a nonzero term.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).find(|&d| d > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Result<BigInt, SeriesError> {
        if m.degree() > self.truncation {
            return Err(SeriesError::DegreeOutOfRange { degree: m.degree(), truncation: self.truncation });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_default())
    }

    /// True when every monomial has degree `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Checks the storage invariants: no zero coefficient, nothing above the
    /// truncation degree.
    pub fn invariants_hold(&self) -> bool {
        self.terms.iter().all(|(m, c)| !c.is_zero() && m.degree() <= self.truncation)
    }

    /// Renders terms in canonical order, e.g. `1 + X_A1*X_A2 - X_A2*X_A1`.
    pub fn to_text_with<F: Fn(u32) -> String>(&self, name: F) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let vars: Vec<String> = m.vars().iter().map(|&v| name(v)).collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson { monomial: m.vars().to_vec(), coeff: c.to_string() })
            .collect()
    }
}

/// Variable name for a packed generator index, e.g. `X_B2`.
pub fn sided_var_name(index: u32) -> String {
    match Generator::from_index(index) {
        Some(g) => format!("X_{}{}", g.side(), g.ordinal()),
        None => format!("X{index}"),
    }
}

/// Variable name that omits the side, e.g. `X2`.
pub fn bare_var_name(index: u32) -> String {
    match Generator::from_index(index) {
        Some(g) => format!("X{}", g.ordinal()),
        None => format!("X{index}"),
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(sided_var_name))
    }
}
