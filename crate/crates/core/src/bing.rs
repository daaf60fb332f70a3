//! Stage-n Bing meridians and the Clifford commutator `[m_A, m_B]`.
//!
//! Each Bing doubling replaces a meridian by the commutator of the two new
//! meridians, so the stage-n meridian of one side is the complete binary
//! bracket of depth n over that side's `l = 2ⁿ` sphere meridians.

use serde::Serialize;
use thiserror::Error;

use crate::word::{BracketExpr, Generator, Side};

/// Largest supported stage; keeps ordinals inside the generator range.
pub const MAX_STAGE: u32 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("ambient dimension must be at least 4, got {0}")]
    Dimension(u32),
    #[error("stage {0} is larger than the supported maximum {MAX_STAGE}")]
    StageTooLarge(u32),
}

/// Bookkeeping for one Bing stage. `d` never influences symbolic output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageSpec {
    n: u32,
    ambient_dimension: u32,
}

impl StageSpec {
    pub fn new(n: u32, ambient_dimension: u32) -> Result<Self, StageError> {
        if ambient_dimension < 4 {
            return Err(StageError::Dimension(ambient_dimension));
        }
        if n > MAX_STAGE {
            return Err(StageError::StageTooLarge(n));
        }
        Ok(StageSpec { n, ambient_dimension })
    }

    /// Stage `n` in dimension 4.
    pub fn stage(n: u32) -> Result<Self, StageError> {
        Self::new(n, 4)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Spheres per side, `2ⁿ`.
    pub fn l(&self) -> u32 {
        1 << self.n
    }

    /// Total number of generators, `2l`.
    pub fn total_generators(&self) -> u32 {
        2 * self.l()
    }

    pub fn ambient_dimension(&self) -> u32 {
        self.ambient_dimension
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub side_a: Vec<Generator>,
    pub side_b: Vec<Generator>,
}

impl Alphabet {
    pub fn side(&self, side: Side) -> &[Generator] {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    /// All generators in canonical order.
    pub fn all(&self) -> Vec<Generator> {
        self.side_a.iter().chain(&self.side_b).copied().collect()
    }
}

pub fn stage_alphabet(spec: &StageSpec) -> Alphabet {
    let l = spec.l();
    Alphabet {
        side_a: (1..=l).map(Generator::a).collect(),
        side_b: (1..=l).map(Generator::b).collect(),
    }
}

pub fn bing_meridian(spec: &StageSpec, side: Side) -> BracketExpr {
    balanced(side, 1, spec.n)
}

fn balanced(side: Side, first: u32, depth: u32) -> BracketExpr {
    if depth == 0 {
        BracketExpr::leaf(Generator::new(side, first))
    } else {
        let half = 1 << (depth - 1);
        BracketExpr::node(balanced(side, first, depth - 1), balanced(side, first + half, depth - 1))
    }
}

/// `[m_A, m_B]`, the element the Clifford torus relation would kill.
pub fn clifford_commutator(spec: &StageSpec) -> BracketExpr {
    BracketExpr::node(bing_meridian(spec, Side::A), bing_meridian(spec, Side::B))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabets() {
        let a0 = stage_alphabet(&StageSpec::stage(0).unwrap());
        assert_eq!(a0.all(), vec![Generator::a(1), Generator::b(1)]);
        let a1 = stage_alphabet(&StageSpec::stage(1).unwrap());
        let labels: Vec<String> = a1.all().iter().map(|g| g.label()).collect();
        assert_eq!(labels, ["xA1", "xA2", "xB1", "xB2"]);
        let a2 = stage_alphabet(&StageSpec::stage(2).unwrap());
        assert_eq!(a2.all().len(), 8);
        assert_eq!(a2.side(Side::B).len(), 4);
    }

    #[test]
    fn meridians() {
        let m = |n, side| bing_meridian(&StageSpec::stage(n).unwrap(), side).to_string();
        assert_eq!(m(0, Side::A), "xA1");
        assert_eq!(m(1, Side::A), "[xA1,xA2]");
        assert_eq!(m(2, Side::A), "[[xA1,xA2],[xA3,xA4]]");
        assert_eq!(m(1, Side::B), "[xB1,xB2]");
    }

    #[test]
    fn clifford() {
        let c = |n| clifford_commutator(&StageSpec::stage(n).unwrap()).to_string();
        assert_eq!(c(0), "[xA1,xB1]");
        assert_eq!(c(1), "[[xA1,xA2],[xB1,xB2]]");
        assert_eq!(c(2), "[[[xA1,xA2],[xA3,xA4]],[[xB1,xB2],[xB3,xB4]]]");
    }

    #[test]
    fn spec_bookkeeping() {
        let s = StageSpec::new(3, 5).unwrap();
        assert_eq!((s.l(), s.total_generators(), s.ambient_dimension()), (8, 16, 5));
        assert_eq!(StageSpec::new(1, 3), Err(StageError::Dimension(3)));
        assert_eq!(StageSpec::new(16, 4), Err(StageError::StageTooLarge(16)));
    }

    #[test]
    fn dimension_is_inert() {
        for n in 0..4 {
            let a = StageSpec::new(n, 4).unwrap();
            let b = StageSpec::new(n, 9).unwrap();
            assert_eq!(clifford_commutator(&a), clifford_commutator(&b));
            assert_eq!(stage_alphabet(&a), stage_alphabet(&b));
        }
    }
}
