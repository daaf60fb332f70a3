//! Free-group words over sided generators and commutator expression trees.
//!
//! Commutators follow the convention `[u, v] = u v u⁻¹ v⁻¹`. Every sign
//! assertion made elsewhere in the crate (Magnus leaf-order coefficients,
//! Lie expansions) depends on this choice.

use std::fmt;

use smallvec::SmallVec;

/// Offset added to side-B ordinals when packing a generator into a variable index.
pub const SIDE_B_OFFSET: u32 = 1 << 16;

/// Which collection of spheres a meridian generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::B => "B",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A free generator, identified by side and a 1-based ordinal.
///
/// The derived ordering puts side A before side B and then orders by ordinal,
/// which is the total order used for monomials downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    side: Side,
    ordinal: u32,
}

impl Generator {
    /// # Panics
    /// If `ordinal` is zero or not below [`SIDE_B_OFFSET`].
    pub fn new(side: Side, ordinal: u32) -> Self {
        Self::try_new(side, ordinal).expect("generator ordinal out of range")
    }

    pub fn try_new(side: Side, ordinal: u32) -> Option<Self> {
        (1..SIDE_B_OFFSET).contains(&ordinal).then_some(Generator { side, ordinal })
    }

    /// Side-A generator with the given ordinal; this is what a bare `x3` denotes.
    pub fn a(ordinal: u32) -> Self {
        Self::new(Side::A, ordinal)
    }

    pub fn b(ordinal: u32) -> Self {
        Self::new(Side::B, ordinal)
    }

    pub fn side(self) -> Side {
        self.side
    }

    pub fn ordinal(self) -> u32 {
        self.ordinal
    }

    /// Variable index of this generator in series arithmetic. Monotone in the
    /// generator order: `xAj ↦ j`, `xBj ↦ SIDE_B_OFFSET + j`.
    pub fn index(self) -> u32 {
        match self.side {
            Side::A => self.ordinal,
            Side::B => SIDE_B_OFFSET + self.ordinal,
        }
    }

    pub fn from_index(index: u32) -> Option<Self> {
        if index >= SIDE_B_OFFSET {
            Self::try_new(Side::B, index - SIDE_B_OFFSET)
        } else {
            Self::try_new(Side::A, index)
        }
    }

    /// Canonical label such as `xA3`.
    pub fn label(self) -> String {
        format!("x{}{}", self.side, self.ordinal)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.side, self.ordinal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(generator: Generator) -> Self {
        Letter { generator, sign: Sign::Plus }
    }

    pub fn neg(generator: Generator) -> Self {
        Letter { generator, sign: Sign::Minus }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: self.sign.flip() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.generator),
            Sign::Minus => write!(f, "{}^-1", self.generator),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(generator: Generator) -> Self {
        Word { letters: vec![Letter::pos(generator)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// A reduced word is trivial in the free group exactly when it is empty.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // Only the junction can cancel since both operands are reduced.
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a.cancels(**b))
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Word { letters }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.multiply(other)
            .multiply(&self.invert())
            .multiply(&other.invert())
    }

    /// Non-negative integer power; negative exponents power the inverse.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    /// Distinct generators in generator order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.letters.iter().map(|l| l.generator).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Total exponent of `generator` in the word.
    pub fn exponent_sum(&self, generator: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| i64::from(l.sign.as_i32()))
            .sum()
    }
}

impl fmt::Display for Word {
    /// Runs of one letter are written as powers, e.g. `xA1^2*xB1^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let run = self.letters[i..].iter().take_while(|l| **l == letter).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let exp = run as i64 * i64::from(letter.sign.as_i32());
            if exp == 1 {
                write!(f, "{}", letter.generator)?;
            } else {
                write!(f, "{}^{}", letter.generator, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// An iterated group commutator with generator leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketExpr {
    Leaf(Generator),
    Node(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn leaf(generator: Generator) -> Self {
        BracketExpr::Leaf(generator)
    }

    pub fn node(left: BracketExpr, right: BracketExpr) -> Self {
        BracketExpr::Node(Box::new(left), Box::new(right))
    }

    /// Expands the tree into a reduced word.
    pub fn flatten(&self) -> Word {
        match self {
            BracketExpr::Leaf(g) => Word::generator(*g),
            BracketExpr::Node(l, r) => l.flatten().commutator(&r.flatten()),
        }
    }

    /// Leaves read left to right.
    pub fn leaves(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Generator>) {
        match self {
            BracketExpr::Leaf(g) => out.push(*g),
            BracketExpr::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BracketExpr::Leaf(_) => 1,
            BracketExpr::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BracketExpr::Leaf(_) => 0,
            BracketExpr::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn has_distinct_leaves(&self) -> bool {
        let mut leaves: SmallVec<[Generator; 16]> = self.leaves().into_iter().collect();
        let n = leaves.len();
        leaves.sort_unstable();
        leaves.dedup();
        leaves.len() == n
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Leaf(g) => write!(f, "{g}"),
            BracketExpr::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Generator {
        Generator::a(i)
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce(vec![]).is_identity());
        assert!(Word::reduce(vec![Letter::pos(x(1)), Letter::neg(x(1))]).is_identity());
        let w = Word::reduce(vec![
            Letter::pos(x(1)),
            Letter::pos(x(2)),
            Letter::neg(x(2)),
            Letter::pos(x(1)),
        ]);
        assert_eq!(w.letters(), &[Letter::pos(x(1)), Letter::pos(x(1))]);
    }

    #[test]
    fn multiply_examples() {
        let w = Word::reduce(vec![Letter::pos(x(3)), Letter::neg(x(1))]);
        assert_eq!(Word::identity().multiply(&w), w);
        assert!(Word::generator(x(1)).multiply(&Word::generator(x(1)).invert()).is_identity());
        let u = Word::reduce(vec![Letter::pos(x(1)), Letter::pos(x(2))]);
        let v = Word::reduce(vec![Letter::neg(x(2)), Letter::pos(x(3))]);
        assert_eq!(
            u.multiply(&v).letters(),
            &[Letter::pos(x(1)), Letter::pos(x(3))]
        );
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity().invert().is_identity());
        assert_eq!(Word::generator(x(1)).invert().letters(), &[Letter::neg(x(1))]);
        let u = Word::reduce(vec![Letter::pos(x(1)), Letter::neg(x(2))]);
        assert_eq!(u.invert().letters(), &[Letter::pos(x(2)), Letter::neg(x(1))]);
    }

    #[test]
    fn commutator_examples() {
        let x1 = Word::generator(x(1));
        let x2 = Word::generator(x(2));
        assert!(Word::identity().commutator(&x2).is_identity());
        assert!(x1.commutator(&x1).is_identity());
        assert_eq!(
            x1.commutator(&x2).letters(),
            &[
                Letter::pos(x(1)),
                Letter::pos(x(2)),
                Letter::neg(x(1)),
                Letter::neg(x(2))
            ]
        );
    }

    #[test]
    fn flatten_lengths() {
        let leaf = BracketExpr::leaf(x(1));
        assert_eq!(leaf.flatten(), Word::generator(x(1)));
        let e = BracketExpr::node(BracketExpr::leaf(x(1)), BracketExpr::leaf(x(2)));
        assert_eq!(e.flatten().len(), 4);
        let e2 = BracketExpr::node(
            e.clone(),
            BracketExpr::node(BracketExpr::leaf(x(3)), BracketExpr::leaf(x(4))),
        );
        let w = e2.flatten();
        assert_eq!(w.len(), 16);
        for g in w.generators() {
            assert_eq!(w.exponent_sum(g), 0);
        }
    }

    #[test]
    fn word_display_compresses_runs() {
        let w = Word::reduce(vec![
            Letter::pos(x(1)),
            Letter::pos(x(1)),
            Letter::neg(Generator::b(2)),
        ]);
        assert_eq!(w.to_string(), "xA1^2*xB2^-1");
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn generator_order_and_index() {
        assert!(Generator::a(9) < Generator::b(1));
        assert!(Generator::a(9).index() < Generator::b(1).index());
        for g in [Generator::a(1), Generator::a(300), Generator::b(1), Generator::b(7)] {
            assert_eq!(Generator::from_index(g.index()), Some(g));
        }
        assert_eq!(Generator::from_index(0), None);
        assert_eq!(Generator::b(3).label(), "xB3");
    }

    #[test]
    fn pow_and_conjugate() {
        let x1 = Word::generator(x(1));
        assert_eq!(x1.pow(-3).len(), 3);
        assert!(x1.pow(0).is_identity());
        let g = Word::generator(x(2));
        assert_eq!(x1.conjugate_by(&g).len(), 3);
    }
}
