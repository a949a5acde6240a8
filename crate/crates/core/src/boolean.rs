//! The Boolean group `⊕ Z_2` truncated to `L` coordinates.
//!
//! Coordinate 0 is the first summand. The distance between two elements is
//! the least `m` such that they agree on every coordinate `>= m`, i.e. one
//! plus the highest coordinate where they differ. Element number `p` in a
//! [`BooleanSpace`] has coordinate `i` equal to bit `i` of `p`, so the
//! distance is the bit length of `p XOR q` and the group sum is `p XOR q`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::coloring::{Color, PairColoring};
use crate::metric::{FiniteMetricSpace, Metric, Rational};
use crate::tree::{Group, Mult, Node, ProfileTree, Shape};

/// Largest supported number of coordinates.
pub const MAX_COORDINATES: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BooleanError {
    #[error("elements have {0} and {1} coordinates")]
    LengthMismatch(usize, usize),
    #[error("coordinate count {0} outside 1..={MAX_COORDINATES}")]
    LengthOutOfRange(u32),
    #[error("invalid bit string {0:?}")]
    BadBits(String),
    #[error("coloring covers {coloring} points, group has {points}")]
    ColoringSize { coloring: usize, points: usize },
}

/// Element of the truncated group, coordinate 0 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BElement {
    bits: u32,
    len: u32,
}

impl BElement {
    pub fn new(bits: u32, len: u32) -> Result<Self, BooleanError> {
        if len == 0 || len > MAX_COORDINATES {
            return Err(BooleanError::LengthOutOfRange(len));
        }
        Ok(BElement {
            bits: bits & ((1 << len) - 1),
            len,
        })
    }

    /// Parses `"0110"`: the first character is coordinate 0.
    pub fn parse(s: &str) -> Result<Self, BooleanError> {
        let len = s.chars().count() as u32;
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(BooleanError::BadBits(s.into())),
            }
        }
        BElement::new(bits, len).map_err(|_| BooleanError::BadBits(s.into()))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> u32 {
        self.len
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn to_bit_string(self) -> String {
        (0..self.len)
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl core::ops::Add for BElement {
    type Output = BElement;

    fn add(self, rhs: BElement) -> BElement {
        BElement {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

#[inline]
fn bit_length(x: u32) -> u32 {
    32 - x.leading_zeros()
}

pub fn b_distance(x: BElement, y: BElement) -> Result<u32, BooleanError> {
    if x.len != y.len {
        return Err(BooleanError::LengthMismatch(x.len as usize, y.len as usize));
    }
    Ok(bit_length(x.bits ^ y.bits))
}

/// The `2^L` elements with their ultrametric, computed on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanSpace {
    coordinates: u32,
}

impl Metric for BooleanSpace {
    fn len(&self) -> usize {
        1 << self.coordinates
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> Rational {
        Rational::from_integer(bit_length((i ^ j) as u32) as i64)
    }
}

impl BooleanSpace {
    pub fn new(coordinates: u32) -> Result<Self, BooleanError> {
        if coordinates == 0 || coordinates > MAX_COORDINATES {
            return Err(BooleanError::LengthOutOfRange(coordinates));
        }
        Ok(BooleanSpace { coordinates })
    }

    pub fn coordinates(&self) -> u32 {
        self.coordinates
    }

    pub fn element(&self, p: usize) -> BElement {
        BElement {
            bits: p as u32,
            len: self.coordinates,
        }
    }

    pub fn index_of(&self, x: BElement) -> Result<usize, BooleanError> {
        if x.len != self.coordinates {
            return Err(BooleanError::LengthMismatch(x.len as usize, self.coordinates as usize));
        }
        Ok(x.bits as usize)
    }

    /// Scale `{1, ..., L}`.
    pub fn scale(&self) -> crate::metric::Scale {
        crate::metric::Scale::collect((1..=self.coordinates as i64).map(Rational::from_integer))
    }

    /// Dense copy of the chosen elements, labelled by bit strings.
    pub fn to_finite_subset(&self, points: &[usize]) -> FiniteMetricSpace {
        let labels = points.iter().map(|&p| self.element(p).to_bit_string()).collect();
        FiniteMetricSpace::from_fn_unchecked(labels, |i, j| self.dist(points[i], points[j]))
    }

    pub fn to_finite(&self) -> FiniteMetricSpace {
        let all: Vec<usize> = (0..self.len()).collect();
        self.to_finite_subset(&all)
    }
}

pub fn b_space(coordinates: u32) -> Result<BooleanSpace, BooleanError> {
    BooleanSpace::new(coordinates)
}

fn check_coloring(space: &BooleanSpace, chi: &PairColoring) -> Result<(), BooleanError> {
    if chi.points() != space.len() {
        return Err(BooleanError::ColoringSize {
            coloring: chi.points(),
            points: space.len(),
        });
    }
    Ok(())
}

/// Two pairs with the same sum `x + y` but different colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumViolation {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// A pair whose color changes under translation by `shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslationViolation {
    pub pair: (usize, usize),
    pub shift: usize,
}

/// First pair (in lexicographic order) whose color disagrees with the first
/// pair of the same sum, if any.
pub fn ps_violation(space: &BooleanSpace, chi: &PairColoring) -> Result<Option<SumViolation>, BooleanError> {
    check_coloring(space, chi)?;
    let mut by_sum: Vec<Option<((usize, usize), Color)>> = alloc::vec![None; space.len()];
    for (x, y, c) in chi.triples() {
        match by_sum[x ^ y] {
            None => by_sum[x ^ y] = Some(((x, y), c)),
            Some((first, prev)) if prev != c => {
                return Ok(Some(SumViolation { first, second: (x, y) }));
            }
            Some(_) => {}
        }
    }
    Ok(None)
}

pub fn is_ps_coloring(space: &BooleanSpace, chi: &PairColoring) -> Result<bool, BooleanError> {
    Ok(ps_violation(space, chi)?.is_none())
}

/// First `(pair, shift)` with `chi({x,y}) != chi({x+g, y+g})`, scanning shifts
/// in increasing order and pairs lexicographically.
pub fn invariance_violation(
    space: &BooleanSpace,
    chi: &PairColoring,
) -> Result<Option<TranslationViolation>, BooleanError> {
    check_coloring(space, chi)?;
    for g in 1..space.len() {
        for (x, y, c) in chi.triples() {
            if chi.get(x ^ g, y ^ g) != c {
                return Ok(Some(TranslationViolation { pair: (x, y), shift: g }));
            }
        }
    }
    Ok(None)
}

pub fn is_invariant_coloring(space: &BooleanSpace, chi: &PairColoring) -> Result<bool, BooleanError> {
    Ok(invariance_violation(space, chi)?.is_none())
}

/// Profile tree whose full materialization is the group itself, point for
/// point: the root splits on the top coordinate, each level below on the next.
pub fn b_profile_tree(coordinates: u32) -> Result<ProfileTree, BooleanError> {
    BooleanSpace::new(coordinates)?;
    let levels = (1..=coordinates as i64).rev().map(Rational::from_integer).collect();
    let mut shape = Shape::Leaf(Mult::Finite(1));
    for _ in 0..coordinates {
        shape = Shape::Node(Node {
            groups: alloc::vec![Group { shape, mult: Mult::Finite(2) }],
        });
    }
    let Shape::Node(root) = shape else { unreachable!() };
    Ok(ProfileTree::new(levels, root).expect("boolean tree is well formed"))
}
