//! Integer windows `{1, ..., n}` with the metric `|x - y|`.

mod blocks;
mod forest;
mod pattern;
mod sidon;

use alloc::vec::Vec;

pub use blocks::{
    blocks_to_quotient, construct_blocks, is_thin, verify_block_conditions, BlockReport, BlockSequence, OrderFailure,
    Quotient, Side, DEFAULT_THIN_FLOOR,
};
pub use forest::{forest_partition, ForestPartition};
pub use pattern::{difference_coloring, pattern_free_member, verify_pattern_free, PatternViolation};
pub use sidon::{extend_to_isometric, is_sidon, sidon_violation};

use crate::coloring::SeparationFailure;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntegerError {
    #[error("window must contain at least one point")]
    EmptyWindow,
    #[error("f({x}) = {fx} is not larger than {x}")]
    NotIncreasing { x: u64, fx: u64 },
    #[error("{0} lies outside the window")]
    OutOfWindow(u64),
    #[error("elements must be strictly increasing (position {0})")]
    NotIncreasingSet(usize),
    #[error("differences {first:?} and {second:?} coincide")]
    NotSidon { first: (u64, u64), second: (u64, u64) },
    #[error("coloring covers {coloring} points, set has {points}")]
    ColoringSize { coloring: usize, points: usize },
    #[error("blocks are not ordered: {0:?}")]
    BlockOrder(OrderFailure),
    #[error("side {side:?} is not separated: {failure:?}")]
    SideFailed { side: Side, failure: SeparationFailure },
    #[error("need at least {0} elements")]
    TooShort(usize),
}

/// Map on `{1, ..., n}` with `f(x) > x`, stored as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    values: Vec<u64>,
}

impl StepFunction {
    /// `values[x - 1]` is `f(x)`.
    pub fn new(values: Vec<u64>) -> Result<Self, IntegerError> {
        if values.is_empty() {
            return Err(IntegerError::EmptyWindow);
        }
        for (i, &fx) in values.iter().enumerate() {
            let x = i as u64 + 1;
            if fx <= x {
                return Err(IntegerError::NotIncreasing { x, fx });
            }
        }
        Ok(StepFunction { values })
    }

    pub fn from_fn(n: u64, f: impl Fn(u64) -> u64) -> Result<Self, IntegerError> {
        Self::new((1..=n).map(f).collect())
    }

    pub fn double(n: u64) -> Self {
        Self::from_fn(n, |x| 2 * x).expect("2x > x")
    }

    pub fn successor(n: u64) -> Self {
        Self::from_fn(n, |x| x + 1).expect("x + 1 > x")
    }

    pub fn plus(k: u64, n: u64) -> Result<Self, IntegerError> {
        Self::from_fn(n, |x| x + k)
    }

    pub fn square_plus_one(n: u64) -> Self {
        Self::from_fn(n, |x| x * x + 1).expect("x^2 + 1 > x")
    }

    /// Window size `n`.
    pub fn domain(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn apply(&self, x: u64) -> Option<u64> {
        x.checked_sub(1).and_then(|i| self.values.get(i as usize)).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Checks a strictly increasing list inside `{1, ..., n}`.
pub(crate) fn check_increasing(set: &[u64], n: Option<u64>) -> Result<(), IntegerError> {
    for (i, w) in set.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(IntegerError::NotIncreasingSet(i + 1));
        }
    }
    if let Some(&x) = set.iter().find(|&&x| x == 0 || n.is_some_and(|n| x > n)) {
        return Err(IntegerError::OutOfWindow(x));
    }
    Ok(())
}
