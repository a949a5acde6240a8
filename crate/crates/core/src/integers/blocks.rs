use alloc::vec::Vec;

use super::{check_increasing, IntegerError};
use crate::coloring::{check_separation, SeparatedFamily, SeparationFailure};
use crate::metric::FiniteMetricSpace;

/// Default lower bound for the last gap of a thin set.
pub const DEFAULT_THIN_FLOOR: u64 = 2;

/// Finite thinness: gaps never shrink and the last gap exceeds `floor`.
/// Sets with at most two elements are thin.
pub fn is_thin(set: &[u64], floor: u64) -> Result<bool, IntegerError> {
    check_increasing(set, None)?;
    if set.len() <= 2 {
        return Ok(true);
    }
    let gaps: Vec<u64> = set.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(gaps.windows(2).all(|g| g[0] <= g[1]) && gaps[gaps.len() - 1] > floor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSequence {
    pub pairs: Vec<(u64, u64)>,
    /// Fewer pairs than requested because the set ran out.
    pub partial: bool,
}

/// Greedy block pairs `(a_n, b_n)` drawn from `set`.
///
/// `a_0, b_0` are the first two elements. `a_{n+1}` is the least element
/// above `2 b_n` after which every gap exceeds `2 a_n`; `b_{n+1}` is the least
/// element above `2 a_{n+1}` after which every gap exceeds `2 b_n`.
pub fn construct_blocks(set: &[u64], count: usize) -> Result<BlockSequence, IntegerError> {
    check_increasing(set, None)?;
    if set.len() < 2 {
        return Err(IntegerError::TooShort(2));
    }
    // least gap among elements at index >= i
    let mut tail_gap = alloc::vec![u64::MAX; set.len()];
    for i in (0..set.len().saturating_sub(1)).rev() {
        tail_gap[i] = tail_gap[i + 1].min(set[i + 1] - set[i]);
    }
    let next = |above: u64, gap: u64| {
        set.iter()
            .enumerate()
            .find(|&(i, &t)| t > above && tail_gap[i] > gap)
            .map(|(_, &t)| t)
    };
    let mut pairs = alloc::vec![(set[0], set[1])];
    while pairs.len() < count {
        let (a, b) = pairs[pairs.len() - 1];
        let Some(a1) = next(2 * b, 2 * a) else { break };
        let Some(b1) = next(2 * a1, 2 * b) else { break };
        pairs.push((a1, b1));
    }
    pairs.truncate(count.max(1));
    Ok(BlockSequence {
        partial: pairs.len() < count,
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Cells `[a_n, b_n)`.
    A,
    /// Cells `[b_n, a_{n+1})`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderFailure {
    NotInSet(u64),
    /// `(index, value)` where `a_0 < b_0 < a_1 < ...` breaks.
    NotIncreasing(usize, u64),
    OutOfWindow(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub order: Option<OrderFailure>,
    /// Cells as integer values.
    pub a_cells: Vec<Vec<u64>>,
    pub b_cells: Vec<Vec<u64>>,
    pub a_within: Option<SeparationFailure>,
    pub a_cross: Option<SeparationFailure>,
    pub b_within: Option<SeparationFailure>,
    pub b_cross: Option<SeparationFailure>,
}

impl BlockReport {
    /// Conditions one to five in order.
    pub fn conditions(&self) -> [bool; 5] {
        [
            self.order.is_none(),
            self.a_within.is_none(),
            self.a_cross.is_none(),
            self.b_within.is_none(),
            self.b_cross.is_none(),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|&c| c)
    }
}

fn order_failure(set: &[u64], blocks: &[(u64, u64)], n: u64) -> Option<OrderFailure> {
    let flat: Vec<u64> = blocks.iter().flat_map(|&(a, b)| [a, b]).collect();
    if let Some(&x) = flat.iter().find(|&&x| x > n) {
        return Some(OrderFailure::OutOfWindow(x));
    }
    if let Some(&x) = flat.iter().find(|x| set.binary_search(x).is_err()) {
        return Some(OrderFailure::NotInSet(x));
    }
    flat.windows(2)
        .position(|w| w[0] >= w[1])
        .map(|i| OrderFailure::NotIncreasing(i + 1, flat[i + 1]))
}

struct Sides {
    space: FiniteMetricSpace,
    values: Vec<u64>,
    a: Vec<Vec<usize>>,
    b: Vec<Vec<usize>>,
}

fn sides(set: &[u64], blocks: &[(u64, u64)], n: u64) -> Sides {
    let values: Vec<u64> = set.iter().copied().filter(|&t| t <= n).collect();
    let space = FiniteMetricSpace::from_integers(&values).expect("increasing values are distinct");
    let cell = |lo: u64, hi: u64| -> Vec<usize> { (0..values.len()).filter(|&i| lo <= values[i] && values[i] < hi).collect() };
    let a = blocks.iter().map(|&(a, b)| cell(a, b)).collect();
    let b = blocks.windows(2).map(|w| cell(w[0].1, w[1].0)).collect();
    Sides { space, values, a, b }
}

fn separation(space: &FiniteMetricSpace, cells: &[Vec<usize>]) -> SeparatedFamily {
    check_separation(space, cells).expect("interval cells are disjoint and nonempty")
}

/// Exact check of the block conditions on `set` cut to `{1, ..., n}`:
/// ordering, then for each side whether within-cell distances avoid the
/// cross-cell ones and whether distinct cell pairs have disjoint cross sets.
pub fn verify_block_conditions(set: &[u64], blocks: &[(u64, u64)], n: u64) -> Result<BlockReport, IntegerError> {
    check_increasing(set, None)?;
    let order = order_failure(set, blocks, n);
    let s = sides(set, blocks, n);
    let cells_ok = order.is_none();
    let (a_family, b_family) = if cells_ok {
        (Some(separation(&s.space, &s.a)), Some(separation(&s.space, &s.b)))
    } else {
        (None, None)
    };
    let as_values = |cells: &[Vec<usize>]| -> Vec<Vec<u64>> {
        cells.iter().map(|c| c.iter().map(|&i| s.values[i]).collect()).collect()
    };
    Ok(BlockReport {
        order,
        a_cells: as_values(&s.a),
        b_cells: as_values(&s.b),
        a_within: a_family.as_ref().and_then(|f| f.within_failure()),
        a_cross: a_family.as_ref().and_then(|f| f.cross_failure()),
        b_within: b_family.as_ref().and_then(|f| f.within_failure()),
        b_cross: b_family.as_ref().and_then(|f| f.cross_failure()),
    })
}

/// Family of one side's interval cells with the index map `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// `set` cut to the window, as a metric space.
    pub space: FiniteMetricSpace,
    pub values: Vec<u64>,
    pub family: SeparatedFamily,
    pub side: Side,
}

impl Quotient {
    /// Index of the cell holding `x`, 0 outside every cell.
    pub fn phi(&self, x: u64) -> usize {
        let Ok(i) = self.values.binary_search(&x) else {
            return 0;
        };
        self.family.cell_of().get(&i).copied().unwrap_or(0)
    }
}

/// Strongly separated family of one side's cells.
pub fn blocks_to_quotient(set: &[u64], blocks: &[(u64, u64)], side: Side, n: u64) -> Result<Quotient, IntegerError> {
    check_increasing(set, None)?;
    if let Some(failure) = order_failure(set, blocks, n) {
        return Err(IntegerError::BlockOrder(failure));
    }
    let s = sides(set, blocks, n);
    let cells = match side {
        Side::A => &s.a,
        Side::B => &s.b,
    };
    let family = separation(&s.space, cells);
    if let Some(failure) = family.within_failure().or(family.cross_failure()) {
        return Err(IntegerError::SideFailed { side, failure });
    }
    Ok(Quotient {
        space: s.space,
        values: s.values,
        family,
        side,
    })
}
