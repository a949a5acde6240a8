use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::metric::{FiniteMetricSpace, Metric, Rational};

/// Spaces up to this size get an exact constant-tail search.
pub const DEFAULT_SEQUENCE_BUDGET: usize = 12;

/// Hard cap on the exact search regardless of the requested budget.
const EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SequenceKind {
    /// `d(x0, xn)` strictly increasing in `n`.
    Increasing,
    /// `d(x0, xn)` strictly decreasing in `n`.
    Decreasing,
    /// `d(xn, xi) = d(xn, xj)` whenever `i, j > n`.
    ConstantTail,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Increasing => "increasing",
            SequenceKind::Decreasing => "decreasing",
            SequenceKind::ConstantTail => "constant-tail",
        }
    }

    /// Checks the kind's defining condition on an injective sequence.
    pub fn holds<M: Metric>(self, space: &M, seq: &[usize]) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        if !seq.iter().all(|&p| p < space.len() && seen.insert(p)) {
            return false;
        }
        match self {
            SequenceKind::Increasing | SequenceKind::Decreasing => {
                let Some((&x0, rest)) = seq.split_first() else {
                    return true;
                };
                rest.windows(2).all(|w| {
                    let (a, b) = (space.dist(x0, w[0]), space.dist(x0, w[1]));
                    if self == SequenceKind::Increasing {
                        a < b
                    } else {
                        a > b
                    }
                })
            }
            SequenceKind::ConstantTail => seq.iter().enumerate().all(|(n, &x)| {
                seq[n + 1..]
                    .windows(2)
                    .all(|w| space.dist(x, w[0]) == space.dist(x, w[1]))
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSequence {
    pub kind: SequenceKind,
    pub sequence: Vec<usize>,
    /// False when the constant-tail search fell back to the greedy heuristic.
    pub exact: bool,
}

/// Longest finite sequence of one of the three canonical kinds.
///
/// Ties go to the kind order increasing, decreasing, constant-tail, then to
/// the lexicographically least sequence. The constant-tail search is exact
/// for spaces with at most `budget` points and greedy beyond.
pub fn canonical_sequence(space: &FiniteMetricSpace, budget: usize) -> CanonicalSequence {
    let n = space.len();
    let mut best: Option<CanonicalSequence> = None;
    let mut consider = |candidate: CanonicalSequence| {
        let better = match &best {
            None => true,
            Some(b) => {
                (core::cmp::Reverse(candidate.sequence.len()), candidate.kind, &candidate.sequence)
                    < (core::cmp::Reverse(b.sequence.len()), b.kind, &b.sequence)
            }
        };
        if better {
            best = Some(candidate);
        }
    };

    for kind in [SequenceKind::Increasing, SequenceKind::Decreasing] {
        for x0 in 0..n {
            consider(CanonicalSequence {
                kind,
                sequence: monotone_from(space, x0, kind == SequenceKind::Increasing),
                exact: true,
            });
        }
    }

    let exact = n <= budget.min(EXACT_LIMIT);
    let tail = if exact {
        let mut memo = BTreeMap::new();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        longest_tail(space, all, &mut memo)
    } else {
        (0..n)
            .map(|x0| greedy_tail(space, x0))
            .min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)))
            .unwrap_or_default()
    };
    consider(CanonicalSequence {
        kind: SequenceKind::ConstantTail,
        sequence: tail,
        exact,
    });

    let mut out = best.expect("at least one candidate");
    out.exact = exact;
    out
}

/// `x0` followed by one point per distinct distance from `x0`, ordered by that
/// distance; each distance uses its least point.
pub(crate) fn monotone_from<M: Metric>(space: &M, x0: usize, increasing: bool) -> Vec<usize> {
    let mut by_distance: BTreeMap<Rational, usize> = BTreeMap::new();
    for p in (0..space.len()).filter(|&p| p != x0) {
        by_distance.entry(space.dist(x0, p)).or_insert(p);
    }
    let mut seq = alloc::vec![x0];
    if increasing {
        seq.extend(by_distance.values().copied());
    } else {
        seq.extend(by_distance.values().rev().copied());
    }
    seq
}

fn longest_tail(space: &FiniteMetricSpace, set: u64, memo: &mut BTreeMap<u64, Vec<usize>>) -> Vec<usize> {
    if set == 0 {
        return Vec::new();
    }
    if let Some(hit) = memo.get(&set) {
        return hit.clone();
    }
    let mut best: Vec<usize> = Vec::new();
    let points: Vec<usize> = (0..64).filter(|&i| set >> i & 1 == 1).collect();
    for &x in &points {
        let mut classes: BTreeMap<Rational, u64> = BTreeMap::new();
        for &p in points.iter().filter(|&&p| p != x) {
            *classes.entry(space.dist(x, p)).or_default() |= 1 << p;
        }
        let mut tail_best: Vec<usize> = Vec::new();
        for &class in classes.values() {
            let tail = longest_tail(space, class, memo);
            if tail.len() > tail_best.len() || (tail.len() == tail_best.len() && tail < tail_best) {
                tail_best = tail;
            }
        }
        let mut candidate = alloc::vec![x];
        candidate.extend(tail_best);
        if candidate.len() > best.len() || (candidate.len() == best.len() && candidate < best) {
            best = candidate;
        }
    }
    memo.insert(set, best.clone());
    best
}

/// Repeatedly keeps the largest distance class around the current point.
pub(crate) fn greedy_tail<M: Metric>(space: &M, x0: usize) -> Vec<usize> {
    let mut seq = alloc::vec![x0];
    let mut remaining: Vec<usize> = (0..space.len()).filter(|&p| p != x0).collect();
    let mut current = x0;
    while !remaining.is_empty() {
        let mut classes: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for &p in &remaining {
            classes.entry(space.dist(current, p)).or_default().push(p);
        }
        let class = classes
            .into_values()
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b[0].cmp(&a[0])))
            .expect("nonempty");
        current = class[0];
        seq.push(current);
        remaining = class.into_iter().skip(1).collect();
    }
    seq
}
