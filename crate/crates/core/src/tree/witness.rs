use alloc::vec::Vec;

use super::{Obstruction, ProfileTree, TreeError};
use crate::coloring::sequence::{greedy_tail, monotone_from};
use crate::coloring::{find_max_equidistance, ScaleMap, SequenceKind};
use crate::metric::{FiniteMetricSpace, Metric, Rational};

const WITNESS_START: usize = 16;
const WITNESS_CAP: usize = 1024;

/// Anchor plus `k` points of one canonical sequence kind, with the map `h`
/// whose composition with a scale map predicts the pair colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub space: FiniteMetricSpace,
    pub kind: SequenceKind,
    pub anchor: usize,
    pub points: Vec<usize>,
    pub h: Vec<Rational>,
}

/// A scale map under which the majority class is too small or not monochrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuaranteeFailure {
    pub map: ScaleMap,
    pub majority: Vec<usize>,
}

/// Checks, for every scale map `f` on the space's scale, that the larger
/// color class of `f . h` on `points` (ties to color 0) is monochrome and has
/// at least `ceil(k / 2)` points.
pub fn check_guarantee(
    space: &FiniteMetricSpace,
    points: &[usize],
    h: &[Rational],
) -> Result<(), GuaranteeFailure> {
    let k = points.len();
    for f in ScaleMap::all(&space.scale()) {
        let colors: Vec<u8> = h.iter().map(|&r| f.color_of(r).unwrap_or(0)).collect();
        let ones = colors.iter().filter(|&&c| c == 1).count();
        let majority_color = u8::from(ones > k - ones);
        let majority: Vec<usize> = points
            .iter()
            .zip(&colors)
            .filter(|(_, &c)| c == majority_color)
            .map(|(&p, _)| p)
            .collect();
        let mut pair_colors = majority
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| majority[i + 1..].iter().map(move |&y| (x, y)))
            .map(|(x, y)| f.color_of(space.dist(x, y)));
        let first = pair_colors.next();
        let monochrome = pair_colors.all(|c| Some(c) == first);
        if !monochrome || majority.len() < k.div_ceil(2) {
            return Err(GuaranteeFailure { map: f, majority });
        }
    }
    Ok(())
}

fn h_values(space: &FiniteMetricSpace, kind: SequenceKind, seq: &[usize]) -> Vec<Rational> {
    let x0 = seq[0];
    let k = seq.len() - 1;
    (1..=k)
        .map(|n| match kind {
            SequenceKind::Increasing | SequenceKind::Decreasing => space.dist(x0, seq[n]),
            SequenceKind::ConstantTail if n < k => space.dist(seq[n], seq[n + 1]),
            SequenceKind::ConstantTail => space.dist(seq[k - 1], seq[k]),
        })
        .collect()
}

/// First sequence of length `len` found: an equidistance set, then a
/// monotone chain from the least anchor, then a greedy constant tail.
/// Returns the longest length seen when none is long enough.
fn find_sequence(space: &FiniteMetricSpace, len: usize) -> Result<(SequenceKind, Vec<usize>), usize> {
    let mut longest = 0;
    let equi = find_max_equidistance(space);
    if equi.points.len() >= len {
        return Ok((SequenceKind::ConstantTail, equi.points[..len].to_vec()));
    }
    longest = longest.max(equi.points.len());
    for (kind, increasing) in [(SequenceKind::Increasing, true), (SequenceKind::Decreasing, false)] {
        for x0 in 0..space.len() {
            let seq = monotone_from(space, x0, increasing);
            if seq.len() >= len {
                return Ok((kind, seq[..len].to_vec()));
            }
            longest = longest.max(seq.len());
        }
    }
    for x0 in 0..space.len() {
        let seq = greedy_tail(space, x0);
        if seq.len() >= len {
            return Ok((SequenceKind::ConstantTail, seq[..len].to_vec()));
        }
        longest = longest.max(seq.len());
    }
    Err(longest)
}

/// Result of [`ProfileTree::obstruction_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionColoring {
    pub obstruction: Obstruction,
    /// Defined on the tree's levels.
    pub map: ScaleMap,
    pub space: FiniteMetricSpace,
    pub truncated: bool,
    pub classes: usize,
    pub largest_class: usize,
    /// No monochrome set of the induced coloring is larger than this.
    pub bound: usize,
}

impl ProfileTree {
    /// Anchor and `k` further points of a canonical sequence in a
    /// materialization, materializing more points until one is found.
    pub fn witness_set(&self, k: usize) -> Result<WitnessSet, TreeError> {
        if k == 0 {
            return Err(TreeError::ZeroWitness);
        }
        let mut budget = (k + 1).max(WITNESS_START);
        loop {
            let m = self.materialize(budget)?;
            match find_sequence(&m.space, k + 1) {
                Ok((kind, seq)) => {
                    let h = h_values(&m.space, kind, &seq);
                    return Ok(WitnessSet {
                        kind,
                        anchor: seq[0],
                        points: seq[1..].to_vec(),
                        h,
                        space: m.space,
                    });
                }
                Err(found) => {
                    if m.space.len() < budget || budget >= WITNESS_CAP {
                        return Err(TreeError::TooSmall { found, required: k + 1 });
                    }
                    budget = (budget * 2).min(WITNESS_CAP);
                }
            }
        }
    }

    /// Within/across coloring at the failing level together with the bound
    /// on monochrome sets in the materialization of size `budget`.
    pub fn obstruction_coloring(&self, budget: usize) -> Result<ObstructionColoring, TreeError> {
        let verdict = self.decide_universal_ramsey();
        let (Some(obstruction), Some(map)) = (verdict.obstruction, verdict.witness) else {
            return Err(TreeError::Universal);
        };
        let m = self.materialize(budget)?;
        let classes = m
            .space
            .r_equivalence(obstruction.level)
            .expect("materializations are ultrametric");
        let largest_class = classes.largest_block();
        Ok(ObstructionColoring {
            obstruction,
            map,
            truncated: m.truncated,
            classes: classes.len(),
            largest_class,
            bound: classes.len().max(largest_class),
            space: m.space,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::super::Mult;
    use super::*;
    use crate::coloring::{induce_coloring, max_monochrome};
    use alloc::vec;

    #[test]
    fn chain_example() {
        let w = binary_chain().witness_set(3).unwrap();
        assert_eq!(w.kind, SequenceKind::Increasing);
        assert_eq!(w.h, vec![q(1), q(2), q(3)]);
        let f = ScaleMap::new(w.space.scale(), vec![0, 1, 1]).unwrap();
        // colors (0, 1, 1): the majority {x2, x3} is monochrome in color 1
        assert_eq!(f.color_of(w.space.dist(w.points[1], w.points[2])), Some(1));
        assert!(check_guarantee(&w.space, &w.points, &w.h).is_ok());
    }

    #[test]
    fn equidistance_class_is_fully_monochrome() {
        let tree = one_level(vec![(leaf(Mult::Omega), Mult::Finite(1))]);
        let w = tree.witness_set(5).unwrap();
        assert_eq!(w.kind, SequenceKind::ConstantTail);
        assert_eq!(w.points.len(), 5);
        assert!(w.h.iter().all(|&r| r == q(1)));
        assert!(check_guarantee(&w.space, &w.points, &w.h).is_ok());
    }

    #[test]
    fn k_one_and_errors() {
        let w = binary_chain().witness_set(1).unwrap();
        assert_eq!(w.points.len(), 1);
        assert!(check_guarantee(&w.space, &w.points, &w.h).is_ok());
        assert_eq!(binary_chain().witness_set(0), Err(TreeError::ZeroWitness));
        assert!(matches!(binary_chain().witness_set(7), Err(TreeError::TooSmall { required: 8, .. })));
    }

    #[test]
    fn guarantee_detects_bad_h() {
        let w = binary_chain().witness_set(3).unwrap();
        let wrong = vec![q(1), q(1), q(1)];
        assert!(check_guarantee(&w.space, &w.points, &wrong).is_err());
    }

    #[test]
    fn obstruction_bounds() {
        let o = unbounded_classes().obstruction_coloring(10).unwrap();
        assert_eq!((o.classes, o.largest_class, o.bound), (4, 4, 4));
        let map = o.map.restrict(&o.space.scale()).unwrap();
        let chi = induce_coloring(&o.space, &map).unwrap();
        assert_eq!(max_monochrome(&chi).points.len(), 4);

        let o = omega_by_omega().obstruction_coloring(9).unwrap();
        assert_eq!(o.bound, 3);
        let chi = induce_coloring(&o.space, &o.map).unwrap();
        assert_eq!(max_monochrome(&chi).points.len(), 3);

        let single = one_level(vec![(leaf(Mult::Omega), Mult::Finite(1))]);
        assert_eq!(single.obstruction_coloring(5), Err(TreeError::Universal));
    }
}
