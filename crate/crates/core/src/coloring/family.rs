//! Families of disjoint cells whose within-cell and cross-cell distances are
//! kept apart, and the colorings built from them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{induce_unchecked, Color, PairColoring, ScaleMap};
use crate::metric::{FiniteMetricSpace, Metric, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("cell {0} is empty")]
    EmptyCell(usize),
    #[error("point {point} lies in cells {first} and {second}")]
    Overlap { point: usize, first: usize, second: usize },
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("family separation is {found:?}, {required:?} required")]
    Insufficient {
        found: SeparationLevel,
        required: SeparationLevel,
    },
    #[error("index coloring covers {coloring} cells, family has {cells}")]
    IndexColoringSize { coloring: usize, cells: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeparationLevel {
    None,
    /// Cross-cell distances avoid every within-cell distance.
    Weak,
    /// Weak, and distinct cell pairs have disjoint cross-cell distance sets.
    Strong,
}

impl SeparationLevel {
    pub fn name(self) -> &'static str {
        match self {
            SeparationLevel::None => "none",
            SeparationLevel::Weak => "weak",
            SeparationLevel::Strong => "strong",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationFailure {
    /// `distance` lies in `d(X_cell, X_cell)` and in `d(X_i, X_j)` for `pair = (i, j)`.
    WithinMeetsCross {
        cell: usize,
        pair: (usize, usize),
        distance: Rational,
    },
    /// `distance` lies in the cross sets of two distinct index pairs.
    CrossMeetsCross {
        first: (usize, usize),
        second: (usize, usize),
        distance: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedFamily {
    cells: Vec<Vec<usize>>,
    level: SeparationLevel,
    within_failure: Option<SeparationFailure>,
    cross_failure: Option<SeparationFailure>,
}

impl SeparatedFamily {
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn level(&self) -> SeparationLevel {
        self.level
    }

    /// Witness against weak separation, if any.
    pub fn within_failure(&self) -> Option<SeparationFailure> {
        self.within_failure
    }

    /// Witness against pairwise-disjoint cross sets, if any. Reported even
    /// when weak separation also fails.
    pub fn cross_failure(&self) -> Option<SeparationFailure> {
        self.cross_failure
    }

    /// Cell index of each point covered by the family.
    pub fn cell_of(&self) -> BTreeMap<usize, usize> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(c, cell)| cell.iter().map(move |&p| (p, c)))
            .collect()
    }

    fn within_distances(&self, space: &FiniteMetricSpace) -> BTreeMap<Rational, usize> {
        let mut out = BTreeMap::new();
        for (c, cell) in self.cells.iter().enumerate() {
            for (k, &a) in cell.iter().enumerate() {
                for &b in &cell[k + 1..] {
                    out.entry(space.dist(a, b)).or_insert(c);
                }
            }
        }
        out
    }

    fn cross_distances(&self, space: &FiniteMetricSpace) -> Vec<((usize, usize), BTreeSet<Rational>)> {
        let k = self.cells.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let set = self.cells[i]
                    .iter()
                    .flat_map(|&a| self.cells[j].iter().map(move |&b| space.dist(a, b)))
                    .collect();
                out.push(((i, j), set));
            }
        }
        out
    }
}

/// Computes the separation level of `cells` by exact distance-set comparison.
pub fn check_separation(space: &FiniteMetricSpace, cells: &[Vec<usize>]) -> Result<SeparatedFamily, FamilyError> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(FamilyError::EmptyCell(c));
        }
        for &p in cell {
            if p >= space.len() {
                return Err(FamilyError::PointOutOfRange(p));
            }
            if let Some(first) = owner.insert(p, c) {
                return Err(FamilyError::Overlap { point: p, first, second: c });
            }
        }
    }
    let mut family = SeparatedFamily {
        cells: cells
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect(),
        level: SeparationLevel::None,
        within_failure: None,
        cross_failure: None,
    };

    let within = family.within_distances(space);
    let cross = family.cross_distances(space);

    'weak: for (pair, set) in &cross {
        for r in set {
            if let Some(&cell) = within.get(r) {
                family.within_failure = Some(SeparationFailure::WithinMeetsCross {
                    cell,
                    pair: *pair,
                    distance: *r,
                });
                break 'weak;
            }
        }
    }

    let mut first_pair: BTreeMap<Rational, (usize, usize)> = BTreeMap::new();
    'strong: for (pair, set) in &cross {
        for r in set {
            match first_pair.get(r) {
                Some(&first) => {
                    family.cross_failure = Some(SeparationFailure::CrossMeetsCross {
                        first,
                        second: *pair,
                        distance: *r,
                    });
                    break 'strong;
                }
                None => {
                    first_pair.insert(*r, *pair);
                }
            }
        }
    }

    family.level = match (family.within_failure, family.cross_failure) {
        (Some(_), _) => SeparationLevel::None,
        (None, Some(_)) => SeparationLevel::Weak,
        (None, None) => SeparationLevel::Strong,
    };
    Ok(family)
}

fn require(family: &SeparatedFamily, required: SeparationLevel) -> Result<(), FamilyError> {
    if family.level < required {
        Err(FamilyError::Insufficient {
            found: family.level,
            required,
        })
    } else {
        Ok(())
    }
}

/// Within-cell distances to 0, everything else (cross-cell and unused scale
/// values) to 1.
pub fn family_scale_map(space: &FiniteMetricSpace, family: &SeparatedFamily) -> Result<ScaleMap, FamilyError> {
    require(family, SeparationLevel::Weak)?;
    let within = family.within_distances(space);
    Ok(ScaleMap::from_fn(space.scale(), |r| Color::from(!within.contains_key(&r))))
}

/// Isometric coloring whose 0-monochrome sets inside the cells' union stay in
/// one cell and whose 1-monochrome sets meet each cell at most once.
pub fn family_coloring(space: &FiniteMetricSpace, family: &SeparatedFamily) -> Result<PairColoring, FamilyError> {
    let map = family_scale_map(space, family)?;
    Ok(induce_unchecked(space, &map))
}

/// Scale map lifting `index_coloring` on cell pairs: cross distances of cells
/// `i, j` get `index_coloring({i, j})`; within-cell and unused values get 0.
pub fn lift_scale_map(
    space: &FiniteMetricSpace,
    family: &SeparatedFamily,
    index_coloring: &PairColoring,
) -> Result<ScaleMap, FamilyError> {
    require(family, SeparationLevel::Strong)?;
    if index_coloring.points() != family.cells.len() {
        return Err(FamilyError::IndexColoringSize {
            coloring: index_coloring.points(),
            cells: family.cells.len(),
        });
    }
    let mut assigned: BTreeMap<Rational, Color> = BTreeMap::new();
    for ((i, j), set) in family.cross_distances(space) {
        let c = index_coloring.get(i, j);
        for r in set {
            assigned.insert(r, c);
        }
    }
    Ok(ScaleMap::from_fn(space.scale(), |r| assigned.get(&r).copied().unwrap_or(0)))
}

pub fn lift_coloring(
    space: &FiniteMetricSpace,
    family: &SeparatedFamily,
    index_coloring: &PairColoring,
) -> Result<PairColoring, FamilyError> {
    let map = lift_scale_map(space, family, index_coloring)?;
    Ok(induce_unchecked(space, &map))
}

/// Index image of `subset` when it lies in the cells' union and meets each cell
/// at most once; `None` otherwise.
pub fn pushforward(family: &SeparatedFamily, subset: &[usize]) -> Option<Vec<usize>> {
    let owner = family.cell_of();
    let mut image = Vec::with_capacity(subset.len());
    for p in subset {
        let c = *owner.get(p)?;
        if image.contains(&c) {
            return None;
        }
        image.push(c);
    }
    Some(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{recognize_isometric, Isometry};
    use crate::fixtures::*;
    use alloc::vec;

    fn points() -> FiniteMetricSpace {
        FiniteMetricSpace::from_integers(&[1, 2, 3, 4, 10, 20]).unwrap()
    }

    #[test]
    fn two_far_cells_are_separated() {
        let s = points();
        let fam = check_separation(&s, &[vec![0, 1], vec![4, 5]]).unwrap();
        // Within {1}, {10}; cross {8, 9, 18, 19}. With a single cross pair the
        // pairwise-disjointness condition is vacuous.
        assert!(fam.within_failure().is_none());
        assert!(fam.cross_failure().is_none());
        assert_eq!(fam.level(), SeparationLevel::Strong);
    }

    #[test]
    fn adjacent_cells_fail_weak_separation() {
        let s = points();
        let fam = check_separation(&s, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(fam.level(), SeparationLevel::None);
        assert_eq!(
            fam.within_failure(),
            Some(SeparationFailure::WithinMeetsCross { cell: 0, pair: (0, 1), distance: q(1) })
        );
    }

    #[test]
    fn cross_sets_colliding_gives_weak() {
        // Cells {0}, {10}, {20}: cross distances 10, 20, 10.
        let s = FiniteMetricSpace::from_integers(&[0, 10, 20]).unwrap();
        let fam = check_separation(&s, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(fam.level(), SeparationLevel::Weak);
        assert_eq!(
            fam.cross_failure(),
            Some(SeparationFailure::CrossMeetsCross { first: (0, 1), second: (1, 2), distance: q(10) })
        );
    }

    #[test]
    fn overlapping_or_empty_cells_are_errors() {
        let s = points();
        assert_eq!(
            check_separation(&s, &[vec![0, 1], vec![1]]),
            Err(FamilyError::Overlap { point: 1, first: 0, second: 1 })
        );
        assert_eq!(check_separation(&s, &[vec![0], vec![]]), Err(FamilyError::EmptyCell(1)));
    }

    #[test]
    fn family_coloring_rule() {
        let s = points();
        let fam = check_separation(&s, &[vec![0, 1], vec![4, 5]]).unwrap();
        let chi = family_coloring(&s, &fam).unwrap();
        assert_eq!(chi.get(0, 1), 0);
        assert_eq!(chi.get(4, 5), 0);
        assert_eq!(chi.get(0, 4), 1);
        // {1, 2, 10} mixes a within pair and cross pairs.
        assert!(!chi.is_monochrome(&[0, 1, 4]));
        assert!(matches!(recognize_isometric(&s, &chi).unwrap(), Isometry::Isometric(_)));

        let single = check_separation(&s, &[vec![0, 1, 2]]).unwrap();
        let chi = family_coloring(&s, &single).unwrap();
        assert!(chi.is_monochrome(&[0, 1, 2]));
        assert_eq!(chi.monochrome_color(&[0, 1, 2]), Some(0));

        let bad = check_separation(&s, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(family_coloring(&s, &bad), Err(FamilyError::Insufficient { .. })));
    }

    #[test]
    fn lift_of_constant_and_parity_index_colorings() {
        let s = FiniteMetricSpace::from_integers(&[1, 2, 10, 13, 100, 105]).unwrap();
        let fam = check_separation(&s, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(fam.level(), SeparationLevel::Strong);

        let ones = PairColoring::constant(3, 1);
        let chi = lift_coloring(&s, &fam, &ones).unwrap();
        for (a, b) in [(0, 2), (1, 5), (3, 4)] {
            assert_eq!(chi.get(a, b), 1);
        }
        assert_eq!(chi.get(0, 1), 0);

        let parity = PairColoring::from_fn(3, |i, j| ((i + j) % 2) as Color);
        let chi = lift_coloring(&s, &fam, &parity).unwrap();
        assert!(matches!(recognize_isometric(&s, &chi).unwrap(), Isometry::Isometric(_)));
        assert_eq!(chi.get(0, 4), 0);
        assert_eq!(chi.get(0, 2), 1);

        let wrong = PairColoring::constant(2, 0);
        assert!(matches!(lift_coloring(&s, &fam, &wrong), Err(FamilyError::IndexColoringSize { .. })));
    }

    #[test]
    fn one_point_cells_lift_is_relabeling() {
        let s = FiniteMetricSpace::from_integers(&[0, 1, 3, 7]).unwrap();
        let fam = check_separation(&s, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(fam.level(), SeparationLevel::Strong);
        let idx = PairColoring::from_fn(4, |i, j| ((i * 3 + j) % 2) as Color);
        assert_eq!(lift_coloring(&s, &fam, &idx).unwrap(), idx);
    }

    #[test]
    fn pushforward_requires_transversal() {
        let s = points();
        let fam = check_separation(&s, &[vec![0, 1], vec![4, 5]]).unwrap();
        assert_eq!(pushforward(&fam, &[1, 4]), Some(vec![0, 1]));
        assert_eq!(pushforward(&fam, &[0, 1]), None);
        assert_eq!(pushforward(&fam, &[2]), None);
    }
}
