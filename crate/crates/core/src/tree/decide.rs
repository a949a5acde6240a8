use alloc::vec::Vec;

use super::{shape_infinite, Mult, Node, ProfileTree, Shape};
use crate::coloring::ScaleMap;
use crate::metric::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    InfinitelyManyInfiniteClasses,
    UnboundedFiniteClasses,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::InfinitelyManyInfiniteClasses => "infinitely-many-infinite-classes",
            Clause::UnboundedFiniteClasses => "unbounded-finite-classes",
        }
    }
}

/// Class statistics of the `levels[index]`-equivalence partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelReport {
    pub index: usize,
    pub level: Rational,
    /// `None` when there are infinitely many infinite classes.
    pub infinite_classes: Option<u64>,
    /// Largest finite class, `None` when finite class sizes are unbounded.
    pub finite_class_bound: Option<u64>,
}

impl LevelReport {
    pub fn failure(&self) -> Option<Clause> {
        if self.infinite_classes.is_none() {
            Some(Clause::InfinitelyManyInfiniteClasses)
        } else if self.finite_class_bound.is_none() {
            Some(Clause::UnboundedFiniteClasses)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Obstruction {
    pub index: usize,
    pub level: Rational,
    pub clause: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyVerdict {
    pub universal: bool,
    pub obstruction: Option<Obstruction>,
    /// Within-class pairs get 0, cross-class pairs get 1.
    pub witness: Option<ScaleMap>,
    pub levels: Vec<LevelReport>,
}

#[derive(Debug, Clone, Copy)]
struct Summary {
    infinite: Option<u64>,
    bound: Option<u64>,
    /// Some finite class grows when the leaf multiplicities are scaled.
    scalable: bool,
}

impl Summary {
    const EMPTY: Summary = Summary {
        infinite: Some(0),
        bound: Some(0),
        scalable: false,
    };

    fn merge(&mut self, other: Summary, copies: Option<u64>) {
        self.infinite = match (self.infinite, other.infinite, copies) {
            (_, Some(0), _) => self.infinite,
            (Some(a), Some(b), Some(k)) => b.checked_mul(k).and_then(|x| x.checked_add(a)).or(Some(u64::MAX)),
            _ => None,
        };
        self.bound = match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        self.scalable |= other.scalable;
    }
}

/// Size of a shape, `None` when infinite.
fn shape_size(shape: &Shape) -> Option<u64> {
    if shape_infinite(shape) {
        return None;
    }
    Some(super::shape_count(shape, 1, 1))
}

fn summarize_shape(shape: &Shape, depth: usize, level: usize) -> Summary {
    if depth == level {
        return match shape_size(shape) {
            None => Summary {
                infinite: Some(1),
                ..Summary::EMPTY
            },
            Some(size) => Summary {
                bound: Some(size),
                scalable: true,
                ..Summary::EMPTY
            },
        };
    }
    match shape {
        // the leaf's points are pairwise farther apart than the level
        Shape::Leaf(_) => Summary {
            bound: Some(1),
            ..Summary::EMPTY
        },
        Shape::Node(node) => summarize_node(node, depth, level),
    }
}

fn summarize_node(node: &Node, depth: usize, level: usize) -> Summary {
    let mut out = Summary::EMPTY;
    for g in &node.groups {
        let child = summarize_shape(&g.shape, depth + 1, level);
        match g.mult {
            Mult::Finite(k) => out.merge(child, Some(k)),
            Mult::Omega => out.merge(child, None),
            Mult::Unbounded => {
                let mut members = child;
                if members.scalable {
                    members.bound = None;
                }
                out.merge(members, None);
            }
        }
    }
    out
}

impl ProfileTree {
    pub fn level_reports(&self) -> Vec<LevelReport> {
        let root = Shape::Node(self.root.clone());
        (0..self.levels.len())
            .map(|index| {
                let s = summarize_shape(&root, 0, index);
                LevelReport {
                    index,
                    level: self.levels[index],
                    infinite_classes: s.infinite,
                    finite_class_bound: s.bound,
                }
            })
            .collect()
    }

    /// Decides whether every class partition has finitely many infinite
    /// classes and uniformly bounded finite ones. On failure, reports the
    /// failing level with the smallest distance.
    pub fn decide_universal_ramsey(&self) -> RamseyVerdict {
        let levels = self.level_reports();
        let obstruction = levels.iter().rev().find_map(|rep| {
            rep.failure().map(|clause| Obstruction {
                index: rep.index,
                level: rep.level,
                clause,
            })
        });
        let witness = obstruction.map(|o| self.class_coloring(o.index));
        RamseyVerdict {
            universal: obstruction.is_none(),
            obstruction,
            witness,
            levels,
        }
    }

    /// Scale map that is 0 on distances inside `levels[index]`-classes, 1 across.
    pub fn class_coloring(&self, index: usize) -> ScaleMap {
        let r = self.levels[index];
        ScaleMap::from_fn(self.scale(), |d| u8::from(d > r))
    }
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn omega_omega_and_five_is_universal() {
        let tree = one_level(vec![
            (leaf(Mult::Omega), Mult::Finite(2)),
            (leaf(Mult::Finite(5)), Mult::Finite(1)),
        ]);
        let v = tree.decide_universal_ramsey();
        assert!(v.universal);
        assert!(v.witness.is_none());
        assert_eq!(v.levels[1].infinite_classes, Some(2));
        assert_eq!(v.levels[1].finite_class_bound, Some(5));
    }

    #[test]
    fn unbounded_finite_classes_fail() {
        let v = unbounded_classes().decide_universal_ramsey();
        assert!(!v.universal);
        let o = v.obstruction.unwrap();
        assert_eq!(o.clause, Clause::UnboundedFiniteClasses);
        assert_eq!(o.index, 1);
        assert_eq!(o.level, q(1));
        let w = v.witness.unwrap();
        assert_eq!(w.color_of(q(1)), Some(0));
        assert_eq!(w.color_of(q(2)), Some(1));
    }

    #[test]
    fn omega_copies_of_infinite_class_fail() {
        let v = omega_by_omega().decide_universal_ramsey();
        assert_eq!(v.obstruction.unwrap().clause, Clause::InfinitelyManyInfiniteClasses);
    }

    #[test]
    fn omega_singletons_are_bounded() {
        // infinitely many finite classes of size 1 are allowed
        let v = one_level(vec![(leaf(Mult::Finite(1)), Mult::Omega)]).decide_universal_ramsey();
        assert!(v.universal);
        assert_eq!(v.levels[1].finite_class_bound, Some(1));
    }

    #[test]
    fn nested_unbounded_reports_lowest_level() {
        // levels 3, 2, 1: omega copies of (unbounded classes of a 2-point leaf)
        let inner = Shape::Node(node(vec![(leaf(Mult::Finite(2)), Mult::Unbounded)]));
        let tree = ProfileTree::new(vec![q(3), q(2), q(1)], node(vec![(inner, Mult::Omega)])).unwrap();
        let v = tree.decide_universal_ramsey();
        // at level 2 the omega copies are infinitely many infinite classes,
        // at level 1 the leaves have sizes 2, 4, 6, ...
        assert_eq!(v.levels[1].infinite_classes, None);
        assert_eq!(v.levels[2].finite_class_bound, None);
        assert_eq!(v.levels[2].infinite_classes, Some(0));
        let o = v.obstruction.unwrap();
        assert_eq!((o.index, o.clause), (2, Clause::UnboundedFiniteClasses));
    }

    #[test]
    fn leaves_above_the_level_split_into_singletons() {
        // unbounded members of a 3-point leaf at level 2 are singletons at level 1
        let inner = Shape::Node(node(vec![(leaf(Mult::Finite(3)), Mult::Finite(1))]));
        let tree = ProfileTree::new(
            vec![q(3), q(2), q(1)],
            node(vec![(leaf(Mult::Finite(3)), Mult::Unbounded), (inner, Mult::Finite(1))]),
        )
        .unwrap();
        let v = tree.decide_universal_ramsey();
        assert_eq!(v.levels[1].finite_class_bound, None);
        assert_eq!(v.levels[2].finite_class_bound, Some(3));
        assert_eq!(v.obstruction.unwrap().index, 1);
    }

    #[test]
    fn finite_trees_are_universal() {
        assert!(binary_chain().decide_universal_ramsey().universal);
    }
}
