//! Profile trees: finite presentations of ultrametric spaces with finite scale.
//!
//! A tree carries strictly decreasing levels `levels[0] > levels[1] > ...`.
//! The root sits at depth 0 and a shape placed under a node at depth `d` sits
//! at depth `d + 1`. Two points whose root-to-leaf paths first differ at depth
//! `e` are at distance `levels[e]`; the points of a leaf at depth `d` are
//! pairwise at distance `levels[d]`. A leaf at depth `levels.len()` is a
//! single point.
//!
//! An unbounded group's `n`-th member (`n = 1, 2, ...`) is its template with
//! every finite leaf multiplicity multiplied by `n`.

mod build;
mod decide;
mod materialize;
mod witness;

use alloc::vec::Vec;

use crate::metric::Rational;

pub use build::{from_partition, partition_order, remark_1_1_tree};
pub use decide::{Clause, LevelReport, Obstruction, RamseyVerdict};
pub use materialize::{Materialized, MAX_MATERIALIZE};
pub use witness::{check_guarantee, GuaranteeFailure, ObstructionColoring, WitnessSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(u64),
    Omega,
    Unbounded,
}

impl Mult {
    pub fn is_finite(self) -> bool {
        matches!(self, Mult::Finite(_))
    }
}

impl core::fmt::Display for Mult {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Mult::Finite(k) => write!(f, "{k}"),
            Mult::Omega => f.write_str("omega"),
            Mult::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf(Mult),
    Node(Node),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub shape: Shape,
    pub mult: Mult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one level")]
    NoLevels,
    #[error("levels must be positive and strictly decreasing (index {0})")]
    BadLevels(usize),
    #[error("node at depth {0} has no groups")]
    EmptyNode(usize),
    #[error("multiplicity must be at least 1 (depth {0})")]
    ZeroMultiplicity(usize),
    #[error("a leaf cannot be unbounded (depth {0})")]
    UnboundedLeaf(usize),
    #[error("shape at depth {depth} is below the last level ({levels} levels)")]
    TooDeep { depth: usize, levels: usize },
    #[error("a leaf below the last level must hold exactly one point")]
    BottomLeaf,
    #[error("an unbounded template cannot contain a single-point bottom leaf")]
    BottomLeafInTemplate,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("round {round} needs {needed} points, cap is {cap}")]
    RoundTooLarge { round: u64, needed: u64, cap: usize },
    #[error("tree satisfies the universal condition; there is no obstruction")]
    Universal,
    #[error("found sequences of length {found}, need {required}")]
    TooSmall { found: usize, required: usize },
    #[error("witness size must be at least 1")]
    ZeroWitness,
    #[error("class size list is empty")]
    NoClasses,
}

/// Validated profile tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileTree {
    levels: Vec<Rational>,
    root: Node,
}

impl ProfileTree {
    pub fn new(levels: Vec<Rational>, root: Node) -> Result<Self, TreeError> {
        if levels.is_empty() {
            return Err(TreeError::NoLevels);
        }
        for (i, r) in levels.iter().enumerate() {
            let positive = *r > Rational::from_integer(0);
            if !positive || (i > 0 && levels[i - 1] <= *r) {
                return Err(TreeError::BadLevels(i));
            }
        }
        check_node(&root, 0, levels.len(), false)?;
        Ok(ProfileTree { levels, root })
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// True when some multiplicity is omega or unbounded.
    pub fn is_infinite(&self) -> bool {
        node_infinite(&self.root)
    }

    /// Number of points when the tree is finite.
    pub fn finite_size(&self) -> Option<u64> {
        (!self.is_infinite()).then(|| node_count(&self.root, 1, 1))
    }

    pub fn scale(&self) -> crate::metric::Scale {
        crate::metric::Scale::collect(self.levels.iter().copied())
    }
}

fn check_node(node: &Node, depth: usize, levels: usize, template: bool) -> Result<(), TreeError> {
    if depth >= levels {
        return Err(TreeError::TooDeep { depth, levels });
    }
    if node.groups.is_empty() {
        return Err(TreeError::EmptyNode(depth));
    }
    for group in &node.groups {
        if group.mult == Mult::Finite(0) {
            return Err(TreeError::ZeroMultiplicity(depth));
        }
        let template = template || group.mult == Mult::Unbounded;
        check_shape(&group.shape, depth + 1, levels, template)?;
    }
    Ok(())
}

fn check_shape(shape: &Shape, depth: usize, levels: usize, template: bool) -> Result<(), TreeError> {
    match shape {
        Shape::Node(node) => check_node(node, depth, levels, template),
        Shape::Leaf(mult) => {
            match *mult {
                Mult::Finite(0) => return Err(TreeError::ZeroMultiplicity(depth)),
                Mult::Unbounded => return Err(TreeError::UnboundedLeaf(depth)),
                _ => {}
            }
            if depth > levels {
                return Err(TreeError::TooDeep { depth, levels });
            }
            if depth == levels {
                if *mult != Mult::Finite(1) {
                    return Err(TreeError::BottomLeaf);
                }
                if template {
                    return Err(TreeError::BottomLeafInTemplate);
                }
            }
            Ok(())
        }
    }
}

fn node_infinite(node: &Node) -> bool {
    node.groups.iter().any(|g| !g.mult.is_finite() || shape_infinite(&g.shape))
}

fn shape_infinite(shape: &Shape) -> bool {
    match shape {
        Shape::Leaf(m) => !m.is_finite(),
        Shape::Node(node) => node_infinite(node),
    }
}

/// Point count of materialization round `t`, saturating.
pub(crate) fn node_count(node: &Node, t: u64, factor: u64) -> u64 {
    let mut total = 0u64;
    for g in &node.groups {
        let part = match g.mult {
            Mult::Finite(k) => k.saturating_mul(shape_count(&g.shape, t, factor)),
            Mult::Omega => t.saturating_mul(shape_count(&g.shape, t, factor)),
            Mult::Unbounded => (1..=t).fold(0u64, |acc, m| {
                acc.saturating_add(shape_count(&g.shape, t, factor.saturating_mul(m)))
            }),
        };
        total = total.saturating_add(part);
    }
    total
}

pub(crate) fn shape_count(shape: &Shape, t: u64, factor: u64) -> u64 {
    match shape {
        Shape::Leaf(Mult::Finite(k)) => k.saturating_mul(factor),
        Shape::Leaf(_) => t,
        Shape::Node(node) => node_count(node, t, factor),
    }
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;
    use alloc::vec;

    pub fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    pub fn leaf(m: Mult) -> Shape {
        Shape::Leaf(m)
    }

    pub fn node(groups: Vec<(Shape, Mult)>) -> Node {
        Node {
            groups: groups.into_iter().map(|(shape, mult)| Group { shape, mult }).collect(),
        }
    }

    /// One level at distance 1 below a root at distance 2; classes as given.
    pub fn one_level(groups: Vec<(Shape, Mult)>) -> ProfileTree {
        ProfileTree::new(vec![q(2), q(1)], node(groups)).unwrap()
    }

    pub fn omega_by_omega() -> ProfileTree {
        one_level(vec![(leaf(Mult::Omega), Mult::Omega)])
    }

    pub fn unbounded_classes() -> ProfileTree {
        one_level(vec![(leaf(Mult::Finite(1)), Mult::Unbounded)])
    }

    /// Binary tree on levels 3, 2, 1 with eight points.
    pub fn binary_chain() -> ProfileTree {
        let inner = Shape::Node(node(vec![(leaf(Mult::Finite(2)), Mult::Finite(2))]));
        ProfileTree::new(vec![q(3), q(2), q(1)], node(vec![(inner, Mult::Finite(2))])).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn validation() {
        let ok = node(vec![(leaf(Mult::Finite(1)), Mult::Finite(2))]);
        assert!(ProfileTree::new(vec![q(1)], ok.clone()).is_ok());
        assert_eq!(ProfileTree::new(vec![], ok.clone()), Err(TreeError::NoLevels));
        assert_eq!(ProfileTree::new(vec![q(1), q(2)], ok.clone()), Err(TreeError::BadLevels(1)));
        assert_eq!(ProfileTree::new(vec![q(0)], ok), Err(TreeError::BadLevels(0)));
        assert_eq!(ProfileTree::new(vec![q(1)], node(vec![])), Err(TreeError::EmptyNode(0)));
        assert_eq!(
            ProfileTree::new(vec![q(1)], node(vec![(leaf(Mult::Finite(0)), Mult::Finite(1))])),
            Err(TreeError::ZeroMultiplicity(1))
        );
        assert_eq!(
            ProfileTree::new(vec![q(1)], node(vec![(leaf(Mult::Unbounded), Mult::Finite(1))])),
            Err(TreeError::UnboundedLeaf(1))
        );
        // depth 1 equals the level count, so the leaf must be a single point
        assert_eq!(
            ProfileTree::new(vec![q(1)], node(vec![(leaf(Mult::Finite(2)), Mult::Omega)])),
            Err(TreeError::BottomLeaf)
        );
        assert!(ProfileTree::new(vec![q(1)], node(vec![(leaf(Mult::Finite(1)), Mult::Omega)])).is_ok());
        assert_eq!(
            ProfileTree::new(vec![q(1)], node(vec![(leaf(Mult::Finite(1)), Mult::Unbounded)])),
            Err(TreeError::BottomLeafInTemplate)
        );
        let deep = Shape::Node(node(vec![(leaf(Mult::Finite(1)), Mult::Finite(1))]));
        assert_eq!(
            ProfileTree::new(vec![q(1)], node(vec![(deep, Mult::Finite(1))])),
            Err(TreeError::TooDeep { depth: 1, levels: 1 })
        );
    }

    #[test]
    fn sizes() {
        assert_eq!(binary_chain().finite_size(), Some(8));
        assert!(omega_by_omega().is_infinite());
        assert_eq!(omega_by_omega().finite_size(), None);
        assert_eq!(node_count(omega_by_omega().root(), 3, 1), 9);
        assert_eq!(node_count(unbounded_classes().root(), 4, 1), 10);
    }
}
