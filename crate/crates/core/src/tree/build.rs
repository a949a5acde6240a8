use alloc::vec;
use alloc::vec::Vec;

use super::{Group, Mult, Node, ProfileTree, Shape, TreeError};
use crate::metric::{Partition, Rational};

fn two_levels(groups: Vec<Group>) -> ProfileTree {
    let levels = vec![Rational::from_integer(2), Rational::from_integer(1)];
    ProfileTree::new(levels, Node { groups }).expect("two-level trees of leaves are well formed")
}

/// Two-level tree: distance 1 inside a block, 2 across blocks.
///
/// Materialized point `j` is `partition_order(partition)[j]`.
pub fn from_partition(partition: &Partition) -> ProfileTree {
    two_levels(
        partition
            .blocks()
            .iter()
            .map(|b| Group {
                shape: Shape::Leaf(Mult::Finite(b.len() as u64)),
                mult: Mult::Finite(1),
            })
            .collect(),
    )
}

/// Original points in the order a full materialization of
/// [`from_partition`] lists them.
pub fn partition_order(partition: &Partition) -> Vec<usize> {
    partition.blocks().iter().flatten().copied().collect()
}

/// Classes at distance 1 inside, 2 across, one class per entry. An
/// unbounded entry stands for classes of sizes 1, 2, 3, ...
pub fn remark_1_1_tree(sizes: &[Mult]) -> Result<ProfileTree, TreeError> {
    if sizes.is_empty() {
        return Err(TreeError::NoClasses);
    }
    let mut groups = Vec::with_capacity(sizes.len());
    for &m in sizes {
        let (leaf, mult) = match m {
            Mult::Finite(0) => return Err(TreeError::ZeroMultiplicity(1)),
            Mult::Unbounded => (Mult::Finite(1), Mult::Unbounded),
            other => (other, Mult::Finite(1)),
        };
        groups.push(Group {
            shape: Shape::Leaf(leaf),
            mult,
        });
    }
    Ok(two_levels(groups))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::find_max_equidistance;
    use crate::metric::Metric;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn partition_tree() {
        // {{a, b}, {c}}
        let p = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
        let tree = from_partition(&p);
        let m = tree.materialize(3).unwrap();
        assert_eq!(m.space.dist(0, 1), q(1));
        assert_eq!(m.space.dist(0, 2), q(2));
        assert_eq!(m.space.dist(1, 2), q(2));
        assert_eq!(partition_order(&p), vec![0, 1, 2]);
    }

    #[test]
    fn extreme_partitions() {
        let singles = from_partition(&Partition::singletons(4)).materialize(4).unwrap();
        assert_eq!(singles.space.scale().values(), &[q(2)]);
        let one = from_partition(&Partition::new(vec![vec![0, 1, 2, 3]], 4).unwrap())
            .materialize(4)
            .unwrap();
        assert_eq!(one.space.scale().values(), &[q(1)]);
    }

    #[test]
    fn order_follows_blocks() {
        let p = Partition::new(vec![vec![3, 0], vec![1], vec![2, 4]], 5).unwrap();
        let order = partition_order(&p);
        let m = from_partition(&p).materialize(5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let same = p.block_index()[order[i]] == p.block_index()[order[j]];
                let expect = if i == j { q(0) } else if same { q(1) } else { q(2) };
                assert_eq!(m.space.dist(i, j), expect);
            }
        }
    }

    #[test]
    fn remark_trees() {
        let t = remark_1_1_tree(&[Mult::Finite(1), Mult::Finite(2), Mult::Finite(3)]).unwrap();
        let m = t.materialize(6).unwrap();
        assert_eq!(find_max_equidistance(&m.space).points.len(), 3);

        let t = remark_1_1_tree(&[Mult::Omega]).unwrap();
        let m = t.materialize(5).unwrap();
        assert_eq!(m.space.scale().values(), &[q(1)]);

        let t = remark_1_1_tree(&[Mult::Unbounded]).unwrap();
        assert!(!t.decide_universal_ramsey().universal);
        assert_eq!(remark_1_1_tree(&[]), Err(TreeError::NoClasses));
    }
}
