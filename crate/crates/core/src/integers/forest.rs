use alloc::vec;
use alloc::vec::Vec;

use super::StepFunction;

/// Two-coloring of the window by depth parity in the forest `x -> f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestPartition {
    depth: Vec<u32>,
}

impl ForestPartition {
    pub fn window(&self) -> u64 {
        self.depth.len() as u64
    }

    pub fn depth(&self, x: u64) -> Option<u32> {
        x.checked_sub(1).and_then(|i| self.depth.get(i as usize)).copied()
    }

    pub fn in_a1(&self, x: u64) -> bool {
        self.depth(x).is_some_and(|d| d % 2 == 0)
    }

    pub fn a1(&self) -> Vec<u64> {
        (1..=self.window()).filter(|&x| self.in_a1(x)).collect()
    }

    pub fn a2(&self) -> Vec<u64> {
        (1..=self.window()).filter(|&x| !self.in_a1(x)).collect()
    }

    /// Points `x` with `f(x)` in the window and in the same cell as `x`.
    pub fn crossing_violations(&self, f: &StepFunction) -> Vec<u64> {
        (1..=self.window())
            .filter(|&x| {
                f.apply(x)
                    .filter(|&fx| fx <= self.window())
                    .is_some_and(|fx| self.in_a1(x) == self.in_a1(fx))
            })
            .collect()
    }
}

/// Depths in the forest with edges `x -> f(x)` inside `{1, ..., n}`.
///
/// Each tree has one top, the point whose image leaves the window. Depth is
/// the tree's height minus the distance to the top, so `depth(f(x)) =
/// depth(x) + 1` always holds; for injective `f` the roots (points without a
/// preimage) get depth 0.
pub fn forest_partition(f: &StepFunction) -> ForestPartition {
    let n = f.domain() as usize;
    let mut height = vec![0u32; n];
    let mut top = vec![0usize; n];
    // f(x) > x, so scanning downwards sees f(x) before x
    for i in (0..n).rev() {
        let fx = f.values()[i];
        if fx <= n as u64 {
            let j = fx as usize - 1;
            height[i] = height[j] + 1;
            top[i] = top[j];
        } else {
            top[i] = i;
        }
    }
    let mut tallest = vec![0u32; n];
    for i in 0..n {
        tallest[top[i]] = tallest[top[i]].max(height[i]);
    }
    let depth = (0..n).map(|i| tallest[top[i]] - height[i]).collect();
    ForestPartition { depth }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling() {
        let f = StepFunction::double(10);
        let p = forest_partition(&f);
        assert_eq!(p.a1(), vec![1, 3, 4, 5, 7, 9]);
        assert_eq!(p.a2(), vec![2, 6, 8, 10]);
        assert!(p.crossing_violations(&f).is_empty());
        assert_eq!(p.depth(8), Some(3));
    }

    #[test]
    fn successor_alternates() {
        let f = StepFunction::successor(5);
        let p = forest_partition(&f);
        assert_eq!(p.a1(), vec![1, 3, 5]);
        assert_eq!(p.a2(), vec![2, 4]);
    }

    #[test]
    fn plus_two_chains() {
        let f = StepFunction::plus(2, 6).unwrap();
        let p = forest_partition(&f);
        assert_eq!(p.a1(), vec![1, 2, 5, 6]);
        assert_eq!(p.a2(), vec![3, 4]);
    }

    #[test]
    fn merging_branches_still_cross() {
        // 1 -> 4, 2 -> 3 -> 4, 4 -> 5: two branches of different length meet
        let f = StepFunction::new(vec![4, 3, 4, 5, 6]).unwrap();
        let p = forest_partition(&f);
        assert!(p.crossing_violations(&f).is_empty());
        assert_eq!(p.depth(2), Some(0));
        assert_eq!(p.depth(1), Some(1));
    }
}
