use alloc::vec;
use alloc::vec::Vec;

use super::{check_increasing, forest_partition, IntegerError, StepFunction};
use crate::coloring::{max_monochrome, PairColoring};

/// `{a, a + x, a + f(x)}` inside the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternViolation {
    pub a: u64,
    pub x: u64,
}

/// First `(a, x)` in lexicographic order with `{a, a + x, a + f(x)}` inside `set`.
///
/// `set` must be strictly increasing inside the domain of `f`.
pub fn verify_pattern_free(set: &[u64], f: &StepFunction) -> Result<Option<PatternViolation>, IntegerError> {
    check_increasing(set, Some(f.domain()))?;
    let Some(&top) = set.last() else {
        return Ok(None);
    };
    let mut member = vec![false; top as usize + 1];
    for &u in set {
        member[u as usize] = true;
    }
    for (i, &a) in set.iter().enumerate() {
        for &u in &set[i + 1..] {
            let x = u - a;
            let hit = f
                .apply(x)
                .and_then(|fx| fx.checked_add(a))
                .is_some_and(|v| v <= top && member[v as usize]);
            if hit {
                return Ok(Some(PatternViolation { a, x }));
            }
        }
    }
    Ok(None)
}

/// Coloring of pairs of `{1, ..., n}` (point `x` at index `x - 1`): 0 when
/// `|x - y|` is in the first forest cell, 1 otherwise.
pub fn difference_coloring(f: &StepFunction) -> PairColoring {
    let forest = forest_partition(f);
    PairColoring::from_fn(f.domain() as usize, |i, j| u8::from(!forest.in_a1(i.abs_diff(j) as u64)))
}

/// Largest monochrome set of [`difference_coloring`], as window values.
pub fn pattern_free_member(f: &StepFunction) -> Vec<u64> {
    let chi = difference_coloring(f);
    max_monochrome(&chi).points.iter().map(|&i| i as u64 + 1).collect()
}
