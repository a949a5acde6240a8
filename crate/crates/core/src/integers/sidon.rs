use alloc::collections::BTreeMap;

use super::{check_increasing, IntegerError};
use crate::coloring::{PairColoring, ScaleMap};
use crate::metric::{Rational, Scale};

/// Two distinct pairs of `set` with the same difference, first found in
/// lexicographic pair order.
pub fn sidon_violation(set: &[u64]) -> Option<((u64, u64), (u64, u64))> {
    let mut seen: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if let Some(&first) = seen.get(&x.abs_diff(y)) {
                return Some((first, (x, y)));
            }
            seen.insert(x.abs_diff(y), (x, y));
        }
    }
    None
}

/// All pairwise differences are distinct.
pub fn is_sidon(set: &[u64]) -> bool {
    sidon_violation(set).is_none()
}

/// Scale map on the window `{1, ..., n}` sending `|x - y|` to `chi({x, y})`
/// for pairs of `set` (by position) and every other distance to 0.
pub fn extend_to_isometric(set: &[u64], chi: &PairColoring, n: u64) -> Result<ScaleMap, IntegerError> {
    check_increasing(set, Some(n))?;
    if chi.points() != set.len() {
        return Err(IntegerError::ColoringSize {
            coloring: chi.points(),
            points: set.len(),
        });
    }
    if let Some((first, second)) = sidon_violation(set) {
        return Err(IntegerError::NotSidon { first, second });
    }
    let assigned: BTreeMap<u64, u8> = chi.triples().map(|(i, j, c)| (set[j] - set[i], c)).collect();
    let scale = Scale::collect((1..n as i64).map(Rational::from_integer));
    Ok(ScaleMap::from_fn(scale, |r| assigned.get(&(r.to_integer() as u64)).copied().unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::induce_coloring;
    use crate::metric::FiniteMetricSpace;
    use alloc::vec::Vec;

    #[test]
    fn sidon_examples() {
        assert!(is_sidon(&[1, 2, 5, 11]));
        assert_eq!(sidon_violation(&[1, 2, 3]), Some(((1, 2), (2, 3))));
        assert!(is_sidon(&[]));
        assert!(is_sidon(&[7]));
        assert!(is_sidon(&[3, 9]));
    }

    #[test]
    fn round_trip_on_sidon_set() {
        let set = [1, 2, 5, 11];
        let window = FiniteMetricSpace::window(12);
        let idx: Vec<usize> = set.iter().map(|&x| x as usize - 1).collect();
        for bits in 0u32..64 {
            let chi = PairColoring::from_fn(4, |i, j| {
                let slot = i * (7 - i) / 2 + (j - i - 1);
                (bits >> slot & 1) as u8
            });
            let f = extend_to_isometric(&set, &chi, 12).unwrap();
            assert_eq!(induce_coloring(&window, &f).unwrap().restrict(&idx), chi);
        }
    }

    #[test]
    fn zero_and_pair() {
        let f = extend_to_isometric(&[1, 2, 5, 11], &PairColoring::constant(4, 0), 12).unwrap();
        assert!(f.colors().iter().all(|&c| c == 0));
        let f = extend_to_isometric(&[1, 2], &PairColoring::constant(2, 1), 4).unwrap();
        assert_eq!(f.colors(), &[1, 0, 0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            extend_to_isometric(&[1, 2, 3], &PairColoring::constant(3, 0), 4),
            Err(IntegerError::NotSidon { .. })
        ));
        assert!(matches!(
            extend_to_isometric(&[1, 2], &PairColoring::constant(3, 0), 4),
            Err(IntegerError::ColoringSize { .. })
        ));
    }
}
