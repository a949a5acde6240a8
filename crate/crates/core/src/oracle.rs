//! Brute-force references for the exact searches.

use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::{Color, Monochrome, PairColoring};

/// Largest point count [`brute_max_monochrome`] accepts.
pub const BRUTE_LIMIT: usize = 20;

/// Largest point count [`equidistance_guarantee`] accepts.
pub const GUARANTEE_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{points} points exceed the exhaustive limit {limit}")]
    TooLarge { points: usize, limit: usize },
}

fn points_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Enumerates every subset. Ties: larger size, then color 0, then the
/// lexicographically least point list.
pub fn brute_max_monochrome(chi: &PairColoring) -> Result<Monochrome, OracleError> {
    let n = chi.points();
    if n > BRUTE_LIMIT {
        return Err(OracleError::TooLarge { points: n, limit: BRUTE_LIMIT });
    }
    let mut best: Option<(u32, Color)> = None;
    for color in [0, 1] {
        let mut adj = vec![0u32; n];
        for (i, j, c) in chi.triples() {
            if c == color {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let mut mono = vec![false; 1 << n];
        mono[0] = true;
        for mask in 1u32..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            mono[mask as usize] = mono[rest as usize] && adj[low] & rest == rest;
            if !mono[mask as usize] {
                continue;
            }
            let better = match best {
                None => true,
                Some((b, _)) if mask.count_ones() != b.count_ones() => mask.count_ones() > b.count_ones(),
                // same color pass, same size: the lowest differing point decides
                Some((b, bc)) if bc == color => {
                    let diff = mask ^ b;
                    mask & diff & diff.wrapping_neg() != 0
                }
                Some(_) => false,
            };
            if better {
                best = Some((mask, color));
            }
        }
    }
    let (mask, color) = best.unwrap_or((0, 0));
    Ok(Monochrome {
        points: points_of(mask),
        color,
    })
}

/// Outcome of [`equidistance_guarantee`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guarantee {
    pub holds: bool,
    pub assignments: u64,
    /// First assignment without an equidistance set of the requested size;
    /// color 0 stands for distance 1, color 1 for distance 2.
    pub counterexample: Option<PairColoring>,
}

/// Whether every `{1, 2}`-valued distance assignment on `n` points has an
/// equidistance subset of size `k`, by enumerating all of them.
pub fn equidistance_guarantee(n: usize, k: usize) -> Result<Guarantee, OracleError> {
    if n > GUARANTEE_LIMIT {
        return Err(OracleError::TooLarge { points: n, limit: GUARANTEE_LIMIT });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let subsets: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    let assignments = 1u64 << pairs.len();
    for bits in 0..assignments {
        let mut adj = [[0u32; GUARANTEE_LIMIT]; 2];
        for (slot, &(i, j)) in pairs.iter().enumerate() {
            let c = (bits >> slot & 1) as usize;
            adj[c][i] |= 1 << j;
            adj[c][j] |= 1 << i;
        }
        let found = subsets.iter().any(|&s| {
            adj.iter().any(|a| points_of(s).iter().all(|&p| a[p] & s == s & !(1 << p)))
        });
        if !found {
            let chi = PairColoring::from_fn(n, |i, j| {
                let slot = pairs.iter().position(|&p| p == (i, j)).expect("pair listed");
                (bits >> slot & 1) as Color
            });
            return Ok(Guarantee {
                holds: false,
                assignments,
                counterexample: Some(chi),
            });
        }
    }
    Ok(Guarantee {
        holds: true,
        assignments,
        counterexample: None,
    })
}
