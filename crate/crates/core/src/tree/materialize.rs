use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{node_count, Mult, Node, ProfileTree, Shape, TreeError};
use crate::metric::{FiniteMetricSpace, Rational};

/// Largest number of points a materialization may hold.
pub const MAX_MATERIALIZE: usize = 1 << 14;

/// Finite sample of a profile tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Materialized {
    pub space: FiniteMetricSpace,
    /// Set when the budget could not hold the first round.
    pub truncated: bool,
    /// Omega multiplicities are realized with `round` copies and unbounded
    /// groups with members `1..=round`; extra points come from the next round.
    pub round: u64,
}

/// One path step: (group, copy) at a node, or (0, point) at a leaf.
type Step = (u32, u32);

struct Walker<'a> {
    levels: &'a [Rational],
    round: u64,
    /// Points outside round `round - 1` still allowed; `u64::MAX` means all.
    extra: u64,
    cap: usize,
    path: Vec<Step>,
    out: Vec<Vec<Step>>,
}

impl Walker<'_> {
    fn full(&self) -> bool {
        self.out.len() >= self.cap
    }

    fn node(&mut self, node: &Node, factor: u64, old: bool) {
        for (g, group) in node.groups.iter().enumerate() {
            let (count, unbounded) = match group.mult {
                Mult::Finite(k) => (k, false),
                Mult::Omega => (self.round, false),
                Mult::Unbounded => (self.round, true),
            };
            for c in 0..count {
                if self.full() {
                    return;
                }
                let old = old && (group.mult.is_finite() || c + 1 < self.round);
                if !old && self.extra == 0 {
                    break;
                }
                let factor = if unbounded { factor.saturating_mul(c + 1) } else { factor };
                self.path.push((g as u32, c as u32));
                self.shape(&group.shape, factor, old);
                self.path.pop();
            }
        }
    }

    fn shape(&mut self, shape: &Shape, factor: u64, old: bool) {
        match shape {
            Shape::Node(node) => self.node(node, factor, old),
            Shape::Leaf(m) => {
                let count = match *m {
                    Mult::Finite(k) => k.saturating_mul(factor),
                    _ => self.round,
                };
                for p in 0..count {
                    if self.full() {
                        return;
                    }
                    let old = old && (m.is_finite() || p + 1 < self.round);
                    if !old {
                        if self.extra == 0 {
                            return;
                        }
                        self.extra -= 1;
                    }
                    let mut point = self.path.clone();
                    point.push((0, p as u32));
                    self.out.push(point);
                }
            }
        }
    }

    fn into_space(self) -> FiniteMetricSpace {
        let labels = self.out.iter().map(|p| label(p)).collect();
        let paths = self.out;
        let levels = self.levels;
        FiniteMetricSpace::from_fn_unchecked(labels, |i, j| {
            match paths[i].iter().zip(&paths[j]).position(|(a, b)| a != b) {
                Some(e) => levels[e],
                None => Rational::from_integer(0),
            }
        })
    }
}

fn label(path: &[Step]) -> String {
    let (last, inner) = path.split_last().expect("paths are nonempty");
    let mut s = String::new();
    for (g, c) in inner {
        s.push_str(&format!("{g}.{c}/"));
    }
    s.push_str(&format!("p{}", last.1));
    s
}

impl ProfileTree {
    fn walk(&self, round: u64, extra: u64, cap: usize) -> FiniteMetricSpace {
        let mut w = Walker {
            levels: &self.levels,
            round,
            extra,
            cap,
            path: Vec::new(),
            out: Vec::new(),
        };
        w.node(&self.root, 1, extra != u64::MAX);
        w.into_space()
    }

    /// Number of points in materialization round `round`.
    pub fn round_size(&self, round: u64) -> u64 {
        node_count(&self.root, round, 1)
    }

    /// All points of one round, refusing rounds larger than `cap`.
    pub fn materialize_round(&self, round: u64, cap: usize) -> Result<Materialized, TreeError> {
        let needed = self.round_size(round);
        if round == 0 || needed > cap.min(MAX_MATERIALIZE) as u64 {
            return Err(TreeError::RoundTooLarge { round, needed, cap });
        }
        Ok(Materialized {
            space: self.walk(round, u64::MAX, usize::MAX),
            truncated: false,
            round,
        })
    }

    /// Deterministic sample with at most `budget` points.
    ///
    /// Takes the largest round that fits, then adds points of the next round
    /// in depth-first order until the budget is used. When even the first
    /// round does not fit, its first `budget` points are returned and the
    /// result is flagged as truncated.
    pub fn materialize(&self, budget: usize) -> Result<Materialized, TreeError> {
        if budget == 0 {
            return Err(TreeError::ZeroBudget);
        }
        let budget = budget.min(MAX_MATERIALIZE);
        let first = self.round_size(1);
        if first > budget as u64 {
            return Ok(Materialized {
                space: self.walk(1, u64::MAX, budget),
                truncated: true,
                round: 1,
            });
        }
        if !self.is_infinite() {
            return Ok(Materialized {
                space: self.walk(1, u64::MAX, budget),
                truncated: false,
                round: 1,
            });
        }
        let mut round = 1;
        let mut size = first;
        loop {
            let next = self.round_size(round + 1);
            if next > budget as u64 {
                break;
            }
            round += 1;
            size = next;
        }
        let extra = budget as u64 - size;
        let space = if extra == 0 {
            self.walk(round, u64::MAX, budget)
        } else {
            self.walk(round + 1, extra, budget)
        };
        Ok(Materialized {
            space,
            truncated: false,
            round,
        })
    }
}
