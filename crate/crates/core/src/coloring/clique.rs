//! Exact maximum-clique search with lexicographic tie-breaking.
//!
//! Branch and bound with greedy-coloring bounds first finds the clique number,
//! then a second pass walks candidates in ascending order with the size fixed,
//! so the first clique it completes is the lexicographically least maximum one.

use alloc::vec::Vec;

use super::{Color, PairColoring};
use crate::bitset::BitSet;
use crate::metric::{FiniteMetricSpace, Metric, Rational};

struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    fn from_edges(n: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Graph { adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Greedy sequential coloring of `p`; returns vertices ordered by color
    /// class together with the running number of colors used.
    fn color_order(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut candidates = uncolored.clone();
            while let Some(v) = candidates.iter().next() {
                candidates.remove(v);
                uncolored.remove(v);
                order.push(v);
                bounds.push(color);
                candidates.difference_with(&self.adj[v]);
            }
        }
        (order, bounds)
    }

    fn color_bound(&self, p: &BitSet) -> usize {
        self.color_order(p).1.last().copied().unwrap_or(0)
    }

    fn expand(&self, size: usize, mut p: BitSet, best: &mut usize) {
        let (order, bounds) = self.color_order(&p);
        for idx in (0..order.len()).rev() {
            if size + bounds[idx] <= *best {
                return;
            }
            let v = order[idx];
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if size + 1 > *best {
                    *best = size + 1;
                }
            } else {
                self.expand(size + 1, next, best);
            }
            p.remove(v);
        }
    }

    /// Same graph with vertices renumbered by decreasing degree, which
    /// tightens the coloring bounds considerably on dense graphs.
    fn by_degree(&self) -> Graph {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(self.adj[v].count()), v));
        let mut pos = alloc::vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (v, row) in self.adj.iter().enumerate() {
            for w in row.iter() {
                adj[pos[v]].insert(pos[w]);
            }
        }
        Graph { adj }
    }

    /// Clique number, or `floor` when no clique is larger than `floor`.
    fn clique_number_above(&self, floor: usize) -> usize {
        let mut best = floor;
        if self.len() > 0 {
            self.by_degree().expand(0, BitSet::full(self.len()), &mut best);
        }
        best
    }

    fn lex_least(&self, mut p: BitSet, need: usize, acc: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if p.count() < need || self.color_bound(&p) < need {
            return false;
        }
        while let Some(v) = p.iter().next() {
            p.remove(v);
            let mut next = p.intersection(&self.adj[v]);
            next.clear_through(v);
            acc.push(v);
            if self.lex_least(next, need - 1, acc) {
                return true;
            }
            acc.pop();
            if p.count() < need {
                return false;
            }
        }
        false
    }

    /// Lexicographically least clique of exactly `size` vertices.
    fn lex_least_clique(&self, size: usize) -> Option<Vec<usize>> {
        let mut acc = Vec::with_capacity(size);
        self.lex_least(BitSet::full(self.len()), size, &mut acc)
            .then_some(acc)
    }
}

/// A maximum monochrome subset and its color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monochrome {
    pub points: Vec<usize>,
    pub color: Color,
}

/// Exact maximum `U` with `[U]^2` monochrome. Ties prefer color 0, then the
/// lexicographically least subset.
pub fn max_monochrome(chi: &PairColoring) -> Monochrome {
    let n = chi.points();
    if n == 0 {
        return Monochrome {
            points: Vec::new(),
            color: 0,
        };
    }
    let zero = Graph::from_edges(n, |i, j| chi.get(i, j) == 0);
    let w0 = zero.clique_number_above(0);
    let one = Graph::from_edges(n, |i, j| chi.get(i, j) == 1);
    let w1 = one.clique_number_above(w0);
    let (graph, size, color) = if w1 > w0 { (&one, w1, 1) } else { (&zero, w0, 0) };
    let points = graph.lex_least_clique(size).expect("clique number is attained");
    Monochrome { points, color }
}

/// A largest subset with all pairwise distances equal to `distance`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equidistance {
    pub points: Vec<usize>,
    /// `None` only for single-point spaces.
    pub distance: Option<Rational>,
}

impl Equidistance {
    fn better_than(&self, other: &Equidistance) -> bool {
        (self.points.len(), core::cmp::Reverse(self.distance), core::cmp::Reverse(&self.points))
            > (other.points.len(), core::cmp::Reverse(other.distance), core::cmp::Reverse(&other.points))
    }
}

/// Maximum equidistance subset. Ties prefer the smaller distance, then the
/// lexicographically least subset.
///
/// Ultrametric spaces are handled by descending through the `r`-classes: the
/// points of one ball at distance `r` are equidistant exactly when they sit in
/// distinct classes one level down. Other spaces fall back to one exact clique
/// search per scale value on the graph "distance exactly `r`".
pub fn find_max_equidistance(space: &FiniteMetricSpace) -> Equidistance {
    if space.is_ultrametric() {
        equidistance_by_descent(space)
    } else {
        equidistance_by_cliques(space)
    }
}

pub(crate) fn equidistance_by_cliques<M: Metric>(space: &M) -> Equidistance {
    let n = space.len();
    let mut best = Equidistance {
        points: (0..n.min(1)).collect(),
        distance: None,
    };
    let scale = crate::metric::Scale::collect(
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| space.dist(i, j)),
    );
    for &r in scale.values() {
        let g = Graph::from_edges(n, |i, j| space.dist(i, j) == r);
        let floor = best.points.len();
        let w = g.clique_number_above(floor);
        if w > floor {
            best = Equidistance {
                points: g.lex_least_clique(w).expect("clique number is attained"),
                distance: Some(r),
            };
        }
    }
    best
}

pub(crate) fn equidistance_by_descent(space: &FiniteMetricSpace) -> Equidistance {
    let scale = space.scale();
    let all: Vec<usize> = (0..space.len()).collect();
    let mut best = Equidistance {
        points: all.iter().copied().take(1).collect(),
        distance: None,
    };
    if scale.is_empty() {
        return best;
    }
    descend(space, scale.values(), &all, scale.len() - 1, &mut best);
    best
}

/// `block` is a ball whose diameter is at most `levels[top]`.
fn descend(space: &FiniteMetricSpace, levels: &[Rational], block: &[usize], top: usize, best: &mut Equidistance) {
    if block.len() < 2 {
        return;
    }
    let children: Vec<Vec<usize>> = if top == 0 {
        block.iter().map(|&p| alloc::vec![p]).collect()
    } else {
        space
            .r_classes_unchecked(levels[top - 1], block)
            .blocks()
            .to_vec()
    };
    if children.len() >= 2 {
        let mut points: Vec<usize> = children.iter().map(|c| c[0]).collect();
        points.sort_unstable();
        let candidate = Equidistance {
            points,
            distance: Some(levels[top]),
        };
        if candidate.better_than(best) {
            *best = candidate;
        }
    }
    if top > 0 {
        for child in &children {
            descend(space, levels, child, top - 1, best);
        }
    }
}
