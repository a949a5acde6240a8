#![allow(dead_code)]

use std::collections::BTreeSet;

use metramsey_core::metric::Metric;
use metramsey_core::tree::{Group, Mult, Node, ProfileTree, Shape};
use metramsey_core::{FiniteMetricSpace, Rational};
use rand::Rng;

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

/// Trees with levels 2 > 1: one class per entry of `groups`.
pub fn one_level(groups: Vec<(Shape, Mult)>) -> ProfileTree {
    ProfileTree::new(vec![q(2), q(1)], node(groups)).unwrap()
}

struct TreeGen<'a, R: Rng> {
    rng: &'a mut R,
    levels: usize,
}

impl<R: Rng> TreeGen<'_, R> {
    fn leaf_mult(&mut self) -> Mult {
        match self.rng.gen_range(0..4) {
            0 => Mult::Omega,
            _ => Mult::Finite(self.rng.gen_range(1..=3)),
        }
    }

    fn shape(&mut self, depth: usize, template: bool) -> Shape {
        if depth == self.levels {
            return Shape::Leaf(Mult::Finite(1));
        }
        let must_leaf = template && depth + 1 == self.levels;
        if must_leaf || self.rng.gen_bool(0.4) {
            Shape::Leaf(self.leaf_mult())
        } else {
            Shape::Node(self.node(depth, template))
        }
    }

    fn node(&mut self, depth: usize, template: bool) -> Node {
        let count = self.rng.gen_range(1..=2);
        let groups = (0..count)
            .map(|_| {
                let can_unbound = depth + 1 < self.levels;
                let mult = match self.rng.gen_range(0..6) {
                    0 | 1 => Mult::Omega,
                    2 if can_unbound => Mult::Unbounded,
                    _ => Mult::Finite(self.rng.gen_range(1..=2)),
                };
                let template = template || mult == Mult::Unbounded;
                Group {
                    shape: self.shape(depth + 1, template),
                    mult,
                }
            })
            .collect();
        Node { groups }
    }
}

/// Random valid tree with one to three levels and mixed multiplicities.
pub fn random_tree<R: Rng>(rng: &mut R) -> ProfileTree {
    let levels = rng.gen_range(1..=3usize);
    let values: Vec<Rational> = (1..=levels as i64).rev().map(q).collect();
    let mut g = TreeGen { rng, levels };
    let root = g.node(0, false);
    ProfileTree::new(values, root).expect("generator respects the tree invariants")
}

/// Named trees covering each decision clause, followed by seeded random trees.
pub fn tree_corpus<R: Rng>(rng: &mut R, random: usize) -> Vec<ProfileTree> {
    let mut out = vec![
        one_level(vec![(leaf(Mult::Omega), Mult::Finite(2)), (leaf(Mult::Finite(5)), Mult::Finite(1))]),
        one_level(vec![(leaf(Mult::Finite(1)), Mult::Unbounded)]),
        one_level(vec![(leaf(Mult::Omega), Mult::Omega)]),
        one_level(vec![(leaf(Mult::Omega), Mult::Finite(1))]),
        one_level(vec![(leaf(Mult::Finite(1)), Mult::Omega)]),
        one_level(vec![(leaf(Mult::Finite(3)), Mult::Omega)]),
        metramsey_core::boolean::b_profile_tree(3).unwrap(),
    ];
    let inner = Shape::Node(node(vec![(leaf(Mult::Finite(2)), Mult::Unbounded)]));
    out.push(ProfileTree::new(vec![q(3), q(2), q(1)], node(vec![(inner, Mult::Omega)])).unwrap());
    while out.len() < random + 8 {
        out.push(random_tree(rng));
    }
    out
}

/// Per level: (infinitely many infinite classes, unbounded finite classes),
/// read off how classes grow across materialization rounds 2, 3 and 4.
/// `None` when a round is too large to sample.
pub fn growth_oracle(tree: &ProfileTree, cap: usize) -> Option<Vec<(bool, bool)>> {
    let rounds: Vec<FiniteMetricSpace> = (2..=4)
        .map(|t| tree.materialize_round(t, cap).ok().map(|m| m.space))
        .collect::<Option<_>>()?;
    let mut out = Vec::new();
    for &r in tree.levels() {
        let classes: Vec<Vec<BTreeSet<String>>> = rounds
            .iter()
            .map(|s| {
                let p = s.r_equivalence(r).expect("rounds are ultrametric");
                p.blocks()
                    .iter()
                    .map(|b| b.iter().map(|&i| s.label(i).to_string()).collect())
                    .collect()
            })
            .collect();
        // classes of round s that gain points in round s + 1
        let growing = |s: usize| -> Vec<bool> {
            classes[s]
                .iter()
                .map(|c| {
                    let any = c.iter().next().expect("classes are nonempty");
                    let next = classes[s + 1].iter().find(|d| d.contains(any)).expect("rounds nest");
                    next.len() > c.len()
                })
                .collect()
        };
        let (g0, g1) = (growing(0), growing(1));
        let infinite_count = |g: &[bool]| g.iter().filter(|&&x| x).count();
        let finite_max = |s: usize, g: &[bool]| {
            classes[s].iter().zip(g).filter(|(_, &x)| !x).map(|(c, _)| c.len()).max().unwrap_or(0)
        };
        out.push((
            infinite_count(&g1) > infinite_count(&g0),
            finite_max(1, &g1) > finite_max(0, &g0),
        ));
    }
    Some(out)
}

/// Largest set meeting each class of the next level at most once inside
/// one class of the current level; it is equidistant, hence monochrome for
/// every isometric coloring.
pub fn class_transversal(space: &FiniteMetricSpace, levels: &[Rational]) -> Vec<usize> {
    let mut best: Vec<usize> = if space.is_empty() { vec![] } else { vec![0] };
    for (i, &r) in levels.iter().enumerate() {
        let parents = space.r_equivalence(r).unwrap();
        let children = match levels.get(i + 1) {
            Some(&below) => space.r_equivalence(below).unwrap().block_index(),
            None => (0..space.len()).collect(),
        };
        for block in parents.blocks() {
            let mut seen = BTreeSet::new();
            let pick: Vec<usize> = block.iter().copied().filter(|&p| seen.insert(children[p])).collect();
            if pick.len() > best.len() {
                best = pick;
            }
        }
    }
    best
}

pub fn pairs(points: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    points
        .iter()
        .enumerate()
        .flat_map(move |(i, &a)| points[i + 1..].iter().map(move |&b| (a, b)))
}

pub fn is_equidistant<M: Metric>(space: &M, points: &[usize]) -> bool {
    let mut d = pairs(points).map(|(a, b)| space.dist(a, b));
    let first = d.next();
    d.all(|x| Some(x) == first)
}
