mod common;

use common::{is_equidistant, pairs, q};
use metramsey_core::coloring::{
    canonical_sequence, find_max_equidistance, induce_coloring, max_monochrome, recognize_isometric, Isometry,
    DEFAULT_SEQUENCE_BUDGET,
};
use metramsey_core::metric::{classify, validate, Classification, Metric};
use metramsey_core::oracle::brute_max_monochrome;
use metramsey_core::{FiniteMetricSpace, PairColoring, Rational, ScaleMap};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Symmetric matrix with values in {1, 2} off the diagonal: always a metric.
fn one_two_space() -> impl Strategy<Value = FiniteMetricSpace> {
    (2usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(1i64..=2, n * (n - 1) / 2).prop_map(move |vals| {
            let mut m = vec![vec![q(0); n]; n];
            let mut it = vals.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = q(it.next().unwrap());
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            FiniteMetricSpace::new(labels(n), m).unwrap()
        })
    })
}

fn integer_space() -> impl Strategy<Value = FiniteMetricSpace> {
    proptest::collection::btree_set(1u64..60, 2..=10)
        .prop_map(|s| FiniteMetricSpace::from_integers(&s.into_iter().collect::<Vec<_>>()).unwrap())
}

fn coloring(n: usize) -> impl Strategy<Value = PairColoring> {
    proptest::collection::vec(0u8..=1, n * (n - 1) / 2).prop_map(move |bits| {
        let mut it = bits.into_iter();
        let mut chi = PairColoring::constant(n, 0);
        for i in 0..n {
            for j in i + 1..n {
                chi.set(i, j, it.next().unwrap());
            }
        }
        chi
    })
}

fn brute_equidistance(space: &FiniteMetricSpace) -> usize {
    let n = space.len();
    (0u32..1 << n)
        .filter(|&m| {
            let pts: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            is_equidistant(space, &pts)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn search_matches_brute_force(chi in (1usize..=12).prop_flat_map(coloring)) {
        prop_assert_eq!(max_monochrome(&chi), brute_max_monochrome(&chi).unwrap());
    }

    #[test]
    fn monochrome_result_is_monochrome(chi in (2usize..=14).prop_flat_map(coloring)) {
        let m = max_monochrome(&chi);
        prop_assert!(m.points.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(pairs(&m.points).all(|(a, b)| chi.get(a, b) == m.color));
    }

    #[test]
    fn induced_colorings_are_recognized(space in integer_space(), bits in any::<u64>()) {
        let f = ScaleMap::from_bits(space.scale(), bits);
        let chi = induce_coloring(&space, &f).unwrap();
        match recognize_isometric(&space, &chi).unwrap() {
            Isometry::Isometric(g) => prop_assert_eq!(g, f),
            Isometry::Violation { .. } => prop_assert!(false, "induced coloring rejected"),
        }
    }

    #[test]
    fn flipping_one_pair_of_a_repeated_distance_breaks_isometry(space in integer_space(), bits in any::<u64>()) {
        let f = ScaleMap::from_bits(space.scale(), bits);
        let mut chi = induce_coloring(&space, &f).unwrap();
        let n = space.len();
        let repeated = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| {
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .any(|(a, b)| (a, b) != (i, j) && space.dist(a, b) == space.dist(i, j))
        });
        if let Some((i, j)) = repeated {
            chi.set(i, j, 1 - chi.get(i, j));
            let rejected = matches!(recognize_isometric(&space, &chi).unwrap(), Isometry::Violation { .. });
            prop_assert!(rejected);
        }
    }

    #[test]
    fn equidistance_matches_brute_force(space in one_two_space()) {
        let e = find_max_equidistance(&space);
        prop_assert!(is_equidistant(&space, &e.points));
        prop_assert_eq!(e.points.len(), brute_equidistance(&space));
    }

    #[test]
    fn canonical_sequences_satisfy_their_kind(space in one_two_space()) {
        let c = canonical_sequence(&space, DEFAULT_SEQUENCE_BUDGET);
        prop_assert!(c.kind.holds(&space, &c.sequence));
        prop_assert!(c.sequence.len() >= 2);
    }

    #[test]
    fn integer_sets_are_metrics(space in integer_space()) {
        prop_assert!(classify(&space).is_metric());
        prop_assert_eq!(validate(&space.matrix()).unwrap(), classify(&space));
    }

    #[test]
    fn restriction_keeps_distances(space in one_two_space(), keep in any::<u16>()) {
        let subset: Vec<usize> = (0..space.len()).filter(|&i| keep >> i & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let r = space.restrict(&subset).unwrap();
        for (a, &x) in subset.iter().enumerate() {
            for (b, &y) in subset.iter().enumerate() {
                prop_assert_eq!(r.dist(a, b), space.dist(x, y));
            }
        }
        prop_assert!(r.scale().is_subset_of(&space.scale()));
    }
}

#[test]
fn triangle_violation_is_reported() {
    let m = vec![vec![q(0), q(1), q(5)], vec![q(1), q(0), q(1)], vec![q(5), q(1), q(0)]];
    assert!(matches!(validate(&m).unwrap(), Classification::NotAMetric(_)));
    assert!(FiniteMetricSpace::new(labels(3), m).is_err());
}

#[test]
fn rational_distances_are_exact() {
    let third = Rational::new(1, 3);
    let m = vec![
        vec![q(0), third, third * q(2)],
        vec![third, q(0), third],
        vec![third * q(2), third, q(0)],
    ];
    let space = FiniteMetricSpace::new(labels(3), m).unwrap();
    assert!(matches!(space.classification(), Classification::Metric { .. }));
}
