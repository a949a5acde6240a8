mod common;

use common::{class_transversal, is_equidistant, random_tree};
use metramsey_core::boolean::{b_profile_tree, b_space};
use metramsey_core::coloring::{induce_coloring, max_monochrome};
use metramsey_core::metric::{classify, Classification, Metric, Partition};
use metramsey_core::tree::{check_guarantee, from_partition, partition_order, TreeError};
use metramsey_core::ScaleMap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree(seed: u64) -> metramsey_core::ProfileTree {
    random_tree(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn materializations_are_ultrametric(seed in any::<u64>(), budget in 1usize..=64) {
        let t = tree(seed);
        let m = t.materialize(budget).unwrap();
        prop_assert!(m.space.len() <= budget);
        prop_assert!(m.space.len() == budget || !t.is_infinite());
        prop_assert_eq!(classify(&m.space), Classification::Ultrametric);
        prop_assert!(m.space.scale().is_subset_of(&t.scale()));
        prop_assert_eq!(&t.materialize(budget).unwrap(), &m);
    }

    #[test]
    fn larger_budgets_extend_full_rounds(seed in any::<u64>(), budget in 1usize..=40) {
        let t = tree(seed);
        let m = t.materialize(budget).unwrap();
        prop_assume!(!m.truncated);
        let round = t.materialize_round(m.round, 4096).unwrap();
        for label in round.space.labels() {
            prop_assert!(m.space.index_of(label).is_some());
        }
    }

    #[test]
    fn obstruction_bound_is_exact(seed in any::<u64>(), budget in 2usize..=12) {
        let t = tree(seed);
        match t.obstruction_coloring(budget) {
            Err(TreeError::Universal) => prop_assert!(t.decide_universal_ramsey().universal),
            Err(e) => prop_assert!(false, "{e}"),
            Ok(o) => {
                let map = o.map.restrict(&o.space.scale()).unwrap();
                let chi = induce_coloring(&o.space, &map).unwrap();
                prop_assert_eq!(max_monochrome(&chi).points.len(), o.bound);
            }
        }
    }

    #[test]
    fn universal_samples_have_monochrome_transversals(seed in any::<u64>(), bits in any::<u64>()) {
        let t = tree(seed);
        prop_assume!(t.decide_universal_ramsey().universal);
        let m = t.materialize(12).unwrap();
        let y = class_transversal(&m.space, t.levels());
        prop_assert!(is_equidistant(&m.space, &y));
        let f = ScaleMap::from_bits(m.space.scale(), bits);
        let chi = induce_coloring(&m.space, &f).unwrap();
        prop_assert!(chi.is_monochrome(&y));
        prop_assert!(max_monochrome(&chi).points.len() >= y.len());
    }

    #[test]
    fn witness_guarantee(seed in any::<u64>(), k in 1usize..=10) {
        let t = tree(seed);
        match t.witness_set(k) {
            Ok(w) => {
                let mut seq = vec![w.anchor];
                seq.extend(&w.points);
                prop_assert!(w.kind.holds(&w.space, &seq));
                prop_assert!(check_guarantee(&w.space, &w.points, &w.h).is_ok());
            }
            Err(TreeError::TooSmall { .. }) => prop_assert!(!t.is_infinite()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn partition_trees_reproduce_the_two_value_metric(blocks in proptest::collection::vec(0usize..4, 1..=8)) {
        let n = blocks.len();
        let mut cells = vec![Vec::new(); 4];
        for (p, &b) in blocks.iter().enumerate() {
            cells[b].push(p);
        }
        cells.retain(|c| !c.is_empty());
        let p = Partition::new(cells, n).unwrap();
        let m = from_partition(&p).materialize(n).unwrap();
        let order = partition_order(&p);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 0 } else if blocks[order[i]] == blocks[order[j]] { 1 } else { 2 };
                prop_assert_eq!(m.space.dist(i, j), common::q(expect));
            }
        }
    }
}

#[test]
fn boolean_tree_matches_boolean_space() {
    for l in 1..=6 {
        let m = b_profile_tree(l).unwrap().materialize(1 << l).unwrap();
        let b = b_space(l).unwrap();
        assert!(!m.truncated);
        for i in 0..b.len() {
            for j in 0..b.len() {
                assert_eq!(m.space.dist(i, j), b.dist(i, j));
            }
        }
    }
}
