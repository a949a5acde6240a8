use metramsey_core::boolean::{b_space, is_invariant_coloring, is_ps_coloring, BElement};
use metramsey_core::coloring::{induce_coloring, recognize_isometric, Isometry};
use metramsey_core::metric::{classify, Classification, Metric};
use metramsey_core::{PairColoring, ScaleMap};
use proptest::prelude::*;

fn coloring_from_bits(n: usize, bits: &[u8]) -> PairColoring {
    let mut chi = PairColoring::constant(n, 0);
    let mut slot = 0;
    for i in 0..n {
        for j in i + 1..n {
            chi.set(i, j, bits[slot]);
            slot += 1;
        }
    }
    chi
}

proptest! {
    #[test]
    fn ps_and_invariance_agree(l in 2u32..=4, table in proptest::collection::vec(0u8..=1, 16), flip in any::<Option<(u8, u8)>>()) {
        let b = b_space(l).unwrap();
        let n = b.len();
        let mut chi = PairColoring::from_fn(n, |x, y| table[x ^ y]);
        if let Some((x, y)) = flip {
            let (x, y) = (x as usize % n, y as usize % n);
            if x != y {
                chi.set(x, y, 1 - chi.get(x, y));
            }
        }
        prop_assert_eq!(is_ps_coloring(&b, &chi).unwrap(), is_invariant_coloring(&b, &chi).unwrap());
    }

    #[test]
    fn isometric_colorings_are_ps(l in 1u32..=5, bits in any::<u64>()) {
        let b = b_space(l).unwrap();
        let f = ScaleMap::from_bits(b.scale(), bits);
        let chi = induce_coloring(&b.to_finite(), &f).unwrap();
        prop_assert!(is_ps_coloring(&b, &chi).unwrap());
    }

    #[test]
    fn distance_is_one_plus_top_difference(a in 0u32..1 << 12, c in 0u32..1 << 12) {
        let (x, y) = (BElement::new(a, 12).unwrap(), BElement::new(c, 12).unwrap());
        let d = metramsey_core::boolean::b_distance(x, y).unwrap();
        let expected = (0..12).rev().find(|&i| (a ^ c) >> i & 1 == 1).map_or(0, |i| i + 1);
        prop_assert_eq!(d, expected);
        prop_assert_eq!(BElement::parse(&x.to_bit_string()).unwrap(), x);
    }
}

#[test]
fn all_colorings_of_the_four_element_group() {
    let b = b_space(2).unwrap();
    for mask in 0u32..64 {
        let bits: Vec<u8> = (0..6).map(|i| (mask >> i & 1) as u8).collect();
        let chi = coloring_from_bits(4, &bits);
        assert_eq!(is_ps_coloring(&b, &chi).unwrap(), is_invariant_coloring(&b, &chi).unwrap());
    }
}

#[test]
fn boolean_spaces_are_ultrametric() {
    for l in 1..=6 {
        assert_eq!(classify(&b_space(l).unwrap()), Classification::Ultrametric, "L = {l}");
    }
}

#[test]
fn weight_parity_is_ps_but_not_isometric() {
    let b = b_space(3).unwrap();
    let chi = PairColoring::from_fn(b.len(), |x, y| ((x ^ y).count_ones() % 2) as u8);
    assert!(is_ps_coloring(&b, &chi).unwrap());
    assert!(matches!(recognize_isometric(&b.to_finite(), &chi).unwrap(), Isometry::Violation { .. }));
    assert_eq!(b.dist(0b011, 0b001), metramsey_core::Rational::from_integer(2));
}
