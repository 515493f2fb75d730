use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wrlattice::*;

fn sub_of_z(cols: Vec<Vec<i64>>) -> NestedLatticePair<i64> {
    let n = cols.len();
    NestedLatticePair::new(Lattice::integer(n), Lattice::from_columns(cols).unwrap()).unwrap()
}

fn nonsingular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
        .prop_filter("full rank", |c| Matrix::from_columns(c.clone()).determinant().unwrap() != 0)
}

#[test]
fn labels_of_the_plane_pair() {
    let p = sub_of_z(vec![vec![3, 15], vec![15, 3]]);
    assert_eq!(p.divisors(), &[3, 72]);
    let mut hist: HashMap<CosetLabel, usize> = HashMap::new();
    for x in 0..72 {
        for y in 0..72 {
            *hist.entry(p.label_of_coords(&[x, y])).or_default() += 1;
        }
    }
    assert_eq!(hist.len(), 216);
    assert!(hist.values().all(|&c| c == 24));
    assert_eq!(p.labels().count(), 216);
}

#[test]
fn rates_of_the_listed_codes() {
    let r = coset::rates(256, 4, 16);
    assert_eq!((r.r, r.r_i, r.r_c), (4.0, 2.0, 2.0));
    let r = coset::rates(216, 2, 32);
    assert!((r.r_i - 3.87744).abs() < 1e-5);
    let r = coset::rates(1, 3, 8);
    assert_eq!((r.r_i, r.r_c), (0.0, 3.0));
}

#[test]
fn four_z4_cosets_have_256_members() {
    let p = sub_of_z((0..4).map(|i| (0..4).map(|j| if i == j { 4 } else { 0 }).collect()).collect());
    let code = CosetCode::new(p, SignalingSet::new(16).unwrap()).unwrap();
    assert_eq!(code.coset_balance(), (256, 256));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let label = CosetLabel(vec![1, 2, 3, 0]);
    for _ in 0..200 {
        let w = code.encode(&label, &mut rng).unwrap();
        assert_eq!(code.pair().label_of_coords(&w.coords), label);
    }
    assert!(matches!(code.encode(&CosetLabel(vec![4, 0, 0, 0]), &mut rng), Err(Error::LabelOutOfRange { .. })));
}

#[test]
fn skewed_sublattice_needs_a_large_box() {
    let p = sub_of_z(vec![vec![-2, 0, 0, -4], vec![-3, -1, -3, -1], vec![4, 0, -2, 0], vec![-1, 3, -3, -1]]);
    assert!(matches!(CosetCode::new(p.clone(), SignalingSet::new(4).unwrap()), Err(Error::EmptyCoset { .. })));
    let code = CosetCode::new(p, SignalingSet::new(16).unwrap()).unwrap();
    assert_eq!(code.coset_balance(), (256, 256));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labels_are_constant_on_cosets(
        cols in (2usize..=4).prop_flat_map(nonsingular),
        x in prop::collection::vec(-50i64..=50, 4),
        k in prop::collection::vec(-5i64..=5, 4),
    ) {
        let n = cols.len();
        let p = sub_of_z(cols.clone());
        let x = &x[..n];
        let r: Vec<i64> = (0..n).map(|i| (0..n).map(|j| cols[j][i] * k[j]).sum()).collect();
        let shifted: Vec<i64> = x.iter().zip(&r).map(|(a, b)| a + b).collect();
        prop_assert_eq!(p.label_of_coords(x), p.label_of_coords(&shifted));
        prop_assert_eq!(p.coset_label(x).unwrap(), p.label_of_coords(x));
    }

    #[test]
    fn divisor_product_is_the_index(cols in (1usize..=4).prop_flat_map(nonsingular)) {
        let p = sub_of_z(cols.clone());
        let det = Matrix::from_columns(cols).determinant().unwrap().unsigned_abs();
        prop_assert_eq!(p.divisors().iter().product::<u64>(), det);
        prop_assert_eq!(p.index(), det);
        prop_assert_eq!(coset::coefficient_index(p.coeff()).unwrap(), det);
    }

    #[test]
    fn every_label_is_hit_once_per_ordinal(cols in (2usize..=3).prop_flat_map(nonsingular)) {
        let p = sub_of_z(cols);
        for (o, l) in p.labels().enumerate() {
            prop_assert_eq!(p.label_ordinal(&l), o as u64);
        }
    }
}
