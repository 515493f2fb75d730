use num_bigint::BigInt;
use proptest::prelude::*;
use wrlattice::ideal::{ideals_of_norm, principal_generator, ring_of_integers_lattice, square_free_range};
use wrlattice::*;

// generator of the ideal by brute force over a (p, q) box, if any
fn brute_generator(il: &IdealLattice, range: i64) -> Option<QuadraticInteger> {
    let f = il.field();
    let n = BigInt::from(il.norm());
    for q in -range..=range {
        for p in -4 * range..=4 * range {
            let Ok(x) = f.element(p, q) else { continue };
            if x.abs_norm() == n && il.contains(&x) {
                return Some(x);
            }
        }
    }
    None
}

#[test]
fn principality_agrees_with_brute_force() {
    // fields whose fundamental unit is small enough for a box search to be exhaustive
    for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 30, 35] {
        let f = QuadraticField::new(d).unwrap();
        for norm in 1..=40 {
            for il in ideals_of_norm(&f, norm) {
                let fast = principal_generator(&il);
                let slow = brute_generator(&il, 60);
                assert_eq!(fast.is_some(), slow.is_some(), "D = {d}, N = {norm}");
                if let Some(g) = fast {
                    assert_eq!(g.abs_norm(), BigInt::from(norm));
                    assert!(il.contains(&g));
                }
            }
        }
    }
}

fn same_ideal(a: &IdealLattice, b: &IdealLattice) -> bool {
    a.norm() == b.norm() && a.basis_elements().iter().all(|x| b.contains(x))
}

#[test]
fn listed_generators_are_found_by_the_scan() {
    let rows: [(i64, i64, i64, u64); 10] = [
        (3, 6, 2, 6),
        (15, 10, 2, 10),
        (35, 14, 2, 14),
        (143, 26, 2, 26),
        (195, 30, 2, 30),
        (21, 7, -1, 7),
        (77, 11, -1, 11),
        (165, 15, -1, 15),
        (221, 17, -1, 17),
        (285, 19, -1, 19),
    ];
    let ds: Vec<i64> = rows.iter().map(|r| r.0).collect();
    let hits = wr_principal_scan(&ds, 2.0).unwrap();
    for (d, p, q, index) in rows {
        let f = QuadraticField::new(d).unwrap();
        let alpha = f.element(p, q).unwrap();
        assert_eq!(element_norm(&f, &alpha).unwrap(), BigInt::from(index));
        let listed = principal_ideal_lattice(&f, &alpha).unwrap();
        let found = hits.iter().filter(|h| h.d == d && h.index == index).any(|h| {
            same_ideal(&principal_ideal_lattice(&f, &h.generator).unwrap(), &listed)
        });
        assert!(found, "D = {d}");
        assert!(is_wr_ideal(&listed).unwrap().class.is_wr());
    }
    assert!(hits.iter().all(|h| h.largenorm_ok && h.class.is_wr()));
}

#[test]
fn even_fields_have_no_small_wr_principal_ideals() {
    let even: Vec<i64> = square_free_range(2, 100).into_iter().filter(|d| d % 2 == 0).collect();
    assert!(wr_principal_scan(&even, 2.0).unwrap().is_empty());
}

#[test]
fn scan_is_deterministic_and_sorted() {
    let ds = [21i64, 3, 15];
    let a = wr_principal_scan(&ds, 2.0).unwrap();
    let b = wr_principal_scan(&ds, 2.0).unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| (w[0].d, w[0].index) <= (w[1].d, w[1].index)));
    assert!(matches!(wr_principal_scan(&[12], 2.0), Err(Error::NotSquareFree(12))));
}

#[test]
fn normalized_ideal_lattices() {
    let f3 = QuadraticField::new(3).unwrap();
    let i1 = principal_ideal_lattice(&f3, &f3.from_parts(18, 6)).unwrap();
    assert_eq!(i1.norm(), 216);
    let n1 = normalize_to_covolume(&i1.lattice().unwrap(), 216.0).unwrap();
    let l1 = shortest_vectors(&n1).unwrap().lambda1;
    assert!((l1 - 864.0 / 12f64.sqrt()).abs() < 1e-9 * l1);
    assert!((l1 - 249.42).abs() < 0.005);
    let f15 = QuadraticField::new(15).unwrap();
    let i2 = principal_ideal_lattice(&f15, &f15.from_parts(18, 6)).unwrap();
    let n2 = normalize_to_covolume(&i2.lattice().unwrap(), 216.0).unwrap();
    let l2 = shortest_vectors(&n2).unwrap().lambda1;
    assert!((l2 - 223.08).abs() < 0.005);
    let same = normalize_to_covolume(&n2, 216.0).unwrap();
    assert!((same.basis()[(0, 0)] - n2.basis()[(0, 0)]).abs() < 1e-9);
}

#[test]
fn ring_volumes_are_root_discriminant() {
    for d in square_free_range(2, 200) {
        let f = QuadraticField::new(d).unwrap();
        let v = ring_of_integers_lattice(&f).lattice().unwrap().volume_f64();
        assert!((v / (f.discriminant() as f64).sqrt() - 1.0).abs() < 1e-9, "D = {d}");
    }
}

fn field_strategy() -> impl Strategy<Value = QuadraticField> {
    prop::sample::select(square_free_range(2, 60)).prop_map(|d| QuadraticField::new(d).unwrap())
}

fn element(f: QuadraticField) -> impl Strategy<Value = QuadraticInteger> {
    (-40i64..=40, -40i64..=40).prop_map(move |(x0, x1)| f.from_basis_coords(x0, x1))
}

proptest! {
    #[test]
    fn norm_is_multiplicative((a, b) in field_strategy().prop_flat_map(|f| (element(f), element(f)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.abs_norm(), a.abs_norm() * b.abs_norm());
    }

    #[test]
    fn index_equals_norm(a in field_strategy().prop_flat_map(element)) {
        prop_assume!(!a.is_zero());
        let f = QuadraticField::new(a.d()).unwrap();
        let il = principal_ideal_lattice(&f, &a).unwrap();
        let lf = ring_of_integers_lattice(&f).lattice().unwrap();
        let li = il.lattice().unwrap();
        let ratio = li.volume_f64() / lf.volume_f64();
        prop_assert!((ratio / il.norm() as f64 - 1.0).abs() < 1e-9);
        prop_assert_eq!(BigInt::from(il.norm()), element_norm(&f, &a).unwrap());
        let r = coset::rates(il.norm(), 2, 2);
        prop_assert!((r.r_i - (il.norm() as f64).log2() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn wr_ideals_pass_largenorm(a in field_strategy().prop_flat_map(element)) {
        prop_assume!(!a.is_zero());
        let f = QuadraticField::new(a.d()).unwrap();
        let il = principal_ideal_lattice(&f, &a).unwrap();
        if is_wr_ideal(&il).unwrap().class.is_wr() {
            prop_assert!(largenorm_check(&il).unwrap());
        }
    }
}
