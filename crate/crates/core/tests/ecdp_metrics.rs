use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrlattice::ecdp::{default_radius_sq, term};
use wrlattice::*;

fn lat(rows: Vec<Vec<i64>>) -> Lattice<i64> {
    Lattice::new(Matrix::from_rows(rows)).unwrap()
}

fn lambda_1() -> Lattice<i64> {
    lat(vec![vec![16, 0, 0, 0], vec![0, 4, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]])
}

fn lambda_2() -> Lattice<i64> {
    lat(vec![vec![4, 0, 0, 0], vec![0, 4, 0, 0], vec![0, 0, 4, 0], vec![0, 0, 0, 4]])
}

fn lambda_3() -> Lattice<i64> {
    lat(vec![vec![-2, -3, 4, -1], vec![0, -1, 0, 3], vec![0, -3, -2, -3], vec![-4, -1, 0, -1]])
}

fn inverse(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.iter().enumerate().map(|(i, r)| {
        let mut row = r.clone();
        row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
        row
    }).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        let d = a[c][c];
        for v in a[c].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let pivot = a[c].clone();
                for (v, pv) in a[r].iter_mut().zip(pivot) {
                    *v -= f * pv;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn series(l: &Lattice<i64>, sigma: f64, radius_sq: f64) -> EcdpValue {
    ecdp_series(l, 1.0, sigma, radius_sq).unwrap()
}

#[test]
fn series_matches_direct_summation() {
    for l in [lambda_1(), lambda_2(), lambda_3()] {
        for (sigma, r2) in [(1.0, 100.0), (2.0, 400.0), (4.0, 300.0)] {
            let fast = series(&l, sigma, r2);
            let (slow, count) = brute_series(&l, sigma, r2);
            assert_eq!(fast.points as usize, count);
            assert!((fast.value - slow).abs() <= 1e-12 * slow, "{} vs {}", fast.value, slow);
        }
    }
}

// direct summation over the coefficient box that contains the ball
fn brute_series(l: &Lattice<i64>, sigma: f64, radius_sq: f64) -> (f64, usize) {
    let b = l.basis().to_f64();
    let n = b.rows();
    let g: Vec<Vec<f64>> = (0..n).map(|i| b.gram().row(i).to_vec()).collect();
    let gi = inverse(&g);
    let bound: Vec<i64> = (0..n).map(|i| (radius_sq * gi[i][i]).sqrt().floor() as i64).collect();
    let mut x: Vec<i64> = bound.iter().map(|b| -b).collect();
    let mut sum = 0.0;
    let mut count = 0;
    'outer: loop {
        let r = b.mul_vec(&x.iter().map(|&v| v as f64).collect::<Vec<_>>());
        if r.iter().map(|v| v * v).sum::<f64>() <= radius_sq + 1e-9 {
            sum += term(&r, sigma);
            count += 1;
        }
        for i in 0..n {
            if x[i] < bound[i] {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -bound[i];
        }
        return (sum * (2.0 * sigma).powi(-(n as i32)), count);
    }
}

#[test]
fn ordering_at_sigma_two_is_truncation_stable() {
    let analytic = |e: Lattice<i64>| {
        let pair = NestedLatticePair::new(Lattice::integer(4), e).unwrap();
        ecdp_analytic(&EcdpAnalyticParams { sigma_e: 2.0, truncation_radius_sq: 400.0, pair: &pair }).unwrap().value
    };
    let a1 = analytic(lambda_1());
    let a3 = analytic(lambda_3());
    assert!(a1 > a3);
    let (b1, _) = brute_series(&lambda_1(), 2.0, 1600.0);
    let (b3, _) = brute_series(&lambda_3(), 2.0, 1600.0);
    assert!(b1 > b3);
    assert!(b1 >= a1 && b3 >= a3);
}

#[test]
fn larger_minimum_wins_between_the_minima() {
    // σ between √λ₁ of the two lattices
    let pairs = [(lambda_1(), lambda_2(), 2.0, 4.0), (lambda_2(), lambda_3(), 4.0, 20f64.sqrt()), (lambda_1(), lambda_3(), 2.0, 20f64.sqrt())];
    for (small, large, lo, hi) in pairs {
        for k in 0..=4 {
            let sigma = lo + (hi - lo) * k as f64 / 4.0;
            let r2 = default_radius_sq(sigma, 20.0).max(400.0);
            assert!(series(&large, sigma, r2).value < series(&small, sigma, r2).value, "sigma {sigma}");
        }
    }
}

#[test]
fn monotone_in_radius_and_tail_shrinks() {
    let l = lambda_3();
    let mut prev = 0.0;
    for r2 in [0.0, 20.0, 50.0, 100.0, 200.0, 400.0, 800.0] {
        let v = series(&l, 2.0, r2);
        assert!(v.value >= prev);
        prev = v.value;
    }
    let near = series(&l, 2.0, 400.0);
    assert!(near.last_shell_fraction > 0.0 && near.last_shell_fraction < 1e-3);
}

#[test]
fn product_bound_holds_on_many_integer_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100_000 {
        let r: Vec<f64> = (0..4).map(|_| rng.random_range(-30i64..=30) as f64).collect();
        let (lhs, rhs) = term_bound_check(&r, 1.0);
        assert!(lhs <= rhs, "{r:?}");
    }
}

#[test]
fn bound_holds_for_every_enumerated_point() {
    let l = lambda_3().to_f64();
    let b = l.basis().clone();
    let pts = wrlattice::enumerate::points_in_ball(&b.gram(), 300.0, 1_000_000).unwrap();
    for (x, _) in pts {
        let r = b.mul_vec(&x.iter().map(|&v| v as f64).collect::<Vec<_>>());
        let (lhs, rhs) = term_bound_check(&r, 3.0);
        assert!(lhs <= rhs);
    }
}

#[test]
fn product_distance_of_the_ring_for_d3() {
    let f = QuadraticField::new(3).unwrap();
    let ring = wrlattice::ideal::ring_of_integers_lattice(&f).lattice().unwrap();
    let got = min_product_distance(&ring, 16.0).unwrap();
    // |x² − 3y²| over the ball ‖σ(x + y√3)‖² = 2x² + 6y² ≤ 16
    let mut brute = f64::INFINITY;
    for x in -3i64..=3 {
        for y in -2i64..=2 {
            if (x, y) != (0, 0) && 2 * x * x + 6 * y * y <= 16 {
                brute = brute.min((x * x - 3 * y * y).abs() as f64);
            }
        }
    }
    assert_eq!(brute, 1.0);
    assert!((got - brute).abs() < 1e-9);
    let mut prev = f64::INFINITY;
    for r2 in [2.0, 8.0, 32.0, 128.0] {
        let v = min_product_distance(&ring, r2).unwrap();
        assert!(v <= prev + 1e-12);
        prev = v;
    }
}

fn permuted(l: &Lattice<i64>, perm: &[usize], signs: &[i64]) -> Lattice<i64> {
    let b = l.basis();
    let rows: Vec<Vec<i64>> = perm.iter().zip(signs).map(|(&p, &s)| b.row(p).iter().map(|x| x * s).collect()).collect();
    lat(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coordinate_permutations_and_sign_flips_do_not_matter(
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        signs in prop::collection::vec(prop::sample::select(vec![-1i64, 1]), 4),
        sigma in 0.5f64..6.0,
    ) {
        let l = lambda_3();
        let p = permuted(&l, &perm, &signs);
        let a = series(&l, sigma, 150.0);
        let b = series(&p, sigma, 150.0);
        prop_assert_eq!(a.points, b.points);
        prop_assert!((a.value - b.value).abs() <= 1e-12 * a.value);
    }

    #[test]
    fn bound_holds_for_real_vectors(r in prop::collection::vec(-50.0f64..50.0, 1..=6), sigma in 0.1f64..10.0) {
        let (lhs, rhs) = term_bound_check(&r, sigma);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }
}
