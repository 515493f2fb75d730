use std::collections::BTreeSet;

use proptest::prelude::*;
use wrlattice::*;

// (a, b, d) with basis columns (a, b), (0, d); minimum and WR flag by scanning a box
fn brute_plane(index: i64) -> BTreeSet<(i64, i64, i64, u64)> {
    let mut out = BTreeSet::new();
    for a in 1..=index {
        if index % a != 0 {
            continue;
        }
        let d = index / a;
        for b in 0..d {
            let member = |x: i64, y: i64| x % a == 0 && (y - (x / a) * b).rem_euclid(d) == 0;
            let bound = (a * a + b * b).min(d * d);
            let r = (bound as f64).sqrt() as i64 + 1;
            let mut min = i64::MAX;
            let mut shortest = Vec::new();
            for x in -r..=r {
                for y in -r..=r {
                    if (x, y) == (0, 0) || !member(x, y) {
                        continue;
                    }
                    let n = x * x + y * y;
                    if n < min {
                        min = n;
                        shortest.clear();
                    }
                    if n == min {
                        shortest.push((x, y));
                    }
                }
            }
            let wr = shortest.iter().any(|p| shortest.iter().any(|q| p.0 * q.1 - p.1 * q.0 != 0));
            if wr {
                out.insert((a, b, d, min as u64));
            }
        }
    }
    out
}

fn as_triples(hits: &[SearchHit]) -> BTreeSet<(i64, i64, i64, u64)> {
    hits.iter().map(|h| (h.hnf[0][0], h.hnf[0][1], h.hnf[1][1], h.lambda1_sq)).collect()
}

fn config(n: usize, index: u64, mode: SearchMode, seed: u64, iterations: u64) -> SearchConfig {
    let mut c = SearchConfig::new(n, index).unwrap();
    c.mode = mode;
    c.seed = seed;
    c.max_iterations = iterations;
    c
}

#[test]
fn exhaustive_plane_matches_brute_force() {
    for index in 1..=50u64 {
        let cfg = config(2, index, SearchMode::Exhaustive, 0, 0);
        let got = as_triples(&exhaustive_wr_search(&cfg).unwrap());
        assert_eq!(got, brute_plane(index as i64), "index {index}");
    }
}

#[test]
fn probabilistic_plane_hits_are_exhaustive_hits() {
    for index in 1..=50u64 {
        let all = as_triples(&exhaustive_wr_search(&config(2, index, SearchMode::Exhaustive, 0, 0)).unwrap());
        match probabilistic_wr_search(&config(2, index, SearchMode::Probabilistic, index, 20_000)) {
            Ok(hits) => {
                let got = as_triples(&hits);
                assert!(got.is_subset(&all), "index {index}");
                assert_eq!(got, all, "index {index}: a 20k budget covers the plane");
            }
            Err(Error::BudgetExhausted { .. }) => assert!(all.is_empty(), "index {index}"),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn hits_are_what_they_claim() {
    for cfg in [config(3, 64, SearchMode::Exhaustive, 0, 0), config(4, 81, SearchMode::Probabilistic, 5, 50_000)] {
        for h in run_search(&cfg).unwrap() {
            let l = h.lattice();
            assert_eq!(sublattice_index(&l, &Lattice::integer(cfg.n)).unwrap(), cfg.target_index);
            let r = classify_wr(&l).unwrap();
            assert_eq!(r.lambda1 as u64, h.lambda1_sq);
            assert_eq!(r.class, h.wr_class);
            assert!(r.class.is_wr());
            let hl = Lattice::from_columns(h.hnf.clone()).unwrap();
            assert_eq!(sublattice_index(&hl, &l).unwrap(), 1);
        }
    }
}

#[test]
fn plane_index_216_contains_the_symmetric_lattice() {
    let target = Lattice::from_columns(vec![vec![3i64, 15], vec![15, 3]]).unwrap();
    for mode in [SearchMode::Exhaustive, SearchMode::Probabilistic] {
        let hits = run_search(&config(2, 216, mode, 1, 100_000)).unwrap();
        let found = hits.iter().any(|h| h.lambda1_sq == 234 && sublattice_index(&h.lattice(), &target) == Ok(1));
        assert!(found, "{mode:?}");
        assert_eq!(hits[0].lambda1_sq, 234);
    }
}

#[test]
fn four_dimensional_targets() {
    let hits = probabilistic_wr_search(&config(4, 256, SearchMode::Probabilistic, 7, 1_000_000)).unwrap();
    assert_eq!(hits[0].lambda1_sq, 20);
    assert!(hits.iter().all(|h| (16..=22).contains(&h.lambda1_sq)));
    let mut cfg = config(4, 302, SearchMode::Probabilistic, 7, 1_000_000);
    cfg.norm_candidates = vec![22];
    let hits = probabilistic_wr_search(&cfg).unwrap();
    assert!(hits.iter().all(|h| h.lambda1_sq == 22 && h.index == 302));
}

#[test]
fn same_seed_same_hits() {
    let cfg = config(3, 50, SearchMode::Probabilistic, 11, 30_000);
    assert_eq!(probabilistic_wr_search(&cfg), probabilistic_wr_search(&cfg));
    let mut other = cfg.clone();
    other.seed = 12;
    let a = as_triples_any(&probabilistic_wr_search(&cfg).unwrap());
    let b = as_triples_any(&probabilistic_wr_search(&other).unwrap());
    let all = as_triples_any(&exhaustive_wr_search(&config(3, 50, SearchMode::Exhaustive, 0, 0)).unwrap());
    assert!(a.is_subset(&all) && b.is_subset(&all));
}

fn as_triples_any(hits: &[SearchHit]) -> BTreeSet<Vec<Vec<i64>>> {
    hits.iter().map(|h| h.hnf.clone()).collect()
}

#[test]
fn invalid_requests() {
    assert_eq!(SearchConfig::new(9, 10).err(), Some(Error::UnsupportedDimension(9)));
    let mut c = config(2, 10, SearchMode::Probabilistic, 0, 10);
    c.norm_candidates = vec![1000];
    assert!(matches!(run_search(&c), Err(Error::InvalidConfig(_))));
    let c = config(5, 32, SearchMode::Exhaustive, 0, 0);
    assert!(matches!(run_search(&c), Err(Error::BoundsExceeded(_))));
    let hits = run_search(&config(2, 1, SearchMode::Probabilistic, 0, 100)).unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].hnf, vec![vec![1, 0], vec![0, 1]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_output_obeys_hermite_bounds(n in 2usize..=4, index in 2u64..=60, seed in any::<u64>()) {
        let cfg = config(n, index, SearchMode::Probabilistic, seed, 5_000);
        if let Ok(hits) = probabilistic_wr_search(&cfg) {
            for h in hits {
                prop_assert!(hermite_bounds_hold(n, h.lambda1_sq as f64, index as f64).unwrap());
            }
        }
    }
}
