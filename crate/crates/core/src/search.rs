//! Searches for well-rounded sublattices of `ℤⁿ` with a prescribed index.
//!
//! The probabilistic search samples `n` vectors of one squared norm `m`, keeps
//! those spanning a lattice of the right index, and accepts the lattice when its
//! minimum is exactly `m`. The exhaustive search walks every Hermite normal form
//! of the given determinant and serves as its oracle.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::QuadraticDecomposition;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{det_i64_columns, Matrix};
use crate::minima::{classify_coefficients, gram_minimum, hermite_candidate_norms, HermiteTable, WrClass};
use crate::normal_form::hermite_normal_form;

pub const DEFAULT_MAX_ITERATIONS: u64 = 1_000_000;
/// Exhaustive mode limits.
pub const EXHAUSTIVE_MAX_DIM: usize = 4;
pub const EXHAUSTIVE_MAX_INDEX: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Probabilistic,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub target_index: u64,
    /// Squared norms to try; must lie in the Hermite interval of `(n, target_index)`.
    pub norm_candidates: Vec<u64>,
    pub max_iterations: u64,
    pub seed: u64,
    pub mode: SearchMode,
}

impl SearchConfig {
    /// Probabilistic search over every admissible norm with the default budget.
    pub fn new(n: usize, target_index: u64) -> Result<Self> {
        if target_index == 0 {
            return Err(Error::InvalidConfig("target index must be positive".into()));
        }
        let norms = hermite_candidate_norms(n, target_index as f64)?;
        Ok(SearchConfig {
            n,
            target_index,
            norm_candidates: norms.collect(),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed: 0,
            mode: SearchMode::Probabilistic,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > HermiteTable::MAX_DIM {
            return Err(Error::UnsupportedDimension(self.n));
        }
        if self.target_index == 0 {
            return Err(Error::InvalidConfig("target index must be positive".into()));
        }
        let range = hermite_candidate_norms(self.n, self.target_index as f64)?;
        if let Some(bad) = self.norm_candidates.iter().find(|m| !range.contains(m)) {
            return Err(Error::InvalidConfig(format!(
                "norm {bad} is outside the admissible range {}..={} for n = {}, index {}",
                range.start(),
                range.end(),
                self.n,
                self.target_index
            )));
        }
        if self.mode == SearchMode::Exhaustive && (self.n > EXHAUSTIVE_MAX_DIM || self.target_index > EXHAUSTIVE_MAX_INDEX) {
            return Err(Error::BoundsExceeded(format!(
                "exhaustive search needs n ≤ {EXHAUSTIVE_MAX_DIM} and index ≤ {EXHAUSTIVE_MAX_INDEX}"
            )));
        }
        Ok(())
    }
}

/// One WR sublattice found by a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Basis columns: the sampled vectors, or the Hermite form in exhaustive mode.
    pub basis: Vec<Vec<i64>>,
    /// Column Hermite normal form, the identity of the lattice.
    pub hnf: Vec<Vec<i64>>,
    pub lambda1_sq: u64,
    pub index: u64,
    pub wr_class: WrClass,
    /// Iterations consumed when the lattice was first seen.
    pub iterations_used: u64,
}

impl SearchHit {
    pub fn lattice(&self) -> Lattice<i64> {
        Lattice::from_columns(self.basis.clone()).expect("search hits are full rank")
    }
}

/// Every `v ∈ ℤⁿ` with `‖v‖² = m`, one per ± pair (first nonzero entry positive).
pub fn vectors_of_norm(n: usize, m: u64) -> Vec<Vec<i64>> {
    fn rec(i: usize, left: i64, v: &mut Vec<i64>, leading: bool, out: &mut Vec<Vec<i64>>) {
        if i == v.len() {
            if left == 0 {
                out.push(v.clone());
            }
            return;
        }
        let rest = (v.len() - i - 1) as i64;
        let bound = (left as f64).sqrt() as i64 + 1;
        for x in -bound..=bound {
            let sq = x * x;
            if sq > left || (leading && x < 0) {
                continue;
            }
            // remaining coordinates can absorb at most `left - sq`; zero rest needs exact fit
            if rest == 0 && sq != left {
                continue;
            }
            v[i] = x;
            rec(i + 1, left - sq, v, leading && x == 0, out);
        }
        v[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 || m == 0 {
        return out;
    }
    rec(0, m as i64, &mut vec![0; n], true, &mut out);
    out
}

pub fn run_search(config: &SearchConfig) -> Result<Vec<SearchHit>> {
    match config.mode {
        SearchMode::Probabilistic => probabilistic_wr_search(config),
        SearchMode::Exhaustive => exhaustive_wr_search(config),
    }
}

/// Random sampling of same-norm vector tuples.
///
/// Norms are tried from largest to smallest, each with an equal share of the
/// budget. Iteration `i` draws from its own ChaCha stream `(seed, i)`.
pub fn probabilistic_wr_search(config: &SearchConfig) -> Result<Vec<SearchHit>> {
    config.validate()?;
    let n = config.n;
    let mut norms = config.norm_candidates.clone();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    norms.dedup();
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let mut seen: HashMap<Vec<Vec<i64>>, Option<WrClass>> = HashMap::new();
    let mut hits = Vec::new();
    let mut iteration = 0u64;
    let k = norms.len().max(1) as u64;
    for (slot, &m) in norms.iter().enumerate() {
        let share = config.max_iterations / k + u64::from((slot as u64) < config.max_iterations % k);
        let pool = vectors_of_norm(n, m);
        if pool.len() < n {
            iteration += share;
            continue;
        }
        for _ in 0..share {
            let mut rng = base.clone();
            rng.set_stream(iteration);
            iteration += 1;
            let cols: Vec<Vec<i64>> = (0..n).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect();
            match det_i64_columns(&cols) {
                Some(d) if d.unsigned_abs() == config.target_index as u128 => {}
                _ => continue,
            }
            let hnf = hnf_key(&cols)?;
            if seen.contains_key(&hnf) {
                continue;
            }
            let class = match wr_minimum(&hnf)? {
                (l, c) if l == m => c,
                _ => None,
            };
            seen.insert(hnf.clone(), class);
            if let Some(wr_class) = class {
                hits.push(SearchHit { basis: cols, hnf, lambda1_sq: m, index: config.target_index, wr_class, iterations_used: iteration });
            }
        }
    }
    if hits.is_empty() {
        return Err(Error::BudgetExhausted { iterations: iteration });
    }
    sort_hits(&mut hits);
    Ok(hits)
}

/// Every Hermite normal form of determinant `target_index`, filtered to WR lattices
/// whose minimum lies in the declared norm set.
pub fn exhaustive_wr_search(config: &SearchConfig) -> Result<Vec<SearchHit>> {
    let mut cfg = config.clone();
    cfg.mode = SearchMode::Exhaustive;
    cfg.validate()?;
    let n = cfg.n;
    let norms: HashSet<u64> = cfg.norm_candidates.iter().copied().collect();
    // every column is a lattice vector, so a WR lattice has all columns of norm ≥ min norm
    let floor = cfg.norm_candidates.iter().copied().min().unwrap_or(u64::MAX) as i64;
    let mut hits = Vec::new();
    let mut visited = 0u64;
    for diag in ordered_factorizations(cfg.target_index, n) {
        let mut cols = vec![vec![0i64; n]; n];
        walk_columns(&mut cols, &diag, n - 1, floor, &mut |cols| {
            visited += 1;
            let (m, class) = wr_minimum(cols)?;
            if let (Some(wr_class), true) = (class, norms.contains(&m)) {
                hits.push(SearchHit {
                    basis: cols.to_vec(),
                    hnf: cols.to_vec(),
                    lambda1_sq: m,
                    index: cfg.target_index,
                    wr_class,
                    iterations_used: visited,
                });
            }
            Ok(())
        })?;
    }
    sort_hits(&mut hits);
    Ok(hits)
}

// Builds Hermite forms column by column from the last one. Columns j..n already
// span a sublattice, so a vector shorter than `floor` there rules out the branch.
fn walk_columns<F>(cols: &mut Vec<Vec<i64>>, diag: &[u64], j: usize, floor: i64, emit: &mut F) -> Result<()>
where
    F: FnMut(&[Vec<i64>]) -> Result<()>,
{
    let n = diag.len();
    let below: Vec<u64> = diag[j + 1..].to_vec();
    let count: u64 = below.iter().product();
    for code in 0..count {
        let mut rest = code;
        let mut col = vec![0i64; n];
        col[j] = diag[j] as i64;
        for (k, &d) in below.iter().enumerate() {
            col[j + 1 + k] = (rest % d) as i64;
            rest /= d;
        }
        if col.iter().map(|x| x * x).sum::<i64>() < floor {
            continue;
        }
        cols[j] = col;
        if has_short_vector(&cols[j..], floor) {
            continue;
        }
        if j == 0 {
            emit(cols)?;
        } else {
            walk_columns(cols, diag, j - 1, floor, emit)?;
        }
    }
    Ok(())
}

// some nonzero integer combination of `cols` has squared norm below `floor`
fn has_short_vector(cols: &[Vec<i64>], floor: i64) -> bool {
    if cols.len() == 1 {
        return cols[0].iter().map(|x| x * x).sum::<i64>() < floor;
    }
    let g = Matrix::from_columns(cols.to_vec()).gram().map(|&x| x as f64);
    match QuadraticDecomposition::new(&g) {
        Ok(dec) => !dec.for_each_in_ball(floor as f64 - 0.5, |_, _| false),
        Err(_) => true,
    }
}

/// Ordered tuples of `n` positive integers with product `target`.
fn ordered_factorizations(target: u64, n: usize) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![target]];
    }
    let mut out = Vec::new();
    for d in 1..=target {
        if target % d == 0 {
            for mut rest in ordered_factorizations(target / d, n - 1) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

// minimum and, when WR, the class
fn wr_minimum(cols: &[Vec<i64>]) -> Result<(u64, Option<WrClass>)> {
    let gram = Matrix::from_columns(cols.to_vec()).gram().map(|&x| x as i128);
    let min = gram_minimum(&gram)?;
    let (class, _, _) = classify_coefficients(cols.len(), &min.coefficients)?;
    Ok((min.lambda1 as u64, class.is_wr().then_some(class)))
}

fn hnf_key(cols: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let m = Matrix::from_columns(cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect());
    let h = hermite_normal_form(&m)?;
    Ok(h.columns().iter().map(|c| c.iter().map(|x| i64::try_from(x).expect("HNF entries bounded by the index")).collect()).collect())
}

fn sort_hits(hits: &mut [SearchHit]) {
    hits.sort_by(|a, b| b.lambda1_sq.cmp(&a.lambda1_sq).then_with(|| a.hnf.cmp(&b.hnf)));
}
