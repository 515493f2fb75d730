//! Minimum distance, minimal vectors, well-roundedness and Hermite bounds.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::enumerate::{is_sign_canonical, QuadraticDecomposition};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, DEFAULT_TOL};
use crate::lll::{lll_reduce_gram, DEFAULT_DELTA};
use crate::matrix::{bigint_to_i64, integer_rank, Matrix};
use crate::normal_form::hermite_normal_form;
use crate::scalar::Scalar;

/// Minimum and minimal vectors of a quadratic form, in the coordinates of the
/// basis the Gram matrix was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMinimum<T> {
    pub lambda1: T,
    /// One coefficient vector per ± pair, first nonzero entry positive, sorted.
    pub coefficients: Vec<Vec<i64>>,
}

/// `λ₁` (a squared length) and the minimal vectors `S(Λ)` up to sign.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortVectorReport<T> {
    pub lambda1: T,
    pub minimal_vectors: Vec<Vec<T>>,
    /// Coefficients of each minimal vector in the lattice basis.
    pub coefficients: Vec<Vec<i64>>,
    /// Kissing number: every minimal vector counted with both signs.
    pub count_with_signs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WrClass {
    NotWr,
    Wr,
    StronglyWr,
}

impl WrClass {
    pub fn is_wr(self) -> bool {
        self != WrClass::NotWr
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WrClass::NotWr => "not_wr",
            WrClass::Wr => "wr",
            WrClass::StronglyWr => "strongly_wr",
        }
    }
}

impl std::fmt::Display for WrClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification together with `n` independent minimal vectors when WR.
#[derive(Debug, Clone, PartialEq)]
pub struct WrReport<T> {
    pub class: WrClass,
    pub lambda1: T,
    pub witness: Vec<Vec<T>>,
    pub minimal_rank: usize,
}

/// Minimum of the positive definite form `gram`.
///
/// The LLL-reduced form bounds the search radius by its smallest diagonal entry;
/// the ball is enumerated in double precision with a small slack and, for
/// integer kinds, every candidate norm is re-evaluated exactly.
pub fn gram_minimum<T: Scalar>(gram: &Matrix<T>) -> Result<GramMinimum<T>> {
    let n = gram.rows();
    if !gram.is_square() || n == 0 {
        return Err(Error::DegenerateLattice);
    }
    let reduced = lll_reduce_gram(gram, DEFAULT_DELTA)?;
    let rg = reduced.gram.to_f64();
    let radius = (0..n).map(|i| rg[(i, i)]).fold(f64::INFINITY, f64::min);
    let dec = QuadraticDecomposition::new(&rg)?;
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    dec.for_each_in_ball(radius * (1.0 + 1e-7) + 1e-9, |x, _| {
        if is_sign_canonical(x) {
            candidates.push(x.to_vec());
        }
        true
    });
    if candidates.is_empty() {
        return Err(Error::DegenerateLattice);
    }

    let u = &reduced.transform;
    let to_original = |y: &[i64]| -> Result<Vec<i64>> {
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let mut c: Vec<i64> = u.mul_vec(&yb).iter().map(bigint_to_i64).collect::<Result<_>>()?;
        if !is_sign_canonical(&c) {
            c.iter_mut().for_each(|v| *v = -*v);
        }
        Ok(c)
    };

    let (lambda1, mut coefficients) = match reduced.gram.to_bigint() {
        Some(gb) => {
            let norms: Vec<BigInt> = candidates
                .iter()
                .map(|y| gb.quadratic_form(&y.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()))
                .collect();
            let min = norms.iter().min().cloned().expect("nonempty");
            let coeffs = candidates
                .iter()
                .zip(&norms)
                .filter(|(_, m)| **m == min)
                .map(|(y, _)| to_original(y))
                .collect::<Result<Vec<_>>>()?;
            (T::from_bigint(&min).ok_or(Error::Overflow)?, coeffs)
        }
        None => {
            let norms: Vec<f64> =
                candidates.iter().map(|y| rg.quadratic_form(&y.iter().map(|&v| v as f64).collect::<Vec<_>>())).collect();
            let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
            let coeffs = candidates
                .iter()
                .zip(&norms)
                .filter(|(_, m)| **m <= min * (1.0 + DEFAULT_TOL))
                .map(|(y, _)| to_original(y))
                .collect::<Result<Vec<_>>>()?;
            (T::from_f64_value(min).ok_or(Error::Overflow)?, coeffs)
        }
    };
    if !(lambda1 > T::zero()) {
        return Err(Error::DegenerateLattice);
    }
    coefficients.sort();
    Ok(GramMinimum { lambda1, coefficients })
}

pub fn shortest_vectors<T: Scalar>(lattice: &Lattice<T>) -> Result<ShortVectorReport<T>> {
    let m = gram_minimum(lattice.gram())?;
    let minimal_vectors = m.coefficients.iter().map(|c| lattice.point(c)).collect();
    Ok(ShortVectorReport {
        lambda1: m.lambda1,
        minimal_vectors,
        count_with_signs: 2 * m.coefficients.len(),
        coefficients: m.coefficients,
    })
}

/// Class of a set of minimal coefficient vectors of an `n`-dimensional lattice.
/// Returns the class and the indices of `n` independent vectors when WR.
pub fn classify_coefficients(n: usize, coefficients: &[Vec<i64>]) -> Result<(WrClass, Vec<usize>, usize)> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<i64>> = Vec::new();
    for (i, c) in coefficients.iter().enumerate() {
        picked.push(c.clone());
        if integer_rank(&picked) > chosen.len() {
            chosen.push(i);
            if chosen.len() == n {
                break;
            }
        } else {
            picked.pop();
        }
    }
    let rank = chosen.len();
    if rank < n {
        return Ok((WrClass::NotWr, Vec::new(), rank));
    }
    // S(Λ) generates Λ iff the coefficient vectors span ℤⁿ
    let span = Matrix::from_columns(coefficients.iter().map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect());
    let h = hermite_normal_form(&span)?;
    let index: BigInt = (0..n).map(|i| h[(i, i)].clone()).product();
    let class = if index.is_one() { WrClass::StronglyWr } else { WrClass::Wr };
    Ok((class, chosen, rank))
}

pub fn classify_wr<T: Scalar>(lattice: &Lattice<T>) -> Result<WrReport<T>> {
    let report = shortest_vectors(lattice)?;
    wr_from_report(lattice.dim(), &report)
}

pub fn wr_from_report<T: Scalar>(n: usize, report: &ShortVectorReport<T>) -> Result<WrReport<T>> {
    let (class, chosen, minimal_rank) = classify_coefficients(n, &report.coefficients)?;
    Ok(WrReport {
        class,
        lambda1: report.lambda1.clone(),
        witness: chosen.iter().map(|&i| report.minimal_vectors[i].clone()).collect(),
        minimal_rank,
    })
}

/// Hermite constants `γₙ`, `n = 1..=8`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HermiteTable;

impl HermiteTable {
    pub const MAX_DIM: usize = 8;

    /// `γₙⁿ` as an exact fraction (numerator, denominator).
    pub fn gamma_pow_n(n: usize) -> Result<(u64, u64)> {
        const TABLE: [(u64, u64); 8] = [(1, 1), (4, 3), (2, 1), (4, 1), (8, 1), (64, 3), (64, 1), (256, 1)];
        n.checked_sub(1).and_then(|i| TABLE.get(i)).copied().ok_or(Error::UnsupportedDimension(n))
    }

    pub fn gamma(n: usize) -> Result<f64> {
        let (a, b) = Self::gamma_pow_n(n)?;
        Ok((a as f64 / b as f64).powf(1.0 / n as f64))
    }
}

/// Integers `m` with `V^{2/n} ≤ m ≤ γₙ V^{2/n}`: the possible minima of an
/// integral WR lattice of volume `V`. Integral volumes are decided exactly by
/// comparing `mⁿ` against `V²` and `γₙⁿ V²`.
pub fn hermite_candidate_norms(n: usize, volume: f64) -> Result<std::ops::RangeInclusive<u64>> {
    let (num, den) = HermiteTable::gamma_pow_n(n)?;
    if !(volume > 0.0) || !volume.is_finite() {
        return Err(Error::InvalidConfig(format!("volume {volume} must be positive")));
    }
    let base = volume.powf(2.0 / n as f64);
    let lo = (base * (1.0 - 1e-12)).ceil().max(1.0) as u64;
    let hi = (HermiteTable::gamma(n)? * base * (1.0 + 1e-12)).floor() as u64;
    if volume.fract() != 0.0 || volume > 2f64.powi(53) {
        return Ok(lo..=hi);
    }
    let v2 = BigInt::from(volume as u64).pow(2);
    let ge_lower = |m: u64| BigInt::from(m).pow(n as u32) >= v2;
    let le_upper = |m: u64| BigInt::from(m).pow(n as u32) * den <= &v2 * num;
    let mut lo = lo.saturating_sub(1).max(1);
    while !ge_lower(lo) {
        lo += 1;
    }
    let mut hi = hi + 1;
    while hi > 0 && !le_upper(hi) {
        hi -= 1;
    }
    Ok(lo..=hi)
}

/// The two-sided Hermite bound `V^{2/n} ≤ λ₁ ≤ γₙ V^{2/n}` (relative slack `1e-9`).
pub fn hermite_bounds_hold(n: usize, lambda1: f64, volume: f64) -> Result<bool> {
    let base = volume.powf(2.0 / n as f64);
    let gamma = HermiteTable::gamma(n)?;
    Ok(lambda1 >= base * (1.0 - 1e-9) && lambda1 <= gamma * base * (1.0 + 1e-9))
}
