//! Analytic approximation of Eve's correct decision probability.
//!
//! The series sums `∏ᵢ (1 + (rᵢ/σ)²)^{-3/2}` over points `r` of `Λ_E`. It
//! depends on the individual coordinates of `r`, so it is not invariant under
//! rotations: evaluate the lattice in the orientation it is transmitted in.
//! Values are a figure of merit for comparing codes and can exceed 1 at small
//! `σ`; they are never clipped.

use serde::Serialize;

use crate::coset::NestedLatticePair;
use crate::enumerate::QuadraticDecomposition;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::lll::{lll_reduce, DEFAULT_DELTA};
use crate::matrix::Matrix;
use crate::minima::gram_minimum;
use crate::scalar::Scalar;

const SHELL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct EcdpAnalyticParams<'a, T> {
    pub sigma_e: f64,
    pub truncation_radius_sq: f64,
    pub pair: &'a NestedLatticePair<T>,
}

/// A truncated evaluation of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EcdpValue {
    pub sigma_e: f64,
    pub value: f64,
    /// Share of `value` contributed by the outermost shell that was summed.
    pub last_shell_fraction: f64,
    pub radius_sq: f64,
    /// Number of lattice points summed, `r = 0` included.
    #[serde(skip)]
    pub points: u64,
}

/// `max(25σ², 4λ₁)`.
pub fn default_radius_sq(sigma_e: f64, lambda1: f64) -> f64 {
    (25.0 * sigma_e * sigma_e).max(4.0 * lambda1)
}

/// The series truncated to `‖r‖² ≤ truncation_radius_sq`; fails with
/// `RadiusTooSmall` when the ball does not reach the minimal vectors.
pub fn ecdp_analytic<T: Scalar>(params: &EcdpAnalyticParams<'_, T>) -> Result<EcdpValue> {
    let lambda1 = gram_minimum(params.pair.lattice_e().gram())?.lambda1.as_f64();
    if params.truncation_radius_sq < lambda1 * (1.0 - SHELL_TOL) {
        return Err(Error::RadiusTooSmall { radius_sq: params.truncation_radius_sq, lambda1 });
    }
    ecdp_series(
        params.pair.lattice_e(),
        params.pair.lattice_b().volume_f64(),
        params.sigma_e,
        params.truncation_radius_sq,
    )
}

/// Same sum for an explicit `Λ_E` and `vol(Λ_B)`, with no lower limit on the radius.
pub fn ecdp_series<T: Scalar>(lattice_e: &Lattice<T>, vol_b: f64, sigma_e: f64, radius_sq: f64) -> Result<EcdpValue> {
    if !(sigma_e > 0.0) || !sigma_e.is_finite() {
        return Err(Error::InvalidConfig(format!("sigma_e must be positive, got {sigma_e}")));
    }
    if !(radius_sq >= 0.0) || !radius_sq.is_finite() {
        return Err(Error::InvalidConfig(format!("truncation radius² must be finite and nonnegative, got {radius_sq}")));
    }
    let n = lattice_e.dim();
    let mut sum = Kahan::default();
    let mut shell = Kahan::default();
    let mut shell_norm = 0.0;
    let mut points = 1u64;
    // r = 0
    sum.add(1.0);
    shell.add(1.0);
    for_each_point(lattice_e, radius_sq, |r, norm| {
        let t = term(r, sigma_e);
        sum.add(t);
        points += 1;
        if norm > shell_norm * (1.0 + SHELL_TOL) + SHELL_TOL {
            shell_norm = norm;
            shell = Kahan::default();
        }
        if norm >= shell_norm * (1.0 - SHELL_TOL) - SHELL_TOL {
            shell.add(t);
        }
    })?;
    let scale = vol_b * (2.0 * sigma_e).powi(-(n as i32));
    let total = sum.value();
    Ok(EcdpValue {
        sigma_e,
        value: scale * total,
        last_shell_fraction: shell.value() / total,
        radius_sq,
        points,
    })
}

/// `∏ᵢ (1 + (rᵢ/σ)²)^{-3/2}`.
pub fn term(r: &[f64], sigma: f64) -> f64 {
    r.iter().map(|&x| 1.0 + (x / sigma).powi(2)).product::<f64>().powf(-1.5)
}

/// Returns `(lhs, rhs)` with `lhs` the exact term and `rhs` the expansion kept
/// to its constant, linear and leading parts; `lhs ≤ rhs`.
pub fn term_bound_check(r: &[f64], sigma: f64) -> (f64, f64) {
    let lhs = term(r, sigma);
    if r.len() == 1 {
        return (lhs, lhs);
    }
    let sq: Vec<f64> = r.iter().map(|&x| (x / sigma).powi(2)).collect();
    let rhs = (1.0 + sq.iter().sum::<f64>() + sq.iter().product::<f64>()).powf(-1.5);
    (lhs, rhs)
}

/// Smallest `∏|vᵢ|` over nonzero lattice points with `‖v‖² ≤ radius_sq`.
///
/// Only points inside the ball are inspected, so this is an upper bound on
/// the minimum over the whole lattice and can only drop as the radius grows.
pub fn min_product_distance<T: Scalar>(lattice: &Lattice<T>, radius_sq: f64) -> Result<f64> {
    let lambda1 = gram_minimum(lattice.gram())?.lambda1.as_f64();
    if radius_sq < lambda1 * (1.0 - SHELL_TOL) {
        return Err(Error::RadiusTooSmall { radius_sq, lambda1 });
    }
    let mut best = f64::INFINITY;
    for_each_point(lattice, radius_sq.max(lambda1), |v, _| {
        best = best.min(v.iter().map(|x| x.abs()).product());
    })?;
    Ok(best)
}

/// Visits every nonzero lattice point (both signs) of squared length at most
/// `radius_sq`, in a fixed order.
fn for_each_point<T: Scalar, F: FnMut(&[f64], f64)>(lattice: &Lattice<T>, radius_sq: f64, mut visit: F) -> Result<()> {
    let basis: Matrix<f64> = lll_reduce(&lattice.basis().to_f64(), DEFAULT_DELTA)?;
    let dec = QuadraticDecomposition::new(&basis.gram())?;
    let slack = radius_sq * (1.0 + SHELL_TOL) + SHELL_TOL;
    let n = basis.rows();
    let mut r = vec![0.0; n];
    dec.for_each_in_ball(slack, |x, _| {
        for (i, ri) in r.iter_mut().enumerate() {
            *ri = (0..n).map(|j| basis[(i, j)] * x[j] as f64).sum();
        }
        let norm: f64 = r.iter().map(|v| v * v).sum();
        if norm <= slack {
            visit(&r, norm);
        }
        true
    });
    Ok(())
}

#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}
