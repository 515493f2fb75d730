//! Real quadratic fields `ℚ(√D)` and their integers, in exact arithmetic.
//!
//! An integer is stored as `(p + q√D)/2`. For `D ≡ 1 (mod 4)` this allows
//! `p ≡ q (mod 2)`; otherwise `p` and `q` are both even. The integral basis is
//! `{1, ω}` with `ω = (1+√D)/2` or `ω = √D` respectively.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: i64,
    discriminant: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 1 || !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(QuadraticField { d, discriminant })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `Δ = D` for `D ≡ 1 (mod 4)`, `4D` otherwise.
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// True when `ω = (1+√D)/2`.
    pub fn half_integral(&self) -> bool {
        self.discriminant == self.d
    }

    /// Validated element `(p + q√D)/2`.
    pub fn element(&self, p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<QuadraticInteger> {
        let (p, q) = (p.into(), q.into());
        let ok = if self.half_integral() { (&p - &q).is_even() } else { p.is_even() && q.is_even() };
        if !ok {
            return Err(Error::NotAnAlgebraicInteger { d: self.d, p: p.to_string(), q: q.to_string() });
        }
        Ok(QuadraticInteger { d: self.d, p, q })
    }

    /// `a + b√D`.
    pub fn from_parts(&self, a: impl Into<BigInt>, b: impl Into<BigInt>) -> QuadraticInteger {
        QuadraticInteger { d: self.d, p: a.into() * 2, q: b.into() * 2 }
    }

    pub fn integer(&self, a: impl Into<BigInt>) -> QuadraticInteger {
        self.from_parts(a, 0)
    }

    pub fn one(&self) -> QuadraticInteger {
        self.integer(1)
    }

    pub fn omega(&self) -> QuadraticInteger {
        if self.half_integral() {
            QuadraticInteger { d: self.d, p: BigInt::one(), q: BigInt::one() }
        } else {
            self.from_parts(0, 1)
        }
    }

    /// `x0 + x1·ω`.
    pub fn from_basis_coords(&self, x0: impl Into<BigInt>, x1: impl Into<BigInt>) -> QuadraticInteger {
        let (x0, x1): (BigInt, BigInt) = (x0.into(), x1.into());
        if self.half_integral() {
            QuadraticInteger { d: self.d, p: &x0 * 2 + &x1, q: x1 }
        } else {
            QuadraticInteger { d: self.d, p: x0 * 2, q: x1 * 2 }
        }
    }

    /// Coordinates of `x` in the integral basis `{1, ω}`.
    pub fn basis_coords(&self, x: &QuadraticInteger) -> (BigInt, BigInt) {
        if self.half_integral() {
            ((&x.p - &x.q) / 2, x.q.clone())
        } else {
            (&x.p / 2, &x.q / 2)
        }
    }

    /// Smallest unit `ε > 1`, read off the continued fraction of `ω`.
    pub fn fundamental_unit(&self) -> QuadraticInteger {
        let delta = if self.half_integral() { 1 } else { 0 };
        let (unit, _) = pqa_search(self, delta, 2, |eta, _| eta.abs_norm().is_one() && !eta.q.is_zero())
            .expect("the cycle of a real quadratic order always contains a nontrivial unit");
        let u = if unit.sigma1() < 0.0 { unit.neg() } else { unit };
        if u.sigma1() < 1.0 {
            u.conj_inverse_unit()
        } else {
            u
        }
    }
}

/// `(p + q√D)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticInteger {
    d: i64,
    p: BigInt,
    q: BigInt,
}

impl QuadraticInteger {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch(self.d, other.d));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadraticInteger { d: self.d, p: &self.p + &other.p, q: &self.q + &other.q })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadraticInteger { d: self.d, p: &self.p - &other.p, q: &self.q - &other.q })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = BigInt::from(self.d);
        let p = (&self.p * &other.p + d * &self.q * &other.q) / 2;
        let q = (&self.p * &other.q + &other.p * &self.q) / 2;
        Ok(QuadraticInteger { d: self.d, p, q })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadraticInteger { d: self.d, p: &self.p * k, q: &self.q * k }
    }

    pub fn neg(&self) -> Self {
        QuadraticInteger { d: self.d, p: -&self.p, q: -&self.q }
    }

    /// Galois conjugate `(p − q√D)/2`.
    pub fn conj(&self) -> Self {
        QuadraticInteger { d: self.d, p: self.p.clone(), q: -&self.q }
    }

    /// `N(x) = (p² − Dq²)/4`.
    pub fn norm(&self) -> BigInt {
        (&self.p * &self.p - BigInt::from(self.d) * &self.q * &self.q) / 4
    }

    pub fn abs_norm(&self) -> BigInt {
        self.norm().abs()
    }

    /// `Tr(x) = p`.
    pub fn trace(&self) -> BigInt {
        self.p.clone()
    }

    /// `‖σ(x)‖² = Tr(x²) = (p² + Dq²)/2`.
    pub fn embedded_norm_sq(&self) -> BigInt {
        (&self.p * &self.p + BigInt::from(self.d) * &self.q * &self.q) / 2
    }

    /// `Tr(x·y)`, the inner product of the embeddings.
    pub fn trace_product(&self, other: &Self) -> Result<BigInt> {
        self.check(other)?;
        Ok((&self.p * &other.p + BigInt::from(self.d) * &self.q * &other.q) / 2)
    }

    /// `σ₁(x) = (p + q√D)/2`, evaluated without cancellation.
    pub fn sigma1(&self) -> f64 {
        embed_component(&self.p, &self.q, self.d, &self.norm())
    }

    /// `σ₂(x) = (p − q√D)/2`.
    pub fn sigma2(&self) -> f64 {
        embed_component(&self.p, &-&self.q, self.d, &self.norm())
    }

    // inverse of a unit ε is ±conj(ε); returns the one with the sign of σ₁ kept positive
    fn conj_inverse_unit(&self) -> Self {
        if self.norm().is_positive() {
            self.conj()
        } else {
            self.conj().neg()
        }
    }

    /// Unit inverse, `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        match self.norm().to_i64() {
            Some(1) => Some(self.conj()),
            Some(-1) => Some(self.conj().neg()),
            _ => None,
        }
    }

    /// `(p, q, denom)` with `x = (p + q√D)/denom` in lowest form.
    pub fn display_parts(&self) -> (BigInt, BigInt, u8) {
        if self.p.is_even() && self.q.is_even() {
            (&self.p / 2, &self.q / 2, 1)
        } else {
            (self.p.clone(), self.q.clone(), 2)
        }
    }
}

impl std::fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (p, q, den) = self.display_parts();
        let sign = if q.is_negative() { '-' } else { '+' };
        if den == 1 {
            write!(f, "{p} {sign} {}√{}", q.abs(), self.d)
        } else {
            write!(f, "({p} {sign} {}√{})/2", q.abs(), self.d)
        }
    }
}

fn embed_component(p: &BigInt, q: &BigInt, d: i64, norm: &BigInt) -> f64 {
    let pf = p.to_f64().unwrap_or(f64::NAN);
    let qs = q.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt();
    if pf.signum() == qs.signum() || pf == 0.0 || qs == 0.0 {
        (pf + qs) / 2.0
    } else {
        // (p + q√D)/2 = N(x) / ((p − q√D)/2)
        norm.to_f64().unwrap_or(f64::NAN) / ((pf - qs) / 2.0)
    }
}

pub fn is_square_free(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let d = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Runs the continued-fraction expansion of `θ = (P₀ + √Δ)/Q₀` (requires
/// `Q₀ | Δ − P₀²`) and reports the first `η = (G ± B√Δ)/2` accepted by `accept`,
/// together with the step count. Each `η` visited has `|N(η)| = Q₀·|Qᵢ|/4`.
/// Returns `None` once the expansion cycles.
pub(crate) fn pqa_search<F>(field: &QuadraticField, p0: i64, q0: i64, mut accept: F) -> Option<(QuadraticInteger, usize)>
where
    F: FnMut(&QuadraticInteger, i64) -> bool,
{
    let disc = field.discriminant() as i128;
    let s = (disc as u128).sqrt() as i128;
    let (mut p, mut q) = (p0 as i128, q0 as i128);
    let (mut a2, mut a1) = (BigInt::zero(), BigInt::one());
    let (mut b2, mut b1) = (BigInt::one(), BigInt::zero());
    let mut seen = HashSet::new();
    let root_scale: i64 = if field.half_integral() { 1 } else { 2 };
    for step in 0.. {
        if !seen.insert((p, q)) {
            return None;
        }
        let a = if q > 0 { Integer::div_floor(&(p + s), &q) } else { -Integer::div_floor(&(p + s), &(-q)) - 1 };
        let ab = BigInt::from(a);
        let an = &ab * &a1 + &a2;
        let bn = &ab * &b1 + &b2;
        let pn = a * q - p;
        let qn = (disc - pn * pn) / q;
        let g = BigInt::from(q0) * &an - BigInt::from(p0) * &bn;
        for sign in [1i64, -1] {
            // √Δ = root_scale·√D
            let eta = QuadraticInteger { d: field.d(), p: g.clone(), q: &bn * (sign * root_scale) };
            if accept(&eta, qn as i64) {
                return Some((eta, step));
            }
        }
        (a2, a1) = (a1, an);
        (b2, b1) = (b1, bn);
        (p, q) = (pn, qn);
    }
    None
}
