//! Ideal lattices of real quadratic fields under the canonical embedding.
//!
//! Embedded inner products are traces, `⟨σ(x), σ(y)⟩ = Tr(xy)`, so every Gram
//! matrix here is an exact integer matrix and well-roundedness is decided without
//! rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::minima::{classify_coefficients, gram_minimum, WrClass};
use crate::normal_form::hermite_normal_form;
use crate::quadratic::{pqa_search, QuadraticField, QuadraticInteger};
use crate::scalar::Scalar;

/// `(σ₁(x), σ₂(x))`.
pub fn canonical_embed(field: &QuadraticField, x: &QuadraticInteger) -> Result<[f64; 2]> {
    check_field(field, x)?;
    Ok([x.sigma1(), x.sigma2()])
}

/// `|N(x)|`.
pub fn element_norm(field: &QuadraticField, x: &QuadraticInteger) -> Result<BigInt> {
    check_field(field, x)?;
    Ok(x.abs_norm())
}

fn check_field(field: &QuadraticField, x: &QuadraticInteger) -> Result<()> {
    if field.d() != x.d() {
        return Err(Error::FieldMismatch(field.d(), x.d()));
    }
    Ok(())
}

/// A full-rank ideal `I ⊂ O_F` through a ℤ-basis, optionally with a generator.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealLattice {
    field: QuadraticField,
    generator: Option<QuadraticInteger>,
    basis: [QuadraticInteger; 2],
    norm: u64,
}

impl IdealLattice {
    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn generator(&self) -> Option<&QuadraticInteger> {
        self.generator.as_ref()
    }

    pub fn basis_elements(&self) -> &[QuadraticInteger; 2] {
        &self.basis
    }

    /// `N(I) = [Λ_F : Λ_I]`.
    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Embedded basis, columns `σ(b₁)`, `σ(b₂)`.
    pub fn basis_matrix(&self) -> Matrix<f64> {
        Matrix::from_columns(self.basis.iter().map(|b| vec![b.sigma1(), b.sigma2()]).collect())
    }

    pub fn lattice(&self) -> Result<Lattice<f64>> {
        Lattice::new(self.basis_matrix())
    }

    /// Exact Gram matrix `Tr(bᵢbⱼ)`.
    pub fn trace_gram(&self) -> Matrix<BigInt> {
        let [a, b] = &self.basis;
        let t = |x: &QuadraticInteger, y: &QuadraticInteger| x.trace_product(y).expect("same field");
        Matrix::from_rows(vec![vec![t(a, a), t(a, b)], vec![t(b, a), t(b, b)]])
    }

    /// Coefficients of the basis in the integral basis `{1, ω}`.
    pub fn coefficient_matrix(&self) -> Matrix<BigInt> {
        let cols = self
            .basis
            .iter()
            .map(|b| {
                let (x0, x1) = self.field.basis_coords(b);
                vec![x0, x1]
            })
            .collect();
        Matrix::from_columns(cols)
    }

    /// Whether `x` lies in the ideal.
    pub fn contains(&self, x: &QuadraticInteger) -> bool {
        if x.d() != self.field.d() {
            return false;
        }
        let m = self.coefficient_matrix();
        let (x0, x1) = self.field.basis_coords(x);
        // solve m·(s, t) = (x0, x1) by Cramer's rule
        let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
        let s = &x0 * &m[(1, 1)] - &x1 * &m[(0, 1)];
        let t = &m[(0, 0)] * &x1 - &m[(1, 0)] * &x0;
        s.is_multiple_of(&det) && t.is_multiple_of(&det)
    }
}

/// `σ((α)) `, with ℤ-basis `{α, αω}`.
pub fn principal_ideal_lattice(field: &QuadraticField, alpha: &QuadraticInteger) -> Result<IdealLattice> {
    check_field(field, alpha)?;
    if alpha.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let basis = [alpha.clone(), alpha.mul(&field.omega())?];
    let il = IdealLattice { field: *field, generator: Some(alpha.clone()), basis, norm: 0 };
    let index = il.coefficient_matrix().determinant()?.abs();
    let norm = alpha.abs_norm();
    if index != norm {
        return Err(Error::NotASublattice);
    }
    Ok(IdealLattice { norm: norm.to_u64().ok_or(Error::Overflow)?, ..il })
}

/// `Λ_F = σ(O_F)`.
pub fn ring_of_integers_lattice(field: &QuadraticField) -> IdealLattice {
    principal_ideal_lattice(field, &field.one()).expect("1 generates O_F")
}

/// WR class of an ideal lattice with `λ₁ = min Tr(x²)` and the minimal elements.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealWrReport {
    pub class: WrClass,
    pub lambda1: BigInt,
    /// One element per ± pair.
    pub minimal_elements: Vec<QuadraticInteger>,
}

pub fn is_wr_ideal(il: &IdealLattice) -> Result<IdealWrReport> {
    let gram = il.trace_gram();
    let min = gram_minimum(&gram)?;
    let (class, _, _) = classify_coefficients(2, &min.coefficients)?;
    let [a, b] = il.basis_elements();
    let minimal_elements = min
        .coefficients
        .iter()
        .map(|c| a.scale(&BigInt::from(c[0])).add(&b.scale(&BigInt::from(c[1]))).expect("same field"))
        .collect();
    Ok(IdealWrReport { class, lambda1: min.lambda1, minimal_elements })
}

/// `N(I) ≥ √(3Δ)/4`, decided exactly as `16·N(I)² ≥ 3Δ`.
pub fn largenorm_check(il: &IdealLattice) -> Result<bool> {
    if !is_wr_ideal(il)?.class.is_wr() {
        return Err(Error::NotWellRounded);
    }
    Ok(largenorm_holds(il.norm(), il.field().discriminant()))
}

pub fn largenorm_holds(norm: u64, discriminant: i64) -> bool {
    16 * (norm as u128) * (norm as u128) >= 3 * discriminant as u128
}

/// Scales a lattice to volume `target`; `λ₁` scales by `(target/vol)^{2/n}`.
pub fn normalize_to_covolume<T: Scalar>(lattice: &Lattice<T>, target: f64) -> Result<Lattice<f64>> {
    lattice.normalized_to_volume(target)
}

/// The ideal `a·ℤ + (b + c·ω)·ℤ` (Hermite form in `{1, ω}` coordinates), when it is one.
pub fn ideal_from_hnf(field: &QuadraticField, a: i64, b: i64, c: i64) -> Option<IdealLattice> {
    if a <= 0 || c <= 0 || a % c != 0 || b % c != 0 {
        return None;
    }
    let basis = [field.integer(a), field.from_basis_coords(b, c)];
    let il = IdealLattice { field: *field, generator: None, basis, norm: (a * c) as u64 };
    let omega = field.omega();
    let closed = il.basis.iter().all(|x| il.contains(&x.mul(&omega).expect("same field")));
    closed.then_some(il)
}

/// All ideals of norm `norm`.
pub fn ideals_of_norm(field: &QuadraticField, norm: i64) -> Vec<IdealLattice> {
    let mut out = Vec::new();
    let mut c = 1;
    while c * c <= norm {
        if norm % (c * c) == 0 {
            let a = norm / c;
            for k in 0..a / c {
                if let Some(il) = ideal_from_hnf(field, a, k * c, c) {
                    out.push(il);
                }
            }
        }
        c += 1;
    }
    out
}

/// A generator of `il` if it is principal.
///
/// With `I = c·J` and `J = [a, (P+√Δ)/2]` primitive, `J` is principal iff the
/// continued fraction of `(P+√Δ)/(2a)` reaches a denominator `|Qᵢ| = 2` before it
/// cycles; the matching convergent gives the generator.
pub fn principal_generator(il: &IdealLattice) -> Option<QuadraticInteger> {
    let field = il.field();
    // Hermite form in (ω, 1) order gives the basis {a, b + cω}
    let m = il.coefficient_matrix();
    let swapped = Matrix::from_rows(vec![m.row(1).to_vec(), m.row(0).to_vec()]);
    let h = hermite_normal_form(&swapped).ok()?;
    let (c, b, a) = (h[(0, 0)].to_i64()?, h[(1, 0)].to_i64()?, h[(1, 1)].to_i64()?);
    if a % c != 0 || b % c != 0 {
        return None;
    }
    let a1 = a / c;
    let delta = if field.half_integral() { 1 } else { 0 };
    let p0 = 2 * (b / c) + delta;
    let content = BigInt::from(c);
    let j_norm = BigInt::from(a1);
    let eta = if a1 == 1 {
        field.one()
    } else {
        let (eta, _) = pqa_search(field, p0, 2 * a1, |eta, _| {
            eta.abs_norm() == j_norm && il.contains(&eta.scale(&content))
        })?;
        eta
    };
    let alpha = eta.scale(&content);
    (alpha.abs_norm() == BigInt::from(il.norm()) && il.contains(&alpha)).then(|| canonical_associate(field, &alpha))
}

/// The associate `±α·εᵏ` of smallest `‖σ(·)‖²`; ties go to `q ≥ 0`, then `p > 0`.
pub fn canonical_associate(field: &QuadraticField, alpha: &QuadraticInteger) -> QuadraticInteger {
    let eps = field.fundamental_unit();
    let inv = eps.unit_inverse().expect("fundamental unit");
    let mut best = alpha.clone();
    for step in [&eps, &inv] {
        loop {
            let next = best.mul(step).expect("same field");
            if next.embedded_norm_sq() < best.embedded_norm_sq() {
                best = next;
            } else {
                break;
            }
        }
    }
    let mut candidates = vec![best.clone()];
    for step in [&eps, &inv] {
        let other = best.mul(step).expect("same field");
        if other.embedded_norm_sq() == best.embedded_norm_sq() {
            candidates.push(other);
        }
    }
    candidates
        .into_iter()
        .map(|x| if x.p().is_negative() || (x.p().is_zero() && x.q().is_negative()) { x.neg() } else { x })
        .max_by(|x, y| (x.q().sign() != num_bigint::Sign::Minus, x.q(), x.p()).cmp(&(y.q().sign() != num_bigint::Sign::Minus, y.q(), y.p())))
        .expect("nonempty")
}

/// One WR principal ideal found by [`wr_principal_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanHit {
    pub d: i64,
    pub discriminant: i64,
    pub generator: QuadraticInteger,
    pub index: u64,
    pub lambda1: BigInt,
    pub class: WrClass,
    pub largenorm_ok: bool,
}

/// Exhaustive search for WR principal ideals of norm at most `bound_factor·D`.
///
/// Every ideal of each norm is listed through its Hermite form, classified on
/// its exact trace Gram matrix, and tested for principality. Results are sorted
/// by `(D, index, generator)`.
pub fn wr_principal_scan(ds: &[i64], bound_factor: f64) -> Result<Vec<ScanHit>> {
    if !(bound_factor > 0.0) {
        return Err(Error::InvalidConfig(format!("index bound factor {bound_factor} must be positive")));
    }
    let fields: Vec<QuadraticField> = ds.iter().map(|&d| QuadraticField::new(d)).collect::<Result<_>>()?;
    let per_field: Vec<Vec<ScanHit>> = fields
        .par_iter()
        .map(|f| scan_field(f, (bound_factor * f.d() as f64).floor() as i64))
        .collect::<Result<_>>()?;
    let mut hits: Vec<ScanHit> = per_field.into_iter().flatten().collect();
    hits.sort_by(|x, y| (x.d, x.index, x.generator.p(), x.generator.q()).cmp(&(y.d, y.index, y.generator.p(), y.generator.q())));
    Ok(hits)
}

fn scan_field(field: &QuadraticField, bound: i64) -> Result<Vec<ScanHit>> {
    let mut hits = Vec::new();
    for norm in 1..=bound {
        for il in ideals_of_norm(field, norm) {
            let wr = is_wr_ideal(&il)?;
            if !wr.class.is_wr() {
                continue;
            }
            if let Some(generator) = principal_generator(&il) {
                hits.push(ScanHit {
                    d: field.d(),
                    discriminant: field.discriminant(),
                    generator,
                    index: il.norm(),
                    lambda1: wr.lambda1,
                    class: wr.class,
                    largenorm_ok: largenorm_holds(il.norm(), field.discriminant()),
                });
            }
        }
    }
    Ok(hits)
}

/// Square-free `D > 1` in `lo..=hi`.
pub fn square_free_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo.max(2)..=hi).filter(|&d| crate::quadratic::is_square_free(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minima::shortest_vectors;

    fn f(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn embeddings() {
        let k = f(3);
        assert_eq!(canonical_embed(&k, &k.one()).unwrap(), [1.0, 1.0]);
        let e = canonical_embed(&k, &k.from_parts(3, 1)).unwrap();
        assert!((e[0] - 4.7320508075688772).abs() < 1e-14 && (e[1] - 1.2679491924311228).abs() < 1e-14);
    }

    #[test]
    fn norms() {
        assert_eq!(element_norm(&f(3), &f(3).from_parts(3, 1)).unwrap(), BigInt::from(6));
        assert_eq!(element_norm(&f(21), &f(21).element(7, -1).unwrap()).unwrap(), BigInt::from(7));
        assert!(matches!(element_norm(&f(5), &f(3).one()), Err(Error::FieldMismatch(5, 3))));
    }

    #[test]
    fn ring_lattice() {
        for d in [2i64, 3, 5, 13, 21, 30] {
            let k = f(d);
            let l = ring_of_integers_lattice(&k);
            assert_eq!(l.norm(), 1);
            let vol = l.lattice().unwrap().volume_f64();
            assert!((vol / (k.discriminant() as f64).sqrt() - 1.0).abs() < 1e-9);
        }
        // σ(1), σ(√D) are orthogonal with norms 2, 2D
        let w = is_wr_ideal(&ring_of_integers_lattice(&f(2))).unwrap();
        assert_eq!(w.class, WrClass::NotWr);
        assert_eq!(ring_of_integers_lattice(&f(2)).trace_gram(), Matrix::from_rows(vec![vec![2, 0], vec![0, 4]]).map(|&x| BigInt::from(x)));
    }

    #[test]
    fn three_plus_root_three() {
        let k = f(3);
        let il = principal_ideal_lattice(&k, &k.from_parts(3, 1)).unwrap();
        assert_eq!(il.norm(), 6);
        let w = is_wr_ideal(&il).unwrap();
        assert!(w.class.is_wr());
        assert_eq!(w.lambda1, BigInt::from(24));
        // λ₁ / vol attains γ₂
        let vol = il.lattice().unwrap().volume_f64();
        assert!((24.0 / vol - 2.0 / 3f64.sqrt()).abs() < 1e-9);
        // float enumeration agrees with the trace form
        let fl = shortest_vectors(&il.lattice().unwrap()).unwrap();
        assert!((fl.lambda1 - 24.0).abs() < 1e-9);
        assert!(w.minimal_elements.iter().all(|x| x.embedded_norm_sq() == BigInt::from(24)));
        assert!(largenorm_check(&il).unwrap());
    }

    #[test]
    fn norm_multiplicativity_of_lattice_index() {
        let k = f(3);
        let il = principal_ideal_lattice(&k, &k.from_parts(18, 6)).unwrap();
        assert_eq!(il.norm(), 216);
        assert_eq!(principal_ideal_lattice(&k, &k.one()).unwrap().norm(), 1);
        assert_eq!(principal_ideal_lattice(&k, &k.integer(0)), Err(Error::ZeroGenerator));
    }

    #[test]
    fn largenorm_needs_wr() {
        assert_eq!(largenorm_check(&ring_of_integers_lattice(&f(7))), Err(Error::NotWellRounded));
        assert!(largenorm_holds(17, 221));
        assert!(largenorm_holds(10, 60));
        assert!(!largenorm_holds(1, 12));
    }

    #[test]
    fn ideals_of_small_norm() {
        // in ℤ[√3], 2 ramifies and 3 ramifies: exactly one ideal of norm 2 and of norm 3
        let k = f(3);
        assert_eq!(ideals_of_norm(&k, 2).len(), 1);
        assert_eq!(ideals_of_norm(&k, 3).len(), 1);
        // 11 splits in ℚ(√3) since 3 is a square mod 11
        assert_eq!(ideals_of_norm(&k, 11).len(), 2);
        assert_eq!(ideals_of_norm(&k, 5).len(), 0);
        assert_eq!(ideals_of_norm(&k, 4).len(), 1);
    }

    #[test]
    fn principal_generators_are_found() {
        let k = f(3);
        let il = principal_ideal_lattice(&k, &k.from_parts(3, 1)).unwrap();
        let again = ideals_of_norm(&k, 6);
        assert_eq!(again.len(), 1);
        let g = principal_generator(&again[0]).unwrap();
        assert_eq!(g.abs_norm(), BigInt::from(6));
        assert!(il.contains(&g));
        // ℚ(√10) has class number 2: the ideal (2, √10) is not principal
        let k10 = f(10);
        let two = ideals_of_norm(&k10, 2);
        assert_eq!(two.len(), 1);
        assert_eq!(principal_generator(&two[0]), None);
    }

    #[test]
    fn canonical_associates() {
        let k = f(3);
        let a = k.from_parts(3, 1);
        let eps = k.fundamental_unit();
        let far = a.mul(&eps).unwrap().mul(&eps).unwrap().mul(&eps).unwrap().neg();
        assert_eq!(canonical_associate(&k, &far), a);
        assert_eq!(canonical_associate(&k, &k.from_parts(3, -1)), a);
    }
}
