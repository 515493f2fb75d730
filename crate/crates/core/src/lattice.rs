//! Full-rank lattices `Λ = B·ℤⁿ` with the basis vectors as columns of `B`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::{orthogonality_defect, solve, Matrix};
use crate::scalar::Scalar;

/// Tolerance for float orthogonality and membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An immutable full-rank lattice with its Gram matrix and volume cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice<T> {
    basis: Matrix<T>,
    gram: Matrix<T>,
    volume: T,
}

impl<T: Scalar> Lattice<T> {
    pub fn new(basis: Matrix<T>) -> Result<Self> {
        if !basis.is_square() || basis.rows() == 0 {
            return Err(Error::DegenerateLattice);
        }
        let det = basis.determinant()?;
        if det.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        if !T::EXACT {
            // relative to Hadamard's bound
            let hadamard: f64 = basis.to_f64().gram().as_slice().iter().step_by(basis.rows() + 1).map(|x| x.sqrt()).product();
            if det.as_f64().abs() <= 1e-12 * hadamard {
                return Err(Error::DegenerateLattice);
            }
        }
        let gram = basis.gram();
        Ok(Lattice { basis, gram, volume: det.abs() })
    }

    pub fn from_columns(cols: Vec<Vec<T>>) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DegenerateLattice);
        }
        Lattice::new(Matrix::from_columns(cols))
    }

    /// The integer lattice `ℤⁿ`.
    pub fn integer(n: usize) -> Self {
        Lattice::new(Matrix::identity(n)).expect("identity is nonsingular")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    /// `|det B|`, exact for integer kinds.
    pub fn volume(&self) -> &T {
        &self.volume
    }

    pub fn volume_f64(&self) -> f64 {
        self.volume.as_f64()
    }

    pub fn to_f64(&self) -> Lattice<f64> {
        Lattice::new(self.basis.to_f64()).expect("nonsingular lattice stays nonsingular")
    }

    /// `c·Λ`.
    pub fn scaled(&self, c: f64) -> Result<Lattice<f64>> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidConfig(format!("scale factor {c} must be positive")));
        }
        Lattice::new(self.basis.to_f64().scale(&c))
    }

    /// Scales the lattice so that its volume becomes `target`.
    pub fn normalized_to_volume(&self, target: f64) -> Result<Lattice<f64>> {
        if !(target > 0.0) {
            return Err(Error::InvalidConfig(format!("target volume {target} must be positive")));
        }
        let c = (target / self.volume_f64()).powf(1.0 / self.dim() as f64);
        self.scaled(c)
    }

    /// `Q·Λ` for an orthogonal `Q` (checked to `tol`).
    pub fn apply_rotation(&self, q: &Matrix<f64>, tol: f64) -> Result<Lattice<f64>> {
        if !q.is_square() || q.rows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: q.rows() });
        }
        let deviation = orthogonality_defect(q);
        if deviation > tol {
            return Err(Error::NotOrthogonal { deviation, tol });
        }
        Lattice::new(q.mul(&self.basis.to_f64()))
    }

    /// The lattice point `B·c`.
    pub fn point(&self, coeffs: &[i64]) -> Vec<T> {
        let c: Vec<T> = coeffs.iter().map(|&x| T::from_i64(x).expect("i64 fits every scalar kind")).collect();
        self.basis.mul_vec(&c)
    }

    /// Integer coordinates of `x` in this basis, or `NotInLattice`.
    pub fn coordinates(&self, x: &[T], tol: f64) -> Result<Vec<BigInt>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let a = self.basis.map(|v| v.to_field());
        let b = Matrix::from_columns(vec![x.iter().map(|v| v.to_field()).collect()]);
        let sol = solve(&a, &b).ok_or(Error::DegenerateLattice)?;
        sol.column(0).iter().map(|c| T::field_to_integer(c, tol).ok_or(Error::NotInLattice)).collect()
    }
}

pub fn volume<T: Scalar>(lattice: &Lattice<T>) -> T {
    lattice.volume().clone()
}

/// The integer matrix `M` with `sub = sup·M`, or `NotASublattice`.
pub fn sublattice_coefficients<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>, tol: f64) -> Result<Matrix<BigInt>> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), found: sub.dim() });
    }
    let a = sup.basis().map(|v| v.to_field());
    let b = sub.basis().map(|v| v.to_field());
    let m = solve(&a, &b).ok_or(Error::DegenerateLattice)?;
    m.try_map(|c| T::field_to_integer(c, tol)).ok_or(Error::NotASublattice)
}

/// `[sup : sub] = vol(sub)/vol(sup)`, verified through an integral coefficient matrix.
pub fn sublattice_index<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>) -> Result<u64> {
    let m = sublattice_coefficients(sub, sup, DEFAULT_TOL)?;
    m.determinant()?.abs().to_u64().ok_or(Error::Overflow)
}
