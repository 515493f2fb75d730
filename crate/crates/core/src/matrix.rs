//! Small dense matrices over a generic scalar.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: Vec<Vec<T>>) -> Self {
        Matrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, F: FnMut(&T) -> Option<U>>(&self, f: F) -> Option<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `AᵀA`: the Gram matrix of the columns.
    pub fn gram(&self) -> Matrix<T> {
        self.transpose().mul(self)
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Quadratic form `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        let ax = self.mul_vec(x);
        x.iter().zip(ax).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.as_f64())
    }

    /// Exact integer copy for integer kinds.
    pub fn to_bigint(&self) -> Option<Matrix<BigInt>> {
        self.try_map(|x| x.exact_integer())
    }

    /// Determinant. Integer kinds are evaluated in arbitrary precision.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DegenerateLattice);
        }
        match self.to_bigint() {
            Some(m) => T::from_bigint(&bareiss(&m)).ok_or(Error::Overflow),
            None => Ok(bareiss(self)),
        }
    }
}

/// Fraction-free Gaussian elimination with partial pivoting on magnitude.
///
/// Divisions are exact over the integers; over floats this is plain
/// elimination with a deferred common denominator.
pub fn bareiss<T: Clone + Num + Signed + PartialOrd>(m: &Matrix<T>) -> T {
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !a[(r, k)].is_zero())
            .max_by(|&x, &y| a[(x, k)].abs().partial_cmp(&a[(y, k)].abs()).unwrap());
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, k)] = T::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Determinant of the matrix with the given integer columns, in `i128` with
/// overflow checks. The hot path of the sublattice searches.
pub fn det_i64_columns(cols: &[Vec<i64>]) -> Option<i128> {
    let n = cols.len();
    let mut a: Vec<Vec<i128>> = (0..n).map(|r| cols.iter().map(|c| c[r] as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let p = (k..n).filter(|&r| a[r][k] != 0).min_by_key(|&r| a[r][k].abs());
        let Some(p) = p else {
            return Some(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(a[k][k])?;
                let y = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Solves `A X = B` over a field by elimination with partial pivoting.
/// Returns `None` when `A` is singular.
pub fn solve<F: FieldScalar>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.rows();
    assert!(a.is_square() && b.rows() == n);
    let m = b.cols();
    let mut aug = Matrix::zeros(n, n + m);
    for r in 0..n {
        for c in 0..n {
            aug[(r, c)] = a[(r, c)].clone();
        }
        for c in 0..m {
            aug[(r, n + c)] = b[(r, c)].clone();
        }
    }
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !aug[(r, k)].is_zero())
            .max_by(|&x, &y| aug[(x, k)].abs().partial_cmp(&aug[(y, k)].abs()).unwrap())?;
        aug.swap_rows(p, k);
        let piv = aug[(k, k)].clone();
        for c in k..n + m {
            let v = aug[(k, c)].clone() / piv.clone();
            aug[(k, c)] = v;
        }
        for r in 0..n {
            if r == k || aug[(r, k)].is_zero() {
                continue;
            }
            let f = aug[(r, k)].clone();
            for c in k..n + m {
                let v = aug[(r, c)].clone() - f.clone() * aug[(k, c)].clone();
                aug[(r, c)] = v;
            }
        }
    }
    let mut x = Matrix::zeros(n, m);
    for r in 0..n {
        for c in 0..m {
            x[(r, c)] = aug[(r, n + c)].clone();
        }
    }
    Some(x)
}

/// Rank of a set of integer vectors, computed exactly.
pub fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut a: Vec<Vec<BigInt>> =
        vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let (f, g) = (a[rank][c].clone(), a[r][c].clone());
            for k in c..cols {
                a[r][k] = &a[r][k] * &f - &a[rank][k] * &g;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Largest absolute entry of `QᵀQ - I`.
pub fn orthogonality_defect(q: &Matrix<f64>) -> f64 {
    let g = q.gram();
    let mut worst = 0.0f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

pub(crate) fn bigint_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_exact_and_float() {
        let m = Matrix::from_rows(vec![vec![3i64, 15], vec![15, 3]]);
        assert_eq!(m.determinant().unwrap(), -216);
        let f = m.to_f64();
        assert!((f.determinant().unwrap() + 216.0).abs() < 1e-9);
        let d = Matrix::diagonal(&[16i64, 4, 2, 2]);
        assert_eq!(d.determinant().unwrap(), 256);
    }

    #[test]
    fn determinant_needs_big_intermediates() {
        // Entries near 2^62: the i64 result fits, intermediates do not.
        let big = 1i64 << 40;
        let m = Matrix::from_rows(vec![vec![big, 1], vec![big - 1, 1]]);
        assert_eq!(m.determinant().unwrap(), 1);
        let huge = Matrix::from_rows(vec![vec![i64::MAX, 0], vec![0, i64::MAX]]);
        assert_eq!(huge.determinant(), Err(Error::Overflow));
    }

    #[test]
    fn fast_det_matches_bareiss() {
        let cols = vec![vec![-2, 0, 0, -4], vec![-3, -1, -3, -1], vec![4, 0, -2, 0], vec![-1, 3, -3, -1]];
        assert_eq!(det_i64_columns(&cols), Some(-256));
        let m = Matrix::from_columns(cols);
        assert_eq!(m.determinant().unwrap(), -256);
    }

    #[test]
    fn solve_recovers_coefficients() {
        let a = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 3.0]]);
        let b = Matrix::from_rows(vec![vec![5.0], vec![10.0]]);
        let x = solve(&a, &b).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-12 && (x[(1, 0)] - 3.0).abs() < 1e-12);
        let s = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(solve(&s, &b).is_none());
    }

    #[test]
    fn rank_of_dependent_vectors() {
        assert_eq!(integer_rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 0]]), 2);
        assert_eq!(integer_rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(integer_rank(&[]), 0);
    }

    #[test]
    fn gram_and_trace() {
        let b = Matrix::from_columns(vec![vec![3i64, 15], vec![15, 3]]);
        let g = b.gram();
        assert_eq!(g, Matrix::from_rows(vec![vec![234, 90], vec![90, 234]]));
        assert_eq!(g.trace(), 468);
        assert_eq!(g.quadratic_form(&[1, -1]), 288);
    }
}
