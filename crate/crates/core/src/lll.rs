//! LLL reduction driven by the Gram matrix.
//!
//! Integer Gram matrices go through the integral variant (all Gram–Schmidt
//! data kept as integers `dᵢ`, `λᵢⱼ`), so the reduced basis is exactly LLL
//! reduced and the transform is exactly unimodular. Float Gram matrices use
//! the textbook floating-point algorithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub const DEFAULT_DELTA: f64 = 0.99;

/// Reduced Gram matrix `Uᵀ G U` together with the unimodular transform `U`.
#[derive(Debug, Clone)]
pub struct Reduced<T> {
    pub gram: Matrix<T>,
    pub transform: Matrix<BigInt>,
}

/// LLL-reduces the lattice with Gram matrix `gram`.
pub fn lll_reduce_gram<T: Scalar>(gram: &Matrix<T>, delta: f64) -> Result<Reduced<T>> {
    check_delta(delta)?;
    if !gram.is_square() {
        return Err(Error::DegenerateLattice);
    }
    match gram.to_bigint() {
        Some(g) => {
            let (g, u) = integral_lll(g, delta)?;
            let g = g.try_map(T::from_bigint).ok_or(Error::Overflow)?;
            Ok(Reduced { gram: g, transform: u })
        }
        None => {
            let (g, u) = float_lll(gram.to_f64(), delta)?;
            let g = g.try_map(|&x| T::from_f64_value(x)).ok_or(Error::Overflow)?;
            Ok(Reduced { gram: g, transform: u })
        }
    }
}

/// LLL-reduces a basis given by its columns. Returns the reduced basis and
/// the transform `U` with `reduced = basis · U`.
pub fn lll_reduce_with_transform<T: Scalar>(
    basis: &Matrix<T>,
    delta: f64,
) -> Result<(Matrix<T>, Matrix<BigInt>)> {
    if !basis.is_square() || basis.determinant()?.is_zero() {
        return Err(Error::DegenerateLattice);
    }
    let reduced = lll_reduce_gram(&basis.gram(), delta)?;
    let u = reduced.transform.try_map(T::from_bigint).ok_or(Error::Overflow)?;
    Ok((basis.mul(&u), reduced.transform))
}

pub fn lll_reduce<T: Scalar>(basis: &Matrix<T>, delta: f64) -> Result<Matrix<T>> {
    lll_reduce_with_transform(basis, delta).map(|(b, _)| b)
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.25 && delta <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("LLL delta {delta} outside (0.25, 1]")))
    }
}

// b_k <- b_k - q b_l, expressed on the Gram matrix
fn gram_sub<T: Num + Clone>(g: &mut Matrix<T>, k: usize, l: usize, q: &T) {
    let n = g.rows();
    let kk = g[(k, k)].clone() - (T::one() + T::one()) * q.clone() * g[(k, l)].clone()
        + q.clone() * q.clone() * g[(l, l)].clone();
    for j in 0..n {
        if j == k {
            continue;
        }
        let v = g[(k, j)].clone() - q.clone() * g[(l, j)].clone();
        g[(k, j)] = v.clone();
        g[(j, k)] = v;
    }
    g[(k, k)] = kk;
}

fn gram_swap<T: Clone>(g: &mut Matrix<T>, a: usize, b: usize) {
    g.swap_rows(a, b);
    g.swap_columns(a, b);
}

fn col_sub(u: &mut Matrix<BigInt>, k: usize, l: usize, q: &BigInt) {
    for r in 0..u.rows() {
        let v = &u[(r, k)] - q * &u[(r, l)];
        u[(r, k)] = v;
    }
}

/// Integral LLL on an integer Gram matrix (Cohen, "A Course in Computational
/// Algebraic Number Theory", Algorithm 2.6.7, with general δ = p/q).
fn integral_lll(mut g: Matrix<BigInt>, delta: f64) -> Result<(Matrix<BigInt>, Matrix<BigInt>)> {
    let n = g.rows();
    let mut h = Matrix::<BigInt>::identity(n);
    if n == 0 {
        return Ok((g, h));
    }
    if !g[(0, 0)].is_positive() {
        return Err(Error::DegenerateLattice);
    }
    let dr = BigRational::from_float(delta).ok_or_else(|| Error::InvalidConfig("delta".into()))?;
    let (dp, dq) = (dr.numer().clone(), dr.denom().clone());

    // 1-based indices: d[0] = 1, d[i] = det of the leading i×i Gram block
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    d[1] = g[(0, 0)].clone();
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    let mut k = 2usize;
    let mut kmax = 1usize;

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = g[(k - 1, j - 1)].clone();
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if !u.is_positive() {
                        return Err(Error::DegenerateLattice);
                    }
                    d[k] = u;
                }
            }
        }
        red(&mut g, &mut h, &mut lam, &d, k, k - 1);
        let lhs = &dq * &d[k] * &d[k - 2];
        let rhs = &dp * &d[k - 1] * &d[k - 1] - &dq * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            // swap b_k and b_{k-1}
            gram_swap(&mut g, k - 1, k - 2);
            h.swap_columns(k - 1, k - 2);
            for j in 1..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k];
            }
            d[k - 1] = b;
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(&mut g, &mut h, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    Ok((g, h))
}

fn red(
    g: &mut Matrix<BigInt>,
    h: &mut Matrix<BigInt>,
    lam: &mut [Vec<BigInt>],
    d: &[BigInt],
    k: usize,
    l: usize,
) {
    // reduce only when |μ| > 1/2 strictly, so a boundary μ = ±1/2 is left alone
    let two = BigInt::from(2);
    if (&two * lam[k][l].abs()) <= d[l] {
        return;
    }
    let q = (&two * &lam[k][l] + &d[l]).div_floor(&(&two * &d[l]));
    gram_sub(g, k - 1, l - 1, &q);
    col_sub(h, k - 1, l - 1, &q);
    lam[k][l] = &lam[k][l] - &q * &d[l];
    for i in 1..l {
        lam[k][i] = &lam[k][i] - &q * &lam[l][i];
    }
}

/// Gram–Schmidt coefficients `μ` and squared lengths `B` from a Gram matrix.
fn gso_f64(g: &Matrix<f64>) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.rows();
    let mut mu = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let s: f64 = (0..j).map(|l| mu[j][l] * mu[i][l] * b[l]).sum();
            mu[i][j] = (g[(i, j)] - s) / b[j];
        }
        b[i] = g[(i, i)] - (0..i).map(|l| mu[i][l] * mu[i][l] * b[l]).sum::<f64>();
    }
    (mu, b)
}

fn float_lll(mut g: Matrix<f64>, delta: f64) -> Result<(Matrix<f64>, Matrix<BigInt>)> {
    let n = g.rows();
    let mut h = Matrix::<BigInt>::identity(n);
    let scale = (0..n).map(|i| g[(i, i)]).fold(0.0f64, f64::max);
    let mut k = 1usize;
    let mut steps = 0u64;
    while k < n {
        steps += 1;
        if steps > 1_000_000 {
            return Err(Error::InvalidConfig("floating-point LLL did not converge".into()));
        }
        for j in (0..k).rev() {
            let (mu, _) = gso_f64(&g);
            if mu[k][j].abs() > 0.5 + 1e-12 {
                let q = mu[k][j].round();
                gram_sub(&mut g, k, j, &q);
                col_sub(&mut h, k, j, &BigInt::from(q as i64));
            }
        }
        let (mu, b) = gso_f64(&g);
        if b.iter().any(|&x| x <= 1e-14 * scale) {
            return Err(Error::DegenerateLattice);
        }
        if b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] * (1.0 - 1e-12) {
            gram_swap(&mut g, k, k - 1);
            h.swap_columns(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    if n == 1 && g[(0, 0)] <= 0.0 {
        return Err(Error::DegenerateLattice);
    }
    Ok((g, h))
}
