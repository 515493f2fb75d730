//! Hermite and Smith normal forms of integer matrices.
//!
//! Both are generic over any `num_integer::Integer` type; callers that cannot
//! bound their entries use `BigInt`.

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Column-style Hermite normal form `H = A·U` of a full-row-rank integer
/// matrix `A` (n × m, m ≥ n).
///
/// `H` is n × n lower triangular with a positive diagonal and
/// `0 ≤ H[i][j] < H[i][i]` for `j < i`. Two bases generate the same lattice
/// iff their forms are equal.
pub fn hermite_normal_form<T: Integer + Signed + Clone>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.rows();
    let m = a.cols();
    if m < n {
        return Err(Error::DegenerateLattice);
    }
    let mut h = a.clone();
    for i in 0..n {
        for j in i + 1..m {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (p, q) = (h[(i, i)].clone(), h[(i, j)].clone());
            let eg = p.extended_gcd(&q);
            let (pg, qg) = (p / eg.gcd.clone(), q / eg.gcd.clone());
            for r in 0..n {
                let ci = h[(r, i)].clone();
                let cj = h[(r, j)].clone();
                h[(r, i)] = eg.x.clone() * ci.clone() + eg.y.clone() * cj.clone();
                h[(r, j)] = pg.clone() * cj - qg.clone() * ci;
            }
        }
        if h[(i, i)].is_zero() {
            return Err(Error::DegenerateLattice);
        }
        if h[(i, i)].is_negative() {
            for r in 0..n {
                h[(r, i)] = -h[(r, i)].clone();
            }
        }
        for j in 0..i {
            let q = h[(i, j)].div_floor(&h[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = h[(r, j)].clone() - q.clone() * h[(r, i)].clone();
                h[(r, j)] = v;
            }
        }
    }
    let cols: Vec<Vec<T>> = (0..n).map(|c| h.column(c)).collect();
    Ok(Matrix::from_columns(cols))
}

/// Smith form `U·M·V = diag(d₁, …, dₙ)` with `d₁ | d₂ | … | dₙ`, `dᵢ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm<T> {
    pub divisors: Vec<T>,
    /// Unimodular row transform `U`.
    pub left: Matrix<T>,
    /// Unimodular column transform `V`.
    pub right: Matrix<T>,
}

pub fn smith_normal_form<T: Integer + Signed + Clone>(m: &Matrix<T>) -> Result<SmithForm<T>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::DegenerateLattice);
    }
    let mut a = m.clone();
    let mut u = Matrix::<T>::identity(n);
    let mut v = Matrix::<T>::identity(n);

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for r in t..n {
                for c in t..n {
                    if a[(r, c)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(br, bc)| a[(r, c)].abs() < a[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return Err(Error::DegenerateLattice);
            };
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_columns(t, pc);
            v.swap_columns(t, pc);

            let mut clean = true;
            for r in t + 1..n {
                let q = a[(r, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    add_row(&mut a, r, t, &q);
                    add_row(&mut u, r, t, &q);
                }
                if !a[(r, t)].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                let q = a[(t, c)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    add_col(&mut a, c, t, &q);
                    add_col(&mut v, c, t, &q);
                }
                if !a[(t, c)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offender = (t + 1..n)
                .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !a[(r, c)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((r, _)) => {
                    let one = T::one();
                    add_row(&mut a, t, r, &-one.clone());
                    add_row(&mut u, t, r, &-one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for c in 0..n {
                a[(t, c)] = -a[(t, c)].clone();
                u[(t, c)] = -u[(t, c)].clone();
            }
        }
    }
    Ok(SmithForm { divisors: (0..n).map(|i| a[(i, i)].clone()).collect(), left: u, right: v })
}

// row[dst] -= q * row[src]
fn add_row<T: Integer + Clone>(a: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for c in 0..a.cols() {
        let v = a[(dst, c)].clone() - q.clone() * a[(src, c)].clone();
        a[(dst, c)] = v;
    }
}

// col[dst] -= q * col[src]
fn add_col<T: Integer + Clone>(a: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for r in 0..a.rows() {
        let v = a[(r, dst)].clone() - q.clone() * a[(r, src)].clone();
        a[(r, dst)] = v;
    }
}
