//! Fincke–Pohst enumeration of all lattice points inside a ball.
//!
//! Works on a Gram matrix in double precision. Callers that need exact answers
//! enlarge the radius slightly and re-check the returned coefficient vectors
//! exactly.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Cholesky-style decomposition `xᵀGx = Σᵢ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`.
#[derive(Debug, Clone)]
pub struct QuadraticDecomposition {
    q: Vec<Vec<f64>>,
}

impl QuadraticDecomposition {
    pub fn new(gram: &Matrix<f64>) -> Result<Self> {
        let n = gram.rows();
        if !gram.is_square() || n == 0 {
            return Err(Error::DegenerateLattice);
        }
        let mut q: Vec<Vec<f64>> = (0..n).map(|i| gram.row(i).to_vec()).collect();
        for i in 0..n {
            if !(q[i][i] > 0.0) || !q[i][i].is_finite() {
                return Err(Error::DegenerateLattice);
            }
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        Ok(QuadraticDecomposition { q })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Visits every nonzero integer `x` with `xᵀGx ≤ radius_sq`, passing the
    /// vector and its (floating) norm. Enumeration stops early when `visit`
    /// returns `false`; the return value tells whether it ran to completion.
    pub fn for_each_in_ball<F: FnMut(&[i64], f64) -> bool>(&self, radius_sq: f64, mut visit: F) -> bool {
        let n = self.dim();
        let mut x = vec![0i64; n];
        self.descend(n - 1, radius_sq, 0.0, &mut x, &mut visit)
    }

    fn descend<F: FnMut(&[i64], f64) -> bool>(&self, i: usize, radius_sq: f64, used: f64, x: &mut [i64], visit: &mut F) -> bool {
        let q = &self.q;
        let center: f64 = -(i + 1..x.len()).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let room = radius_sq - used;
        if room < 0.0 {
            return true;
        }
        let half = (room / q[i][i]).sqrt();
        let lo = (center - half).ceil() as i64;
        let hi = (center + half).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - center;
            let total = used + q[i][i] * t * t;
            if total > radius_sq {
                continue;
            }
            if i == 0 {
                if x.iter().any(|&c| c != 0) && !visit(x, total) {
                    x[i] = 0;
                    return false;
                }
            } else if !self.descend(i - 1, radius_sq, total, x, visit) {
                x[i] = 0;
                return false;
            }
        }
        x[i] = 0;
        true
    }
}

/// Collects every nonzero coefficient vector with `xᵀGx ≤ radius_sq`, failing with
/// `BoundsExceeded` past `limit` points.
pub fn points_in_ball(gram: &Matrix<f64>, radius_sq: f64, limit: usize) -> Result<Vec<(Vec<i64>, f64)>> {
    let dec = QuadraticDecomposition::new(gram)?;
    let mut out = Vec::new();
    let complete = dec.for_each_in_ball(radius_sq, |x, norm| {
        out.push((x.to_vec(), norm));
        out.len() <= limit
    });
    if !complete {
        return Err(Error::BoundsExceeded(format!("more than {limit} lattice points within squared radius {radius_sq}")));
    }
    Ok(out)
}

/// Sign convention for "one vector per ± pair": first nonzero entry positive.
pub fn is_sign_canonical(x: &[i64]) -> bool {
    x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(gram: &Matrix<f64>, r: f64, box_: i64) -> usize {
        let n = gram.rows();
        let mut count = 0;
        let mut x = vec![-box_; n];
        loop {
            let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
            if x.iter().any(|&v| v != 0) && gram.quadratic_form(&xf) <= r {
                count += 1;
            }
            let mut k = 0;
            while k < n {
                x[k] += 1;
                if x[k] <= box_ {
                    break;
                }
                x[k] = -box_;
                k += 1;
            }
            if k == n {
                return count;
            }
        }
    }

    #[test]
    fn counts_in_z2() {
        let g = Matrix::<f64>::identity(2);
        // 4 of norm 1, 4 of norm 2, 4 of norm 4
        assert_eq!(points_in_ball(&g, 1.0, 100).unwrap().len(), 4);
        assert_eq!(points_in_ball(&g, 2.0, 100).unwrap().len(), 8);
        assert_eq!(points_in_ball(&g, 4.0, 100).unwrap().len(), 12);
    }

    #[test]
    fn matches_brute_force_on_skewed_gram() {
        let b = Matrix::from_columns(vec![vec![3.0, 1.0, 0.0], vec![1.0, 4.0, 2.0], vec![-1.0, 2.0, 5.0]]);
        let g = b.gram();
        for r in [9.0, 20.0, 41.5] {
            assert_eq!(points_in_ball(&g, r, 100_000).unwrap().len(), brute(&g, r, 12));
        }
    }

    #[test]
    fn limit_is_reported() {
        let g = Matrix::<f64>::identity(3);
        assert!(matches!(points_in_ball(&g, 100.0, 10), Err(Error::BoundsExceeded(_))));
    }

    #[test]
    fn sign_convention() {
        assert!(is_sign_canonical(&[0, 2, -1]));
        assert!(!is_sign_canonical(&[0, -2, 1]));
        assert!(!is_sign_canonical(&[0, 0]));
    }
}
