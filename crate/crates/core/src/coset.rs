//! Nested lattice coset codes.
//!
//! A message is a coset of `Λ_E` in `Λ_B`, named by its Smith-form residues.
//! Codewords come from a PAM box on the `Λ_B` coordinates: the codebook is indexed
//! by `u ∈ {0, …, M−1}ⁿ`, the transmitted point is `B_B·(2u − (M−1)·1)` and the
//! coset carried is that of the lattice point `B_B·u`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{sublattice_coefficients, Lattice, DEFAULT_TOL};
use crate::matrix::Matrix;
use crate::normal_form::smith_normal_form;
use crate::scalar::Scalar;

/// Largest codebook a code may enumerate.
pub const MAX_CODEBOOK: u128 = 1 << 20;

/// Residues `(r₁, …, rₙ)`, `0 ≤ rᵢ < dᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel(pub Vec<u64>);

impl std::fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Λ_E ⊂ Λ_B` with `Λ_E = Λ_B·M` and the Smith form of `M`.
#[derive(Debug, Clone)]
pub struct NestedLatticePair<T> {
    lattice_b: Lattice<T>,
    lattice_e: Lattice<T>,
    coeff: Matrix<BigInt>,
    divisors: Vec<u64>,
    // rows of the Smith left transform, reduced modulo their divisor
    label_rows: Vec<Vec<u64>>,
    index: u64,
}

impl<T: Scalar> NestedLatticePair<T> {
    pub fn new(lattice_b: Lattice<T>, lattice_e: Lattice<T>) -> Result<Self> {
        let coeff = sublattice_coefficients(&lattice_e, &lattice_b, DEFAULT_TOL)?;
        let snf = smith_normal_form(&coeff)?;
        let divisors: Vec<u64> = snf.divisors.iter().map(|d| d.to_u64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        let index = divisors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)).ok_or(Error::Overflow)?;
        let n = divisors.len();
        let label_rows = (0..n)
            .map(|i| {
                let d = BigInt::from(divisors[i]);
                (0..n).map(|j| snf.left[(i, j)].mod_floor(&d).to_u64().expect("residue below u64 divisor")).collect()
            })
            .collect();
        Ok(NestedLatticePair { lattice_b, lattice_e, coeff, divisors, label_rows, index })
    }

    pub fn lattice_b(&self) -> &Lattice<T> {
        &self.lattice_b
    }

    pub fn lattice_e(&self) -> &Lattice<T> {
        &self.lattice_e
    }

    pub fn coeff(&self) -> &Matrix<BigInt> {
        &self.coeff
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// `[Λ_B : Λ_E]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.divisors.len()
    }

    /// Label of the lattice point with `Λ_B` coordinates `coords`.
    pub fn label_of_coords(&self, coords: &[i64]) -> CosetLabel {
        CosetLabel(
            self.label_rows
                .iter()
                .zip(&self.divisors)
                .map(|(row, &d)| {
                    let d128 = d as u128;
                    row.iter()
                        .zip(coords)
                        .fold(0u128, |acc, (&u, &c)| (acc + u as u128 * (c.rem_euclid(d as i64) as u128)) % d128)
                        as u64
                })
                .collect(),
        )
    }

    pub fn coset_label(&self, x: &[T]) -> Result<CosetLabel> {
        let coords = self.lattice_b.coordinates(x, DEFAULT_TOL)?;
        let d: Vec<BigInt> = self.divisors.iter().map(|&d| BigInt::from(d)).collect();
        let residues = self
            .label_rows
            .iter()
            .zip(&d)
            .map(|(row, d)| {
                let s: BigInt = row.iter().zip(&coords).map(|(&u, c)| BigInt::from(u) * c).sum();
                s.mod_floor(d).to_u64().expect("residue below u64 divisor")
            })
            .collect();
        Ok(CosetLabel(residues))
    }

    pub fn validate_label(&self, label: &CosetLabel) -> Result<()> {
        if label.0.len() != self.dim() || label.0.iter().zip(&self.divisors).any(|(r, d)| r >= d) {
            return Err(Error::LabelOutOfRange { label: label.0.clone(), divisors: self.divisors.clone() });
        }
        Ok(())
    }

    /// Position of a label in `0..index` (mixed radix over the divisors).
    pub fn label_ordinal(&self, label: &CosetLabel) -> u64 {
        label.0.iter().zip(&self.divisors).fold(0u64, |acc, (&r, &d)| acc * d + r)
    }

    pub fn label_from_ordinal(&self, mut ordinal: u64) -> CosetLabel {
        let mut r = vec![0u64; self.dim()];
        for (slot, &d) in r.iter_mut().zip(&self.divisors).rev() {
            *slot = ordinal % d;
            ordinal /= d;
        }
        CosetLabel(r)
    }

    /// All labels, in ordinal order.
    pub fn labels(&self) -> impl Iterator<Item = CosetLabel> + '_ {
        (0..self.index).map(|o| self.label_from_ordinal(o))
    }
}

/// Symmetric PAM alphabet `{−M+1, −M+3, …, M−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignalingSet {
    m_pam: u32,
}

impl SignalingSet {
    pub fn new(m_pam: u32) -> Result<Self> {
        if m_pam == 0 || m_pam % 2 != 0 {
            return Err(Error::InvalidSignaling(m_pam));
        }
        Ok(SignalingSet { m_pam })
    }

    pub fn m_pam(&self) -> u32 {
        self.m_pam
    }

    pub fn values(&self) -> Vec<i64> {
        let m = self.m_pam as i64;
        (0..m).map(|u| 2 * u - (m - 1)).collect()
    }

    /// Per-coordinate second moment `(M²−1)/3`.
    pub fn variance(&self) -> f64 {
        let m = self.m_pam as f64;
        (m * m - 1.0) / 3.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rates {
    /// Total rate, bits per channel use.
    pub r: f64,
    /// Information rate.
    pub r_i: f64,
    /// Confusion rate.
    pub r_c: f64,
}

/// One codebook entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub ordinal: u32,
    /// Lattice coordinates `u`.
    pub coords: Vec<i64>,
    /// Transmitted point `B_B·s`.
    pub point: Vec<f64>,
}

/// Nested pair plus PAM codebook.
#[derive(Debug, Clone)]
pub struct CosetCode<T> {
    pair: NestedLatticePair<T>,
    signaling: SignalingSet,
    basis: Matrix<f64>,
    // label ordinal of each codebook entry
    label_of: Vec<u32>,
    // codebook entries of each coset
    members: Vec<Vec<u32>>,
}

impl<T: Scalar> CosetCode<T> {
    /// Builds the codebook; fails with `EmptyCoset` if some coset has no
    /// representative.
    pub fn new(pair: NestedLatticePair<T>, signaling: SignalingSet) -> Result<Self> {
        let n = pair.dim();
        let m = signaling.m_pam() as u128;
        let size = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(m)).unwrap_or(u128::MAX);
        if size > MAX_CODEBOOK {
            return Err(Error::CodebookTooLarge { size, limit: MAX_CODEBOOK });
        }
        let size = size as usize;
        let index = pair.index();
        if index as u128 > size as u128 {
            return Err(Error::EmptyCoset { label: pair.label_from_ordinal(size as u64).0 });
        }
        let mut label_of = Vec::with_capacity(size);
        let mut members = vec![Vec::new(); index as usize];
        let mut u = vec![0i64; n];
        for ord in 0..size {
            decode_ordinal(ord as u64, signaling.m_pam(), &mut u);
            let l = pair.label_ordinal(&pair.label_of_coords(&u)) as u32;
            label_of.push(l);
            members[l as usize].push(ord as u32);
        }
        if let Some(empty) = members.iter().position(Vec::is_empty) {
            return Err(Error::EmptyCoset { label: pair.label_from_ordinal(empty as u64).0 });
        }
        let basis = pair.lattice_b().basis().to_f64();
        Ok(CosetCode { pair, signaling, basis, label_of, members })
    }

    pub fn pair(&self) -> &NestedLatticePair<T> {
        &self.pair
    }

    pub fn signaling(&self) -> SignalingSet {
        self.signaling
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn len(&self) -> usize {
        self.label_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label_of.is_empty()
    }

    /// `Λ_B` basis as used for transmission.
    pub fn basis_f64(&self) -> &Matrix<f64> {
        &self.basis
    }

    pub fn codeword(&self, ordinal: u32) -> Codeword {
        let mut u = vec![0i64; self.dim()];
        decode_ordinal(ordinal as u64, self.signaling.m_pam(), &mut u);
        let m = self.signaling.m_pam() as i64;
        let s: Vec<f64> = u.iter().map(|&c| (2 * c - (m - 1)) as f64).collect();
        Codeword { ordinal, point: self.basis.mul_vec(&s), coords: u }
    }

    /// Codebook ordinal of the coordinates `u` (first coordinate most significant).
    pub fn ordinal_of(&self, coords: &[i64]) -> u32 {
        let m = self.signaling.m_pam() as u64;
        coords.iter().fold(0u64, |acc, &c| acc * m + c as u64) as u32
    }

    /// Label ordinal carried by a codebook entry.
    pub fn label_ordinal_of(&self, ordinal: u32) -> u32 {
        self.label_of[ordinal as usize]
    }

    pub fn representatives(&self, label: &CosetLabel) -> Result<&[u32]> {
        self.pair.validate_label(label)?;
        Ok(&self.members[self.pair.label_ordinal(label) as usize])
    }

    /// A uniformly random codebook point of the coset `message`.
    pub fn encode<R: Rng + ?Sized>(&self, message: &CosetLabel, rng: &mut R) -> Result<Codeword> {
        let reps = self.representatives(message)?;
        Ok(self.codeword(reps[rng.random_range(0..reps.len())]))
    }

    /// Same as [`encode`](Self::encode) with the message given by ordinal.
    pub fn encode_ordinal<R: Rng + ?Sized>(&self, label_ordinal: u32, rng: &mut R) -> Codeword {
        let reps = &self.members[label_ordinal as usize];
        self.codeword(reps[rng.random_range(0..reps.len())])
    }

    pub fn rates(&self) -> Rates {
        rates(self.pair.index(), self.dim(), self.signaling.m_pam())
    }

    /// Mean `‖x‖²` over the codebook: `(M²−1)/3 · tr(G_B)`.
    pub fn average_energy(&self) -> f64 {
        self.signaling.variance() * self.basis.gram().trace()
    }

    /// Smallest and largest number of representatives over the cosets.
    pub fn coset_balance(&self) -> (usize, usize) {
        let sizes = self.members.iter().map(Vec::len);
        (sizes.clone().min().unwrap_or(0), sizes.max().unwrap_or(0))
    }
}

/// `R = log₂ M`, `Rᵢ = log₂(index)/n`, `R_c = R − Rᵢ`.
pub fn rates(index: u64, n: usize, m_pam: u32) -> Rates {
    let r = (m_pam as f64).log2();
    let r_i = (index as f64).log2() / n as f64;
    Rates { r, r_i, r_c: r - r_i }
}

fn decode_ordinal(mut ordinal: u64, m: u32, u: &mut [i64]) {
    for slot in u.iter_mut().rev() {
        *slot = (ordinal % m as u64) as i64;
        ordinal /= m as u64;
    }
}

/// `|det|` of an integer coefficient matrix, used as a cross-check of the index.
pub fn coefficient_index(coeff: &Matrix<BigInt>) -> Result<u64> {
    coeff.determinant()?.abs().to_u64().ok_or(Error::Overflow)
}
