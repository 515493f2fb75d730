//! Monte Carlo estimate of Eve's correct decision probability over a fast
//! Rayleigh fading channel `z = H·x + e`.
//!
//! Eve knows `H` and runs coherent ML over the whole codebook; a trial counts
//! as a success when the decoded codeword lies in the coset that was sent.
//! Decoding uses a box-constrained Schnorr–Euchner search, checked against
//! the exhaustive decoder on every hundredth trial.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::coset::{CosetCode, Rates};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Rayleigh scale giving `E[h²] = 1`.
pub const RAYLEIGH_SCALE: f64 = FRAC_1_SQRT_2;
/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;
pub const MIN_TRIALS: u64 = 1000;
/// One trial in `AUDIT_PERIOD` is re-decoded exhaustively.
pub const AUDIT_PERIOD: u64 = 100;
pub const DECODER: &str = "sphere (box-constrained Schnorr-Euchner), exhaustive audit 1/100";
pub const SNR_DEFINITION: &str = "snr_db = 10*log10(E_avg / (n * sigma^2))";

const CHUNK: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub sigma: f64,
    pub n: usize,
}

impl ChannelParams {
    pub fn new(sigma: f64, n: usize) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidConfig(format!("sigma must be positive, got {sigma}")));
        }
        Ok(ChannelParams { sigma, n })
    }
}

/// Draws the fading diagonal and the noise vector.
pub fn sample_channel<R: Rng + ?Sized>(params: &ChannelParams, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let h = (0..params.n).map(|_| rayleigh(rng)).collect();
    let e = (0..params.n).map(|_| params.sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    (h, e)
}

fn rayleigh<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    RAYLEIGH_SCALE * (-2.0 * (1.0 - u).ln()).sqrt()
}

/// Index of the codeword minimizing `‖z − H·x‖²`, smallest index on ties.
pub fn ml_decode(z: &[f64], h: &[f64], codebook: &[Vec<f64>]) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (i, x) in codebook.iter().enumerate() {
        let d = faded_distance(z, h, x);
        if d < best.0 {
            best = (d, i);
        }
    }
    best.1
}

fn faded_distance(z: &[f64], h: &[f64], x: &[f64]) -> f64 {
    z.iter().zip(h).zip(x).map(|((z, h), x)| (z - h * x).powi(2)).sum()
}

/// ML decoder for the PAM codebook of one code.
#[derive(Debug, Clone)]
pub struct CodeDecoder {
    n: usize,
    m: u32,
    basis: Matrix<f64>,
    // codebook points, row-major by ordinal
    points: Vec<f64>,
}

/// Outcome of one decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decoded {
    pub ordinal: u32,
    pub distance_sq: f64,
    /// The sphere search was skipped because the faded basis was numerically singular.
    pub fallback: bool,
}

impl CodeDecoder {
    pub fn new<T: Scalar>(code: &CosetCode<T>) -> Self {
        let n = code.dim();
        let points = (0..code.len() as u32).flat_map(|o| code.codeword(o).point).collect();
        CodeDecoder { n, m: code.signaling().m_pam(), basis: code.basis_f64().clone(), points }
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, ordinal: u32) -> &[f64] {
        let o = ordinal as usize * self.n;
        &self.points[o..o + self.n]
    }

    pub fn decode_exhaustive(&self, z: &[f64], h: &[f64]) -> Decoded {
        let mut best = (f64::INFINITY, 0u32);
        for (i, x) in self.points.chunks_exact(self.n).enumerate() {
            let d = faded_distance(z, h, x);
            if d < best.0 {
                best = (d, i as u32);
            }
        }
        Decoded { ordinal: best.1, distance_sq: best.0, fallback: false }
    }

    /// Box-constrained sphere decoding; same answer as
    /// [`decode_exhaustive`](Self::decode_exhaustive) up to floating ties.
    pub fn decode(&self, z: &[f64], h: &[f64]) -> Decoded {
        let n = self.n;
        let m = self.m as i64;
        // z + H·B·(M−1)·1 = 2·H·B·u + e
        let mut a = vec![vec![0.0; n + 1]; n];
        for i in 0..n {
            let row = self.basis.row(i);
            let shift: f64 = row.iter().sum::<f64>() * (m - 1) as f64;
            for j in 0..n {
                a[i][j] = 2.0 * h[i] * row[j];
            }
            a[i][n] = z[i] + h[i] * shift;
        }
        let scale = a.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |s, v| s.max(v.abs()));
        householder(&mut a);
        if (0..n).any(|i| a[i][i].abs() <= 1e-12 * scale.max(1e-300)) {
            let mut d = self.decode_exhaustive(z, h);
            d.fallback = true;
            return d;
        }
        let (u, dist) = box_search(&a, m);
        let ordinal = u.iter().fold(0u64, |acc, &c| acc * m as u64 + c as u64) as u32;
        Decoded { ordinal, distance_sq: dist, fallback: false }
    }
}

// Triangularizes the augmented matrix [A | y] in place with Householder
// reflections, leaving R and Qᵀy.
fn householder(a: &mut [Vec<f64>]) {
    let n = a.len();
    for k in 0..n {
        let norm = (k..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..=n {
            let dot: f64 = (k..n).map(|i| v[i - k] * a[i][j]).sum();
            let f = 2.0 * dot / vv;
            for i in k..n {
                a[i][j] -= f * v[i - k];
            }
        }
    }
}

// Minimizes ‖y − R·u‖² over u ∈ {0, …, m−1}ⁿ for the upper triangular R stored
// in r[..][..n] with y in column n. Ties go to the smallest ordinal, which is
// the lexicographically smallest u.
fn box_search(r: &[Vec<f64>], m: i64) -> (Vec<i64>, f64) {
    let n = r.len();
    let mut u = vec![0i64; n];
    let mut best_u = vec![0i64; n];
    let mut best = f64::INFINITY;
    let mut partial = vec![0.0; n + 1];
    let mut center = vec![0.0; n];
    // per level: next untried value below and above the first one
    let mut down = vec![0i64; n];
    let mut up = vec![0i64; n];
    let enter = |i: usize, u: &mut [i64], center: &mut [f64], down: &mut [i64], up: &mut [i64]| {
        let s: f64 = (i + 1..n).map(|j| r[i][j] * u[j] as f64).sum();
        let c = (r[i][n] - s) / r[i][i];
        center[i] = c;
        let first = (c.round() as i64).clamp(0, m - 1);
        u[i] = first;
        down[i] = first - 1;
        up[i] = first + 1;
    };
    let mut i = n - 1;
    enter(i, &mut u, &mut center, &mut down, &mut up);
    loop {
        let t = r[i][i] * (u[i] as f64 - center[i]);
        let cost = partial[i + 1] + t * t;
        // values at a level come in order of distance from the center, so a
        // pruned value ends the level
        let mut level_done = cost > best;
        if !level_done {
            if i > 0 {
                partial[i] = cost;
                i -= 1;
                enter(i, &mut u, &mut center, &mut down, &mut up);
                continue;
            }
            if cost < best || u < best_u {
                best = cost;
                best_u.copy_from_slice(&u);
            }
        }
        loop {
            if !level_done && next_candidate(i, &mut u, &center, &mut down, &mut up, m) {
                break;
            }
            i += 1;
            if i == n {
                return (best_u, best);
            }
            level_done = false;
        }
    }
}

fn next_candidate(i: usize, u: &mut [i64], center: &[f64], down: &mut [i64], up: &mut [i64], m: i64) -> bool {
    let c = center[i];
    let d_ok = down[i] >= 0;
    let u_ok = up[i] < m;
    let take_down = match (d_ok, u_ok) {
        (false, false) => return false,
        (true, false) => true,
        (false, true) => false,
        (true, true) => (c - down[i] as f64) <= (up[i] as f64 - c),
    };
    if take_down {
        u[i] = down[i];
        down[i] -= 1;
    } else {
        u[i] = up[i];
        up[i] += 1;
    }
    true
}

/// `10·log₁₀(E/(n·σ²))` with `E` the average codeword energy.
pub fn snr_db<T: Scalar>(code: &CosetCode<T>, sigma: f64) -> f64 {
    10.0 * (code.average_energy() / (code.dim() as f64 * sigma * sigma)).log10()
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// SHA-256 of the code's defining data: `M`, `B_B` and `B_E` in full precision.
pub fn code_hash<T: Scalar>(code: &CosetCode<T>) -> String {
    let mut h = Sha256::new();
    h.update(format!("m_pam={};", code.signaling().m_pam()));
    for (name, b) in [("B", code.pair().lattice_b().basis()), ("E", code.pair().lattice_e().basis())] {
        h.update(format!("{name}:{}x{}:", b.rows(), b.cols()));
        for x in b.as_slice() {
            h.update(format!("{x},"));
        }
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone)]
pub struct SimPlan<'a, T> {
    pub code: &'a CosetCode<T>,
    pub sigma_grid: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
}

impl<T: Scalar> SimPlan<'_, T> {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_grid.is_empty() {
            return Err(Error::InvalidConfig("sigma grid is empty".into()));
        }
        if let Some(s) = self.sigma_grid.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma must be positive, got {s}")));
        }
        if self.trials < MIN_TRIALS {
            return Err(Error::InvalidConfig(format!("at least {MIN_TRIALS} trials per point, got {}", self.trials)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub grid_index: usize,
    pub sigma: f64,
    pub snr_db: f64,
    pub trials: u64,
    pub successes: u64,
    pub ecdp: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl CurvePoint {
    /// The 95% intervals do not overlap.
    pub fn disjoint(&self, other: &CurvePoint) -> bool {
        self.ci_hi < other.ci_lo || other.ci_hi < self.ci_lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMetadata {
    pub seed: u64,
    pub code_hash: String,
    pub decoder: String,
    pub snr_definition: String,
    pub energy: f64,
    pub index: u64,
    pub rates: Rates,
    pub m_pam: u32,
    /// `1/index`.
    pub lower_bound: f64,
    /// Grid points whose upper confidence limit lies below `1/index`.
    pub below_bound: Vec<usize>,
    pub audited: u64,
    pub audit_mismatches: u64,
    pub fallbacks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EcdpCurve {
    pub points: Vec<CurvePoint>,
    pub metadata: CurveMetadata,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    successes: u64,
    audited: u64,
    mismatches: u64,
    fallbacks: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            successes: self.successes + o.successes,
            audited: self.audited + o.audited,
            mismatches: self.mismatches + o.mismatches,
            fallbacks: self.fallbacks + o.fallbacks,
        }
    }
}

/// Per-grid-point generator; trial `t` uses stream `t` of it.
fn point_rng(master_seed: u64, grid_index: usize) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&(grid_index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

/// Runs the plan. The result depends only on the plan, not on the number of
/// threads.
pub fn simulate_ecdp<T: Scalar>(plan: &SimPlan<'_, T>) -> Result<EcdpCurve> {
    plan.validate()?;
    let code = plan.code;
    let decoder = CodeDecoder::new(code);
    let n = code.dim();
    let index = code.pair().index();
    let run = || -> Result<Vec<Tally>> {
        plan.sigma_grid
            .iter()
            .enumerate()
            .map(|(g, &sigma)| {
                let params = ChannelParams::new(sigma, n)?;
                let base = point_rng(plan.master_seed, g);
                let chunks = plan.trials.div_ceil(CHUNK);
                Ok((0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let mut tally = Tally::default();
                        for t in c * CHUNK..((c + 1) * CHUNK).min(plan.trials) {
                            let mut rng = base.clone();
                            rng.set_stream(t);
                            tally = tally + trial(code, &decoder, &params, index, t, &mut rng);
                        }
                        tally
                    })
                    .reduce(Tally::default, |a, b| a + b))
            })
            .collect()
    };
    let tallies = if plan.threads == 0 {
        run()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(run)?
    };
    let lower_bound = 1.0 / index as f64;
    let points: Vec<CurvePoint> = plan
        .sigma_grid
        .iter()
        .zip(&tallies)
        .enumerate()
        .map(|(g, (&sigma, t))| {
            let (ci_lo, ci_hi) = wilson_interval(t.successes, plan.trials, Z95);
            CurvePoint {
                grid_index: g,
                sigma,
                snr_db: snr_db(code, sigma),
                trials: plan.trials,
                successes: t.successes,
                ecdp: t.successes as f64 / plan.trials as f64,
                ci_lo,
                ci_hi,
            }
        })
        .collect();
    let total = tallies.iter().fold(Tally::default(), |a, &b| a + b);
    let metadata = CurveMetadata {
        seed: plan.master_seed,
        code_hash: code_hash(code),
        decoder: DECODER.into(),
        snr_definition: SNR_DEFINITION.into(),
        energy: code.average_energy(),
        index,
        rates: code.rates(),
        m_pam: code.signaling().m_pam(),
        lower_bound,
        below_bound: points.iter().filter(|p| p.ci_hi < lower_bound).map(|p| p.grid_index).collect(),
        audited: total.audited,
        audit_mismatches: total.mismatches,
        fallbacks: total.fallbacks,
    };
    Ok(EcdpCurve { points, metadata })
}

fn trial<T: Scalar>(
    code: &CosetCode<T>,
    decoder: &CodeDecoder,
    params: &ChannelParams,
    index: u64,
    t: u64,
    rng: &mut ChaCha8Rng,
) -> Tally {
    let label = rng.random_range(0..index) as u32;
    let sent = code.encode_ordinal(label, rng);
    let (h, e) = sample_channel(params, rng);
    let z: Vec<f64> = sent.point.iter().zip(&h).zip(&e).map(|((x, h), e)| h * x + e).collect();
    let mut got = decoder.decode(&z, &h);
    let mut tally = Tally { fallbacks: got.fallback as u64, ..Tally::default() };
    if t % AUDIT_PERIOD == 0 && !got.fallback {
        let check = decoder.decode_exhaustive(&z, &h);
        tally.audited = 1;
        if check.ordinal != got.ordinal {
            tally.mismatches = 1;
            got = check;
        }
    }
    tally.successes = (code.label_ordinal_of(got.ordinal) == label) as u64;
    tally
}

/// Pairwise verdict at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// First code has the lower ECDP with disjoint intervals.
    Lower,
    Higher,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub grid_index: usize,
    pub sigma: f64,
    pub a: usize,
    pub b: usize,
    pub ecdp_a: f64,
    pub ecdp_b: f64,
    pub verdict: Verdict,
}

/// Compares every pair of curves point by point. Curves must share the grid
/// and the trial count.
pub fn compare_codes(curves: &[&EcdpCurve]) -> Result<Vec<ComparisonRow>> {
    let Some(first) = curves.first() else { return Ok(Vec::new()) };
    let grid = |c: &EcdpCurve| c.points.iter().map(|p| (p.sigma.to_bits(), p.trials)).collect::<Vec<_>>();
    let g0 = grid(first);
    if curves.iter().any(|c| grid(c) != g0) {
        return Err(Error::GridMismatch);
    }
    let mut rows = Vec::new();
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            for (pa, pb) in curves[a].points.iter().zip(&curves[b].points) {
                let verdict = if pa.ci_hi < pb.ci_lo {
                    Verdict::Lower
                } else if pb.ci_hi < pa.ci_lo {
                    Verdict::Higher
                } else {
                    Verdict::Tie
                };
                rows.push(ComparisonRow {
                    grid_index: pa.grid_index,
                    sigma: pa.sigma,
                    a,
                    b,
                    ecdp_a: pa.ecdp,
                    ecdp_b: pb.ecdp,
                    verdict,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{NestedLatticePair, SignalingSet};
    use crate::lattice::Lattice;

    fn code(e: Vec<Vec<i64>>, m: u32) -> CosetCode<i64> {
        let n = e.len();
        let pair = NestedLatticePair::new(Lattice::integer(n), Lattice::from_columns(e).unwrap()).unwrap();
        CosetCode::new(pair, SignalingSet::new(m).unwrap()).unwrap()
    }

    #[test]
    fn one_dimensional_example() {
        let book: Vec<Vec<f64>> = (-2..=2).map(|x| vec![x as f64]).collect();
        assert_eq!(book[ml_decode(&[1.6], &[1.0], &book)][0], 2.0);
        // equidistant: the earlier entry wins
        assert_eq!(ml_decode(&[0.5], &[1.0], &book), 2);
    }

    #[test]
    fn noiseless_decoding_is_exact() {
        let c = code(vec![vec![3, 15], vec![15, 3]], 16);
        let dec = CodeDecoder::new(&c);
        let h = [0.7, 1.3];
        for o in (0..c.len() as u32).step_by(7) {
            let x = c.codeword(o).point;
            let z: Vec<f64> = x.iter().zip(&h).map(|(x, h)| x * h).collect();
            assert_eq!(dec.decode(&z, &h).ordinal, o);
            assert_eq!(dec.decode_exhaustive(&z, &h).ordinal, o);
        }
    }

    #[test]
    fn sphere_matches_exhaustive() {
        let c = code(vec![vec![-2, 0, 0, -4], vec![-3, -1, -3, -1], vec![4, 0, -2, 0], vec![-1, 3, -3, -1]], 8);
        let dec = CodeDecoder::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sigma in [0.1, 1.0, 5.0, 40.0] {
            let p = ChannelParams::new(sigma, 4).unwrap();
            for _ in 0..300 {
                let x = c.codeword(rng.random_range(0..c.len() as u32)).point;
                let (h, e) = sample_channel(&p, &mut rng);
                let z: Vec<f64> = x.iter().zip(&h).zip(&e).map(|((x, h), e)| h * x + e).collect();
                let a = dec.decode(&z, &h);
                let b = dec.decode_exhaustive(&z, &h);
                assert_eq!(a.ordinal, b.ordinal, "sigma {sigma}");
                assert!((a.distance_sq - b.distance_sq).abs() <= 1e-9 * b.distance_sq.max(1.0));
            }
        }
    }

    #[test]
    fn singular_fading_falls_back() {
        let c = code(vec![vec![2, 0], vec![0, 2]], 4);
        let dec = CodeDecoder::new(&c);
        let d = dec.decode(&[0.3, 2.9], &[0.0, 1.0]);
        assert!(d.fallback);
        assert_eq!(d, Decoded { fallback: true, ..dec.decode_exhaustive(&[0.3, 2.9], &[0.0, 1.0]) });
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 1000, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.004);
        let (lo, hi) = wilson_interval(500, 1000, Z95);
        assert!((lo - 0.46907).abs() < 1e-4 && (hi - 0.53093).abs() < 1e-4);
        let (lo, hi) = wilson_interval(1000, 1000, Z95);
        assert_eq!(hi, 1.0);
        assert!(lo < 1.0);
    }

    #[test]
    fn snr_conversion() {
        let c = code(vec![vec![4, 0, 0, 0], vec![0, 4, 0, 0], vec![0, 0, 4, 0], vec![0, 0, 0, 4]], 16);
        assert!((snr_db(&c, 4.0) - 10.0 * (340.0f64 / 64.0).log10()).abs() < 1e-12);
        assert!((snr_db(&c, 8.0) - snr_db(&c, 4.0) + 20.0 * 2f64.log10()).abs() < 1e-12);
        let sigma = (c.average_energy() / 4.0).sqrt();
        assert!(snr_db(&c, sigma).abs() < 1e-12);
    }

    #[test]
    fn plan_validation() {
        let c = code(vec![vec![2]], 2);
        let mut plan = SimPlan { code: &c, sigma_grid: vec![1.0], trials: 999, master_seed: 0, threads: 1 };
        assert!(simulate_ecdp(&plan).is_err());
        plan.trials = 1000;
        plan.sigma_grid.clear();
        assert!(simulate_ecdp(&plan).is_err());
        plan.sigma_grid = vec![-1.0];
        assert!(simulate_ecdp(&plan).is_err());
    }

    #[test]
    fn grids_must_match() {
        let c = code(vec![vec![2]], 2);
        let a = simulate_ecdp(&SimPlan { code: &c, sigma_grid: vec![1.0], trials: 1000, master_seed: 1, threads: 1 }).unwrap();
        let b = simulate_ecdp(&SimPlan { code: &c, sigma_grid: vec![2.0], trials: 1000, master_seed: 1, threads: 1 }).unwrap();
        assert_eq!(compare_codes(&[&a, &b]), Err(Error::GridMismatch));
        let rows = compare_codes(&[&a, &a]).unwrap();
        assert!(rows.iter().all(|r| r.verdict == Verdict::Tie));
    }
}
