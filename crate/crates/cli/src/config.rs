//! Command options. Each option struct doubles as a config-file section: a
//! flag wins over the file, the file over the built-in default, and the fully
//! resolved parameters are written back into the sidecar in the same shape.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use wrlattice::io::IdealSpec;
use wrlattice::search::DEFAULT_MAX_ITERATIONS;
use wrlattice::SearchMode;

use crate::failure::{Failure, INPUT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Probabilistic,
    Exhaustive,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Probabilistic => SearchMode::Probabilistic,
            Mode::Exhaustive => SearchMode::Exhaustive,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub search: Option<SearchOpts>,
    pub ideal_scan: Option<IdealScanOpts>,
    pub analyze: Option<AnalyzeOpts>,
    pub simulate: Option<SimulateOpts>,
}

/// Reads a TOML config, or the `config` object of a JSON sidecar.
pub fn load(path: &Path) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(INPUT, format!("{}: {e}", path.display())))?;
    let bad = |e: String| Failure::new(INPUT, format!("{}: {e}", path.display()));
    if path.extension().is_some_and(|e| e == "json") {
        let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if let Some(c) = v.get_mut("config") {
            v = c.take();
        }
        serde_json::from_value(v).map_err(|e| bad(e.to_string()))
    } else {
        toml::from_str(&text).map_err(|e| bad(e.to_string()))
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{flag} is required (as a flag or in the config file)")))
}

#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SearchOpts {
    /// Dimension, 1 to 8.
    #[arg(long)]
    pub n: Option<usize>,
    /// Index of the sublattice in Zⁿ.
    #[arg(long)]
    pub index: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Sampled tuples before giving up (probabilistic mode).
    #[arg(long)]
    pub max_iterations: Option<u64>,
    /// Squared norms to try, comma separated; all admissible norms when absent.
    #[arg(long, value_delimiter = ',')]
    pub norms: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SearchParams {
    pub n: usize,
    pub index: u64,
    pub mode: Mode,
    pub max_iterations: u64,
    pub norms: Vec<u64>,
}

impl SearchOpts {
    pub fn merge(self, file: Option<SearchOpts>) -> Result<SearchParams, Failure> {
        let f = file.unwrap_or_default();
        Ok(SearchParams {
            n: required(self.n.or(f.n), "n")?,
            index: required(self.index.or(f.index), "index")?,
            mode: self.mode.or(f.mode).unwrap_or(Mode::Probabilistic),
            max_iterations: self.max_iterations.or(f.max_iterations).unwrap_or(DEFAULT_MAX_ITERATIONS),
            norms: self.norms.or(f.norms).unwrap_or_default(),
        })
    }
}

#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct IdealScanOpts {
    /// Smallest D (default 2).
    #[arg(long)]
    pub d_from: Option<i64>,
    /// Largest D.
    #[arg(long)]
    pub d_to: Option<i64>,
    /// Ideals of norm up to bound-factor·D are listed (default 2).
    #[arg(long)]
    pub bound_factor: Option<f64>,
    #[arg(long, conflicts_with = "odd_only")]
    #[serde(default)]
    pub even_only: bool,
    #[arg(long)]
    #[serde(default)]
    pub odd_only: bool,
    /// Exit 3 unless every known example in the scanned range is found.
    #[arg(long)]
    #[serde(default)]
    pub expect_known: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct IdealScanParams {
    pub d_from: i64,
    pub d_to: i64,
    pub bound_factor: f64,
    pub even_only: bool,
    pub odd_only: bool,
    pub expect_known: bool,
}

impl IdealScanOpts {
    pub fn merge(self, file: Option<IdealScanOpts>) -> Result<IdealScanParams, Failure> {
        let f = file.unwrap_or_default();
        let p = IdealScanParams {
            d_from: self.d_from.or(f.d_from).unwrap_or(2),
            d_to: required(self.d_to.or(f.d_to), "d-to")?,
            bound_factor: self.bound_factor.or(f.bound_factor).unwrap_or(2.0),
            even_only: self.even_only || f.even_only,
            odd_only: self.odd_only || f.odd_only,
            expect_known: self.expect_known || f.expect_known,
        };
        if p.even_only && p.odd_only {
            return Err(Failure::usage("--even-only and --odd-only exclude each other"));
        }
        Ok(p)
    }
}

#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct AnalyzeOpts {
    /// Lattice matrix files.
    #[serde(default)]
    pub files: Vec<PathBuf>,
    /// Principal ideal lattice `D:a,b` for the generator a + b√D; repeatable.
    #[arg(long)]
    #[serde(default)]
    pub ideal: Vec<String>,
    /// Rescale every lattice to this covolume first.
    #[arg(long)]
    pub normalize_vol: Option<f64>,
    /// Noise levels for the analytic ECDP, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Option<Vec<f64>>,
    /// Truncation radius² of the ECDP series (default max(25σ², 4λ₁)).
    #[arg(long)]
    pub radius_sq: Option<f64>,
    /// Covolume of the coarse lattice in the ECDP prefactor (default 1).
    #[arg(long)]
    pub vol_b: Option<f64>,
    /// Ball radius² for the minimum product distance (default 4λ₁).
    #[arg(long)]
    pub product_radius_sq: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct AnalyzeParams {
    pub files: Vec<PathBuf>,
    pub ideal: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize_vol: Option<f64>,
    pub sigma: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_sq: Option<f64>,
    pub vol_b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_radius_sq: Option<f64>,
}

impl AnalyzeOpts {
    pub fn merge(self, file: Option<AnalyzeOpts>) -> Result<AnalyzeParams, Failure> {
        let f = file.unwrap_or_default();
        let (files, ideal) = if self.files.is_empty() && self.ideal.is_empty() { (f.files, f.ideal) } else { (self.files, self.ideal) };
        if files.is_empty() && ideal.is_empty() {
            return Err(Failure::usage("nothing to analyze: give lattice files or --ideal"));
        }
        Ok(AnalyzeParams {
            files,
            ideal,
            normalize_vol: self.normalize_vol.or(f.normalize_vol),
            sigma: self.sigma.or(f.sigma).unwrap_or_default(),
            radius_sq: self.radius_sq.or(f.radius_sq),
            vol_b: self.vol_b.or(f.vol_b).unwrap_or(1.0),
            product_radius_sq: self.product_radius_sq.or(f.product_radius_sq),
        })
    }
}

/// `D:a,b` → the ideal generated by `a + b√D`.
pub fn parse_ideal(s: &str) -> Result<IdealSpec, Failure> {
    let bad = || Failure::usage(format!("ideal `{s}` is not of the form D:a,b"));
    let (d, g) = s.split_once(':').ok_or_else(bad)?;
    let (a, b) = g.split_once(',').ok_or_else(bad)?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    Ok(IdealSpec { d: num(d)?, generator: [num(a)?, num(b)?] })
}

#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SimulateOpts {
    /// Code descriptor files (TOML).
    #[serde(default)]
    pub codes: Vec<PathBuf>,
    /// Noise standard deviations, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "sigma_range")]
    pub sigma: Option<Vec<f64>>,
    /// Geometric grid `lo:hi:count`.
    #[arg(long)]
    pub sigma_range: Option<String>,
    /// Trials per grid point (default 100000).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SimulateParams {
    pub codes: Vec<PathBuf>,
    pub sigma: Vec<f64>,
    pub trials: u64,
    pub threads: usize,
}

impl SimulateOpts {
    pub fn merge(self, file: Option<SimulateOpts>) -> Result<SimulateParams, Failure> {
        let f = file.unwrap_or_default();
        let codes = if self.codes.is_empty() { f.codes } else { self.codes };
        if codes.is_empty() {
            return Err(Failure::usage("no code descriptors given"));
        }
        let sigma = match (self.sigma, self.sigma_range) {
            (Some(s), _) => s,
            (None, Some(r)) => geometric_grid(&r)?,
            (None, None) => match (f.sigma, f.sigma_range) {
                (Some(s), _) => s,
                (None, Some(r)) => geometric_grid(&r)?,
                (None, None) => return Err(Failure::usage("--sigma or --sigma-range is required")),
            },
        };
        Ok(SimulateParams {
            codes,
            sigma,
            trials: self.trials.or(f.trials).unwrap_or(100_000),
            threads: self.threads.or(f.threads).unwrap_or(0),
        })
    }
}

fn geometric_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::usage(format!("sigma range `{spec}` is not lo:hi:count with 0 < lo ≤ hi and count ≥ 1"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, count] = parts[..] else { return Err(bad()) };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || count == 0 {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let ratio = hi / lo;
    Ok((0..count).map(|k| if k + 1 == count { hi } else { lo * ratio.powf(k as f64 / (count - 1) as f64) }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_ideals() {
        let g = geometric_grid("1:8:4").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!((g[0], g[3]), (1.0, 8.0));
        assert!((g[1] - 2.0).abs() < 1e-12);
        assert!(geometric_grid("0:8:4").is_err());
        assert!(geometric_grid("1:8").is_err());
        assert_eq!(parse_ideal("3:18,6").unwrap(), IdealSpec { d: 3, generator: [18, 6] });
        assert!(parse_ideal("3:18").is_err());
    }
}
