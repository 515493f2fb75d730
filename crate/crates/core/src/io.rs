//! Text formats for lattices, rotations and code descriptors.
//!
//! A matrix file holds `n` on its first line (followed by the word `rotation`
//! for rotation files), then `n` rows of `n` numbers. Columns are the basis
//! vectors. Blank lines and anything after `#` are ignored.
//!
//! A code descriptor is TOML:
//!
//! ```toml
//! m_pam = 16
//! lattice_b = "z4.lat"        # optional, defaults to the integer lattice
//! lattice_e = "sub.lat"
//! rotation = "rot.lat"        # optional, applied to both lattices
//! ```
//!
//! or, for the lattice of a principal ideal `(a + b√d)` inside the ring of
//! integers, both scaled so the ring has covolume 1:
//!
//! ```toml
//! m_pam = 32
//! [ideal]
//! d = 3
//! generator = [18, 6]
//! ```
//!
//! Relative paths are resolved against the descriptor's directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coset::{CosetCode, NestedLatticePair, SignalingSet};
use crate::error::{Error, Result};
use crate::ideal::{principal_ideal_lattice, ring_of_integers_lattice};
use crate::lattice::{Lattice, DEFAULT_TOL};
use crate::matrix::Matrix;
use crate::quadratic::QuadraticField;
use crate::scalar::Scalar;

/// Entries of a matrix file, integral when every token parses as an integer.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixData {
    Integer(Matrix<i64>),
    Real(Matrix<f64>),
}

impl MatrixData {
    pub fn dim(&self) -> usize {
        match self {
            MatrixData::Integer(m) => m.rows(),
            MatrixData::Real(m) => m.rows(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            MatrixData::Integer(m) => m.to_f64(),
            MatrixData::Real(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub rotation: bool,
    pub data: MatrixData,
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let mut head = header.split_whitespace();
    let n: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse { line: hl, msg: format!("expected the dimension, found {header:?}") })?;
    let rotation = match head.next() {
        None => false,
        Some("rotation") => true,
        Some(t) => return Err(Error::Parse { line: hl, msg: format!("unknown header flag {t:?}") }),
    };
    if let Some(t) = head.next() {
        return Err(Error::Parse { line: hl, msg: format!("unexpected token {t:?} in header") });
    }
    if n == 0 {
        return Err(Error::Parse { line: hl, msg: "dimension must be positive".into() });
    }
    let mut tokens: Vec<String> = Vec::with_capacity(n * n);
    let mut last = hl;
    for r in 0..n {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: last + 1, msg: format!("expected {n} rows, found {r}") })?;
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != n {
            return Err(Error::Parse { line: ln, msg: format!("expected {n} entries, found {}", row.len()) });
        }
        tokens.extend(row.into_iter().map(str::to_owned));
        last = ln;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing content after the matrix".into() });
    }
    let ints: Option<Vec<i64>> = tokens.iter().map(|t| t.parse().ok()).collect();
    let data = match ints {
        Some(v) => MatrixData::Integer(Matrix::from_vec(n, n, v)),
        None => {
            let v = tokens
                .iter()
                .map(|t| t.parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or(Error::Parse { line: hl + 1, msg: "entries must be integers or finite decimals".into() })?;
            MatrixData::Real(Matrix::from_vec(n, n, v))
        }
    };
    Ok(MatrixFile { rotation, data })
}

pub fn read_matrix(path: &Path) -> Result<MatrixFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Renders a matrix in the file format.
pub fn format_matrix<T: Scalar>(m: &Matrix<T>, rotation: bool) -> String {
    let mut out = m.rows().to_string();
    if rotation {
        out.push_str(" rotation");
    }
    out.push('\n');
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub d: i64,
    /// `(a, b)` for `a + b√d`.
    pub generator: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub m_pam: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_e: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
}

impl CodeDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let d: CodeDescriptor = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(0),
            msg: e.message().to_string(),
        })?;
        match (&d.ideal, &d.lattice_e) {
            (Some(_), None) if d.lattice_b.is_none() && d.rotation.is_none() => Ok(d),
            (None, Some(_)) => Ok(d),
            _ => Err(Error::InvalidConfig(
                "a code descriptor names either lattice_e (with optional lattice_b, rotation) or an [ideal] table".into(),
            )),
        }
    }

    pub fn read(path: &Path) -> Result<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Self::parse(&text)?, base))
    }

    /// Builds the code, reading referenced files relative to `base`.
    pub fn build(&self, base: &Path) -> Result<CosetCode<f64>> {
        let signaling = SignalingSet::new(self.m_pam)?;
        let pair = match &self.ideal {
            Some(spec) => ideal_pair(spec)?,
            None => {
                let e = self.lattice_e.as_deref().expect("checked at parse time");
                let le = load_lattice(&base.join(e))?;
                let lb = match &self.lattice_b {
                    Some(b) => load_lattice(&base.join(b))?,
                    None => Lattice::integer(le.dim()),
                };
                match &self.rotation {
                    Some(r) => {
                        let q = read_matrix(&base.join(r))?;
                        if !q.rotation {
                            return Err(Error::InvalidConfig(format!("{r} lacks the rotation header flag")));
                        }
                        let q = q.data.to_f64();
                        NestedLatticePair::new(lb.apply_rotation(&q, DEFAULT_TOL)?, le.apply_rotation(&q, DEFAULT_TOL)?)?
                    }
                    None => NestedLatticePair::new(lb, le)?,
                }
            }
        };
        CosetCode::new(pair, signaling)
    }
}

/// A lattice from a matrix file; rotation files are rejected.
pub fn load_lattice(path: &Path) -> Result<Lattice<f64>> {
    let f = read_matrix(path)?;
    if f.rotation {
        return Err(Error::InvalidConfig(format!("{} is a rotation file", path.display())));
    }
    Lattice::new(f.data.to_f64())
}

/// `(σ(O_F), σ((a + b√d)))`, both scaled so that `σ(O_F)` has covolume 1.
pub fn ideal_pair(spec: &IdealSpec) -> Result<NestedLatticePair<f64>> {
    let field = QuadraticField::new(spec.d)?;
    let alpha = field.from_parts(spec.generator[0], spec.generator[1]);
    let ring = ring_of_integers_lattice(&field).lattice()?;
    let ideal = principal_ideal_lattice(&field, &alpha)?.lattice()?;
    let c = 1.0 / ring.volume_f64().sqrt();
    NestedLatticePair::new(ring.scaled(c)?, ideal.scaled(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_real_files() {
        let f = parse_matrix("2\n3 15\n15 3\n").unwrap();
        assert!(!f.rotation);
        assert_eq!(f.data, MatrixData::Integer(Matrix::from_rows(vec![vec![3, 15], vec![15, 3]])));
        let r = parse_matrix("# comment\n2 rotation\n0.6 -0.8   # row\n\n0.8 0.6\n").unwrap();
        assert!(r.rotation);
        assert_eq!(r.data, MatrixData::Real(Matrix::from_rows(vec![vec![0.6, -0.8], vec![0.8, 0.6]])));
    }

    #[test]
    fn malformed_files() {
        for (text, line) in [("", 1), ("x\n", 1), ("2 rot\n1 0\n0 1\n", 1), ("2\n1 0\n", 3), ("2\n1 0 0\n0 1\n", 2), ("2\n1 0\n0 1\n5\n", 4)] {
            match parse_matrix(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_matrix("1\nnan\n").is_err());
    }

    #[test]
    fn round_trip() {
        let m = Matrix::from_rows(vec![vec![-2i64, -3, 4, -1], vec![0, -1, 0, 3], vec![0, -3, -2, -3], vec![-4, -1, 0, -1]]);
        let f = parse_matrix(&format_matrix(&m, false)).unwrap();
        assert_eq!(f.data, MatrixData::Integer(m));
        let q = Matrix::from_rows(vec![vec![0.1f64.cos(), -0.1f64.sin()], vec![0.1f64.sin(), 0.1f64.cos()]]);
        let f = parse_matrix(&format_matrix(&q, true)).unwrap();
        assert!(f.rotation);
        assert_eq!(f.data, MatrixData::Real(q));
    }

    #[test]
    fn descriptors() {
        let d = CodeDescriptor::parse("m_pam = 32\n[ideal]\nd = 3\ngenerator = [18, 6]\n").unwrap();
        let code = d.build(Path::new(".")).unwrap();
        assert_eq!(code.pair().index(), 216);
        assert!((code.pair().lattice_b().volume_f64() - 1.0).abs() < 1e-12);
        assert!(CodeDescriptor::parse("m_pam = 4\n").is_err());
        assert!(CodeDescriptor::parse("m_pam = 4\nlattice_e = \"a\"\n[ideal]\nd = 3\ngenerator = [1, 1]\n").is_err());
        assert!(matches!(CodeDescriptor::parse("m_pam = 4\nlatice_e = \"a\"\n"), Err(Error::Parse { .. })));
    }
}
