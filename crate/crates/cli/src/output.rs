use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;
use crate::failure::Failure;

/// What a command produces. Nothing touches the filesystem until [`emit`].
pub struct Report {
    pub body: Vec<u8>,
    /// Secondary outputs: `(suffix, bytes)`, written to `<out stem>.<suffix>`.
    pub extras: Vec<(String, Vec<u8>)>,
    /// The resolved parameters, in config-file shape.
    pub params: Value,
    /// Command-specific metadata for the sidecar.
    pub result: Value,
    pub exit: u8,
    pub diagnostic: Option<String>,
}

impl Report {
    pub fn new(body: Vec<u8>, params: impl Serialize, result: Value) -> Self {
        Report {
            body,
            extras: Vec::new(),
            params: serde_json::to_value(params).expect("parameters serialize"),
            result,
            exit: 0,
            diagnostic: None,
        }
    }
}

/// CSV with an explicit header, so that empty results still name their columns.
pub fn csv_bytes<R: Serialize>(header: &[&str], rows: &[R]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::new(crate::failure::INPUT, e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Failure::new(crate::failure::INPUT, e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::new(crate::failure::INPUT, e.to_string()))
}

pub fn json_bytes<T: Serialize + ?Sized>(v: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("report serializes");
    out.push(b'\n');
    out
}

pub fn extra_path(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes the report to `out` (or stdout) and the sidecar next to it.
pub fn emit(command: &str, out: Option<&Path>, seed: u64, format: Format, report: &Report) -> Result<(), Failure> {
    let Some(out) = out else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(&report.body)?;
        for (_, bytes) in &report.extras {
            stdout.write_all(b"\n")?;
            stdout.write_all(bytes)?;
        }
        return Ok(());
    };
    let write = |path: &Path, bytes: &[u8]| std::fs::write(path, bytes).map_err(|e| Failure::new(crate::failure::INPUT, format!("{}: {e}", path.display())));
    write(out, &report.body)?;
    let mut extras = serde_json::Map::new();
    for (suffix, bytes) in &report.extras {
        let p = extra_path(out, suffix);
        write(&p, bytes)?;
        extras.insert(suffix.clone(), Value::String(p.display().to_string()));
    }
    let mut config = serde_json::Map::new();
    config.insert("seed".into(), json!(seed));
    config.insert("format".into(), serde_json::to_value(format).expect("format serializes"));
    config.insert(command.into(), report.params.clone());
    let sidecar = json!({
        "tool": "wrlat",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "output": out.display().to_string(),
        "extra_outputs": extras,
        "exit_code": report.exit,
        "config": config,
        "result": report.result,
    });
    write(&sidecar_path(out), &json_bytes(&sidecar))
}
