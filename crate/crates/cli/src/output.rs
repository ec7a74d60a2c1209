use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::args::Common;

/// Bad input rather than a failed computation; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// 17 significant digits, lowercase exponent.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Columns of equal length, written as CSV. `None` cells stay empty.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row.into_iter().map(Some).collect());
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.map(fmt_num).unwrap_or_default()))?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}

/// Collects everything a run writes and records.
pub struct Run {
    command: &'static str,
    out_dir: PathBuf,
    manifest: PathBuf,
    started: Instant,
    pub parameters: BTreeMap<String, Value>,
    pub grid: Value,
    pub tolerances: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    outputs: Vec<String>,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    parameters: &'a BTreeMap<String, Value>,
    grid: &'a Value,
    tolerances: &'a BTreeMap<String, Value>,
    outputs: &'a [String],
    results: &'a BTreeMap<String, Value>,
    version: &'a str,
    wall_time_seconds: f64,
}

impl Run {
    pub fn new(command: &'static str, common: &Common) -> Self {
        let manifest = common
            .manifest
            .clone()
            .unwrap_or_else(|| common.out_dir.join(format!("{command}.json")));
        Self {
            command,
            out_dir: common.out_dir.clone(),
            manifest,
            started: Instant::now(),
            parameters: BTreeMap::new(),
            grid: Value::Null,
            tolerances: BTreeMap::new(),
            results: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.into(), json(value));
    }

    pub fn tol(&mut self, key: &str, value: impl Serialize) {
        self.tolerances.insert(key.into(), json(value));
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), json(value));
    }

    pub fn write_table(&mut self, name: &str, table: &Table) -> Result<()> {
        let path = self.out_dir.join(name);
        write_atomic(&path, &table.to_csv()?)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.outputs.push(self.manifest.display().to_string());
        let m = RunManifest {
            command: self.command,
            parameters: &self.parameters,
            grid: &self.grid,
            tolerances: &self.tolerances,
            outputs: &self.outputs,
            results: &self.results,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        // Round-trip through Value so every object's keys come out sorted.
        let mut text = serde_json::to_string_pretty(&serde_json::to_value(&m)?)?;
        text.push('\n');
        write_atomic(&self.manifest, text.as_bytes())
    }
}

pub fn json(value: impl Serialize) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

pub fn grid_value(lo: f64, hi: f64, n: usize) -> Value {
    serde_json::json!({ "x_min": lo, "x_max": hi, "n": n, "step": (hi - lo) / (n - 1) as f64 })
}
