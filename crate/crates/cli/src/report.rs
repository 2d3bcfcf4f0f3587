use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use theta_core::linalg::SymMatrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Witness or explanation, present for anything but a pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Echo {
    pub command: String,
    pub graph: String,
    pub weights: String,
    pub variant: String,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub strict: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Echo,
    pub values: BTreeMap<String, f64>,
    pub certificates: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: Echo) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            values: BTreeMap::new(),
            certificates: BTreeMap::new(),
            checks: Vec::new(),
            timings: None,
        }
    }

    pub fn value(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), v);
    }

    pub fn matrix(&mut self, name: &str, m: &SymMatrix) {
        self.certificates.insert(name.to_string(), serde_json::json!(m.to_rows()));
    }

    pub fn certificate<T: Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        self.certificates.insert(name.to_string(), serde_json::to_value(v)?);
        Ok(())
    }

    /// Records a pass/fail check; failures carry `detail` as their witness.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        let detail = (!ok).then(detail);
        self.checks.push(Check { name: name.to_string(), status, detail });
    }

    pub fn inconclusive(&mut self, name: &str, detail: String) {
        self.checks.push(Check { name: name.to_string(), status: Status::Inconclusive, detail: Some(detail) });
    }

    /// True when nothing failed (and, under `strict`, nothing was inconclusive).
    pub fn ok(&self, strict: bool) -> bool {
        self.checks.iter().all(|c| match c.status {
            Status::Pass => true,
            Status::Fail => false,
            Status::Inconclusive => !strict,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Writes to a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().context("output path has no file name")?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
