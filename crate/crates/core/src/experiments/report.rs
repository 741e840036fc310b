//! Reports and their on-disk form.
//!
//! `<out>/<experiment>/summary.json` holds criteria, statistics,
//! diagnostics and provenance; `ecdf_<name>.csv` holds plot-ready
//! `x,ecdf,reference_cdf` tables; with `emit_samples`, `samples_<name>.csv`
//! holds every raw sample set as `r,replica,value`. Wall-clock numbers are
//! kept out of the files so reruns are byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use super::config::ExperimentConfig;
use crate::{Error, Result};

/// One asserted check, always tied to an acceptance criterion id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: &'static str,
    pub check: String,
    pub value: f64,
    pub threshold: f64,
    /// `"<"`, `"<="` or `">="`.
    pub comparison: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_error: Option<f64>,
    pub detail: String,
}

/// A KS statistic with its Monte Carlo yardstick.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsEntry {
    pub name: String,
    pub r: f64,
    pub n: usize,
    pub ks: f64,
    pub mc_error: f64,
}

/// Exploratory number, never asserted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StreamUse {
    pub experiment: u8,
    pub branch: u8,
    pub level: u8,
    pub role: u8,
    pub replicas: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub code_version: &'static str,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub streams: Vec<StreamUse>,
    pub untested: Vec<String>,
}

/// Raw samples `(r, replica, value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub name: String,
    pub rows: Vec<(f64, usize, f64)>,
}

/// `(x, ecdf, reference_cdf)` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfTable {
    pub name: String,
    pub rows: Vec<(f64, f64, f64)>,
}

/// Wall-clock limit attached to a criterion; checked but not written out.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeCheck {
    pub id: &'static str,
    pub limit: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: &'static str,
    pub criteria: Vec<CriterionResult>,
    pub statistics: Vec<KsEntry>,
    pub diagnostics: Vec<Diagnostic>,
    pub provenance: Provenance,
    #[serde(skip)]
    pub runtime: Duration,
    #[serde(skip)]
    pub runtime_checks: Vec<RuntimeCheck>,
    #[serde(skip)]
    pub samples: Vec<SampleSet>,
    #[serde(skip)]
    pub ecdfs: Vec<EcdfTable>,
}

impl Report {
    pub fn runtime_passes(&self) -> bool {
        self.runtime_checks.iter().all(|c| self.runtime <= c.limit)
    }

    /// All asserted criteria, including wall-clock limits.
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.pass) && self.runtime_passes()
    }

    /// Pass/fail per criterion id, in first-appearance order.
    pub fn criterion_ids(&self) -> Vec<(&'static str, bool)> {
        let mut out: Vec<(&'static str, bool)> = Vec::new();
        let mut push = |id: &'static str, pass: bool| match out.iter_mut().find(|(i, _)| *i == id) {
            Some(entry) => entry.1 &= pass,
            None => out.push((id, pass)),
        };
        for c in &self.criteria {
            push(c.id, c.pass);
        }
        for c in &self.runtime_checks {
            push(c.id, self.runtime <= c.limit);
        }
        out
    }

    /// Human-readable summary, one line per check.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[{}] {:.1}s", self.experiment, self.runtime.as_secs_f64());
        for c in &self.criteria {
            let _ = writeln!(
                s,
                "  {} {:<5} {:<32} {:.6} {} {:.6}  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.check,
                c.value,
                c.comparison,
                c.threshold,
                c.detail
            );
        }
        for c in &self.runtime_checks {
            let ok = self.runtime <= c.limit;
            let _ = writeln!(
                s,
                "  {} {:<5} {:<32} {:.1}s < {:.0}s",
                if ok { "PASS" } else { "FAIL" },
                c.id,
                "runtime",
                self.runtime.as_secs_f64(),
                c.limit.as_secs_f64()
            );
        }
        s
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the report under `out_dir/<experiment>/` and returns that directory.
pub fn emit_report(report: &Report, out_dir: &Path, emit_samples: bool) -> Result<PathBuf> {
    let dir = out_dir.join(report.experiment);
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    write_file(&dir.join("summary.json"), &json)?;
    for table in &report.ecdfs {
        let mut text = String::from("x,ecdf,reference_cdf\n");
        for (x, e, f) in &table.rows {
            let _ = writeln!(text, "{x},{e},{f}");
        }
        write_file(&dir.join(format!("ecdf_{}.csv", table.name)), &text)?;
    }
    if emit_samples {
        for set in &report.samples {
            let mut text = String::from("r,replica,value\n");
            for (r, i, v) in &set.rows {
                let _ = writeln!(text, "{r},{i},{v}");
            }
            write_file(&dir.join(format!("samples_{}.csv", set.name)), &text)?;
        }
    }
    Ok(dir)
}
