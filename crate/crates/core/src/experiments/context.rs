//! Shared plumbing for the experiments: replica-parallel execution on
//! dedicated streams, threshold lookup and report assembly.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Mode};
use super::report::{
    CriterionResult, Diagnostic, EcdfTable, KsEntry, Provenance, Report, RuntimeCheck, SampleSet,
    StreamUse,
};
use super::ExperimentKind;
use crate::distributions::{Cdf, EmpiricalDistribution};
use crate::stable_sampler::{StablePotentialParams, StreamKey, StreamRng};
use crate::{Error, Result};

pub(crate) struct Context<'a> {
    pub cfg: &'a ExperimentConfig,
    pub params: StablePotentialParams,
    kind: ExperimentKind,
    pool: rayon::ThreadPool,
    start: Instant,
    streams: Vec<StreamUse>,
    criteria: Vec<CriterionResult>,
    statistics: Vec<KsEntry>,
    diagnostics: Vec<Diagnostic>,
    samples: Vec<SampleSet>,
    ecdfs: Vec<EcdfTable>,
    runtime_checks: Vec<RuntimeCheck>,
    untested: Vec<String>,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a ExperimentConfig, kind: ExperimentKind) -> Result<Self> {
        cfg.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?;
        Ok(Self {
            cfg,
            params: cfg.params()?,
            kind,
            pool,
            start: Instant::now(),
            streams: Vec::new(),
            criteria: Vec::new(),
            statistics: Vec::new(),
            diagnostics: Vec::new(),
            samples: Vec::new(),
            ecdfs: Vec::new(),
            runtime_checks: Vec::new(),
            untested: Vec::new(),
        })
    }

    /// Runs `n` replicas of `f`, replica `i` on stream
    /// `(experiment, branch, level, role, i)`. Results come back in replica
    /// order whatever the number of workers.
    pub fn replicas<T, F>(&mut self, branch: u8, level: u8, role: u8, n: usize, label: &str, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&mut StreamRng) -> Result<T> + Sync,
    {
        let experiment = self.kind.stream_tag();
        if self
            .streams
            .iter()
            .any(|s| (s.branch, s.level, s.role) == (branch, level, role))
        {
            return Err(Error::Config(format!(
                "stream prefix ({experiment}, {branch}, {level}, {role}) reused by `{label}`"
            )));
        }
        let n32 = u32::try_from(n).map_err(|_| Error::Config(format!("{n} replicas exceed the stream range")))?;
        self.streams.push(StreamUse {
            experiment,
            branch,
            level,
            role,
            replicas: n,
            label: label.to_string(),
        });
        let seed = self.cfg.seed;
        self.pool.install(|| {
            (0..n32)
                .into_par_iter()
                .map(|i| {
                    let mut rng = StreamKey::new(experiment, branch, level, role, i).stream(seed).rng();
                    f(&mut rng)
                })
                .collect()
        })
    }

    /// Threshold for `<id>.<check>`: config override if present, padded by
    /// three Monte Carlo errors in statistical mode.
    pub fn threshold(&self, id: &str, check: &str, default: f64, mc_error: Option<f64>) -> f64 {
        let base = self
            .cfg
            .tolerances
            .get(&format!("{id}.{check}"))
            .copied()
            .unwrap_or(default);
        match (self.cfg.mode, mc_error) {
            (Mode::Statistical, Some(se)) => base + 3.0 * se,
            _ => base,
        }
    }

    /// Asserts `value < threshold`.
    pub fn assert_below(
        &mut self,
        id: &'static str,
        check: &str,
        value: f64,
        default: f64,
        mc_error: Option<f64>,
        detail: impl Into<String>,
    ) {
        let threshold = self.threshold(id, check, default, mc_error);
        self.criteria.push(CriterionResult {
            id,
            check: check.to_string(),
            value,
            threshold,
            comparison: "<",
            pass: value < threshold,
            mc_error,
            detail: detail.into(),
        });
    }

    /// Asserts `value <= threshold`.
    pub fn assert_at_most(&mut self, id: &'static str, check: &str, value: f64, default: f64, detail: impl Into<String>) {
        let threshold = self.threshold(id, check, default, None);
        self.criteria.push(CriterionResult {
            id,
            check: check.to_string(),
            value,
            threshold,
            comparison: "<=",
            pass: value <= threshold,
            mc_error: None,
            detail: detail.into(),
        });
    }

    pub fn runtime_limit(&mut self, id: &'static str, limit: Duration) {
        self.runtime_checks.push(RuntimeCheck { id, limit });
    }

    pub fn ks(&mut self, name: &str, r: f64, n: usize, ks: f64, mc_error: f64) {
        self.statistics.push(KsEntry {
            name: name.to_string(),
            r,
            n,
            ks,
            mc_error,
        });
    }

    pub fn diagnostic(&mut self, name: &str, value: impl Serialize) {
        self.diagnostics.push(Diagnostic {
            name: name.to_string(),
            value: serde_json::to_value(value).unwrap_or(serde_json::Value::Null),
        });
    }

    pub fn untested(&mut self, note: &str) {
        self.untested.push(note.to_string());
    }

    /// Records a raw sample set: one `(r, replica, value)` row per sample.
    pub fn sample_set(&mut self, name: &str, r: f64, values: &[f64]) {
        let rows = values.iter().enumerate().map(|(i, &v)| (r, i, v));
        match self.samples.iter_mut().find(|s| s.name == name) {
            Some(set) => set.rows.extend(rows),
            None => self.samples.push(SampleSet {
                name: name.to_string(),
                rows: rows.collect(),
            }),
        }
    }

    pub fn ecdf(&mut self, name: &str, emp: &EmpiricalDistribution, reference: &impl Cdf) {
        self.ecdfs.push(EcdfTable {
            name: name.to_string(),
            rows: emp.ecdf_table(reference),
        });
    }

    pub fn finish(self) -> Report {
        Report {
            experiment: self.kind.name(),
            criteria: self.criteria,
            statistics: self.statistics,
            diagnostics: self.diagnostics,
            provenance: Provenance {
                code_version: env!("CARGO_PKG_VERSION"),
                seed: self.cfg.seed,
                config: self.cfg.clone(),
                streams: self.streams,
                untested: self.untested,
            },
            runtime: self.start.elapsed(),
            runtime_checks: self.runtime_checks,
            samples: self.samples,
            ecdfs: self.ecdfs,
        }
    }
}
