//! Verification experiments.
//!
//! Each experiment samples on its own family of random streams, checks
//! acceptance criteria and returns a [`Report`]. Outputs depend only on the
//! configuration and seed, never on the number of workers.

pub mod config;
mod context;
mod fluctuation;
mod jumplaw;
mod lemma2;
pub mod report;
mod theorem;

use std::path::Path;

pub use config::{AutoKeyword, CutoffSetting, ExperimentConfig, Mode, WORKERS_ENV};
pub use report::{emit_report, CriterionResult, Diagnostic, KsEntry, Report, StreamUse};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    JumpLaw,
    Lemma2,
    Theorem,
    Fluctuation,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [Self::JumpLaw, Self::Lemma2, Self::Theorem, Self::Fluctuation];

    pub fn name(self) -> &'static str {
        match self {
            Self::JumpLaw => "jumplaw",
            Self::Lemma2 => "lemma2",
            Self::Theorem => "theorem",
            Self::Fluctuation => "fluctuation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Experiment byte of the stream ids.
    pub(crate) fn stream_tag(self) -> u8 {
        match self {
            Self::JumpLaw => 1,
            Self::Lemma2 => 2,
            Self::Theorem => 3,
            Self::Fluctuation => 4,
        }
    }
}

pub fn run_verify_jumplaw(cfg: &ExperimentConfig) -> Result<Report> {
    jumplaw::run(cfg)
}

pub fn run_verify_lemma2(cfg: &ExperimentConfig) -> Result<Report> {
    lemma2::run(cfg)
}

pub fn run_verify_theorem(cfg: &ExperimentConfig) -> Result<Report> {
    theorem::run(cfg)
}

pub fn run_verify_fluctuation(cfg: &ExperimentConfig) -> Result<Report> {
    fluctuation::run(cfg)
}

pub fn run_experiment(kind: ExperimentKind, cfg: &ExperimentConfig) -> Result<Report> {
    match kind {
        ExperimentKind::JumpLaw => run_verify_jumplaw(cfg),
        ExperimentKind::Lemma2 => run_verify_lemma2(cfg),
        ExperimentKind::Theorem => run_verify_theorem(cfg),
        ExperimentKind::Fluctuation => run_verify_fluctuation(cfg),
    }
}

/// Runs `kinds` in order and writes each report under `out_dir`.
pub fn run_and_emit(kinds: &[ExperimentKind], cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<Report>> {
    let mut reports = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let report = run_experiment(kind, cfg)?;
        emit_report(&report, out_dir, cfg.emit_samples)?;
        reports.push(report);
    }
    Ok(reports)
}
