//! Experiment configuration: a flat TOML file whose keys mirror
//! [`ExperimentConfig`]. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::stable_sampler::StablePotentialParams;
use crate::{Error, Result};

/// Environment variable overriding `workers`.
pub const WORKERS_ENV: &str = "SLOWDRIFT_WORKERS";

/// Smallest replica count for which a KS criterion is asserted.
pub const MIN_REPLICAS_FOR_KS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoKeyword {
    Auto,
}

/// Jump-resolution cutoff: `"auto"` or an explicit positive number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffSetting {
    Value(f64),
    Keyword(AutoKeyword),
}

impl Default for CutoffSetting {
    fn default() -> Self {
        CutoffSetting::Keyword(AutoKeyword::Auto)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Pinned seed, fixed thresholds.
    #[default]
    Ci,
    /// Thresholds padded by three Monte Carlo standard errors; meant to be
    /// run with fresh seeds.
    Statistical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub delta: f64,
    /// Levels `r`; each experiment has its own default when absent.
    pub r_values: Option<Vec<f64>>,
    /// Replicas per sample set; each experiment has its own default when absent.
    pub n_replicas: Option<usize>,
    pub step: f64,
    pub cutoff: CutoffSetting,
    /// Test `log H` instead of `log I₁` in the theorem experiment.
    pub include_i2: bool,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub workers: usize,
    #[serde(skip_serializing)]
    pub out_dir: PathBuf,
    /// Threshold overrides keyed by `<criterion>.<check>`, e.g. `"A4.frechet_ks"`.
    pub tolerances: BTreeMap<String, f64>,
    pub mode: Mode,
    pub emit_samples: bool,
    /// Time horizon of the jump-law experiment.
    pub horizon: f64,
    /// Drift values compared in the drift-invariance checks.
    pub drift_pair: [f64; 2],
    /// Level, step and replica count of the engine cross-check.
    pub chain_r: f64,
    pub chain_step: f64,
    pub chain_replicas: Option<usize>,
    /// Neglected-mass tolerance of the negative-side truncation.
    pub truncation_tol: f64,
    /// Grid of the fluctuation experiment.
    pub x_values: Vec<f64>,
    pub a_values: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            c_plus: 1.0,
            c_minus: 1.0,
            delta: 1.0,
            r_values: None,
            n_replicas: None,
            step: 0.1,
            cutoff: CutoffSetting::default(),
            include_i2: false,
            seed: 20_240_601,
            workers: 1,
            out_dir: PathBuf::from("slowdrift-out"),
            tolerances: BTreeMap::new(),
            mode: Mode::Ci,
            emit_samples: false,
            horizon: 1.0,
            drift_pair: [0.5, 2.0],
            chain_r: 5.0,
            chain_step: 0.01,
            chain_replicas: None,
            truncation_tol: 1e-3,
            x_values: vec![0.5, 1.0, 2.0, 4.0, 8.0],
            a_values: vec![0.5, 1.0, 2.0, 4.0, 8.0],
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is plain data")
    }

    /// Applies the worker-count override from the environment, if set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            self.workers = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count")))?;
        }
        self.validate()
    }

    pub fn params(&self) -> Result<StablePotentialParams> {
        StablePotentialParams::new(self.alpha, self.c_plus, self.c_minus, self.delta)
    }

    pub fn validate(&self) -> Result<()> {
        self.params()?;
        let bad = |msg: String| Err(Error::Config(msg));
        if let Some(rs) = &self.r_values {
            if rs.is_empty() || rs.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
                return bad("r_values must be a non-empty list of positive numbers".into());
            }
            if rs.windows(2).any(|w| w[0] >= w[1]) {
                return bad("r_values must be sorted ascending without repeats".into());
            }
            if rs.len() > usize::from(u8::MAX) {
                return bad("at most 255 r_values".into());
            }
        }
        if let Some(n) = self.n_replicas {
            if n < MIN_REPLICAS_FOR_KS {
                return bad(format!("n_replicas = {n} is below {MIN_REPLICAS_FOR_KS}"));
            }
        }
        if let Some(n) = self.chain_replicas {
            if n < MIN_REPLICAS_FOR_KS {
                return bad(format!("chain_replicas = {n} is below {MIN_REPLICAS_FOR_KS}"));
            }
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be positive".into());
        }
        if let CutoffSetting::Value(c) = self.cutoff {
            if !(c > 0.0 && c.is_finite()) {
                return bad("cutoff must be \"auto\" or a positive number".into());
            }
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad("horizon must be positive".into());
        }
        if self.drift_pair.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return bad("drift_pair entries must be positive".into());
        }
        if !(self.chain_r > 0.0 && self.chain_step > 0.0) {
            return bad("chain_r and chain_step must be positive".into());
        }
        if !(self.truncation_tol > 0.0 && self.truncation_tol < 1.0) {
            return bad("truncation_tol must lie in (0, 1)".into());
        }
        for (name, list) in [("x_values", &self.x_values), ("a_values", &self.a_values)] {
            if list.is_empty() || list.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return bad(format!("{name} must be a non-empty list of positive numbers"));
            }
            if list.len() > usize::from(u8::MAX) {
                return bad(format!("at most 255 {name}"));
            }
        }
        for (k, v) in &self.tolerances {
            if !v.is_finite() {
                return bad(format!("tolerance {k} must be finite"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let text = r#"
alpha = 1.5
c_plus = 1.0
c_minus = 0.5
delta = 2.0
r_values = [10.0, 100.0]
n_replicas = 500
step = 0.05
cutoff = "auto"
include_i2 = true
seed = 7
workers = 2
out_dir = "out"
tolerances = { "A4.frechet_ks" = 0.2 }
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.c_minus, 0.5);
        assert_eq!(cfg.cutoff, CutoffSetting::Keyword(AutoKeyword::Auto));
        assert_eq!(cfg.tolerances["A4.frechet_ks"], 0.2);
        assert_eq!(cfg.out_dir, PathBuf::from("out"));
        let numeric = ExperimentConfig::from_toml_str("cutoff = 0.05").unwrap();
        assert_eq!(numeric.cutoff, CutoffSetting::Value(0.05));
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(ExperimentConfig::from_toml_str("alpah = 1.5").is_err());
        assert!(ExperimentConfig::from_toml_str("alpha = 2.5").is_err());
        assert!(ExperimentConfig::from_toml_str("r_values = [100.0, 10.0]").is_err());
        assert!(ExperimentConfig::from_toml_str("n_replicas = 50").is_err());
        assert!(ExperimentConfig::from_toml_str("cutoff = \"fine\"").is_err());
        assert!(ExperimentConfig::from_toml_str("cutoff = -1.0").is_err());
        assert!(ExperimentConfig::from_toml_str("workers = 0").is_err());
    }

    #[test]
    fn echo_leaves_out_execution_details() {
        let cfg = ExperimentConfig {
            workers: 8,
            out_dir: PathBuf::from("/somewhere"),
            ..Default::default()
        };
        let text = cfg.to_toml_string();
        assert!(!text.contains("workers") && !text.contains("somewhere"));
        let back = ExperimentConfig::from_toml_str(&text).unwrap();
        assert_eq!(back.seed, cfg.seed);
    }
}
