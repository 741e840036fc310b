//! Samples of the hitting time `H(r) = I₁(r) + I₂(r)` of level `r`.
//!
//! Two engines: the Ray–Knight representation (any `r`) and a birth–death
//! chain on the grid (small `r`, for cross-checks). Everything is carried
//! in log coordinates.

mod besq;
mod chain;
mod rayknight;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::logspace::log_add_exp;
use crate::potential::{negative_potential, negative_truncation_depth, potential_path, scale_function};
use crate::stable_sampler::{negative_side_path, sample_path, LevyPathGrid, Resolution, StablePotentialParams};
use crate::{Error, Result};

pub use besq::{besq0_log_step, besq0_transition, besq2_at, besq2_log_step, BesqPath};
pub use chain::{chain_visits, ChainVisits, CHAIN_MAX_CELLS};
pub use rayknight::{log_i2_estimate, rayknight_i1, rayknight_i1_detailed, RayKnightDraw};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    RayKnight,
    Chain,
}

/// One replica of the hitting time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HittingTimeSample {
    pub r: f64,
    pub log_i1: f64,
    /// `ln I₂`; `None` when `I₂` was not computed, `-inf` when it is zero.
    pub log_i2: Option<f64>,
    pub log_h: f64,
    pub engine: Engine,
    /// Ray–Knight breakpoints merged below floating-point resolution.
    pub merged_points: usize,
}

impl HittingTimeSample {
    fn assemble(r: f64, log_i1: f64, log_i2: Option<f64>, engine: Engine, merged_points: usize) -> Self {
        Self {
            r,
            log_i1,
            log_i2,
            log_h: log_add_exp(log_i1, log_i2.unwrap_or(f64::NEG_INFINITY)),
            engine,
            merged_points,
        }
    }

    pub fn i2_omitted(&self) -> bool {
        self.log_i2.is_none()
    }

    /// `I₂` on the linear scale (may overflow for large `r`).
    pub fn i2(&self) -> Option<f64> {
        self.log_i2.map(f64::exp)
    }

    /// `I₂ / I₁`.
    pub fn i2_ratio(&self) -> Option<f64> {
        self.log_i2.map(|l| (l - self.log_i1).exp())
    }
}

/// Discretization of a hitting-time draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingOptions {
    pub step: f64,
    pub resolution: Resolution,
    pub include_i2: bool,
    /// Neglected-mass tolerance for the negative-side truncation depth.
    pub truncation_tol: f64,
}

impl HittingOptions {
    pub fn grid(step: f64) -> Self {
        Self {
            step,
            resolution: Resolution::Grid,
            include_i2: false,
            truncation_tol: 1e-3,
        }
    }

    pub fn with_i2(mut self, truncation_tol: f64) -> Self {
        self.include_i2 = true;
        self.truncation_tol = truncation_tol;
        self
    }
}

/// Fresh potential on `[0, r]` and, if requested, on `[-D, 0]` (as
/// `z ↦ V_{-z}`), both with the drift applied.
pub fn sample_environment<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    r: f64,
    opts: &HittingOptions,
    rng: &mut R,
) -> Result<(LevyPathGrid, Option<LevyPathGrid>)> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param("r", format!("{r} must be positive")));
    }
    let pos = potential_path(&sample_path(params, r, opts.step, opts.resolution, rng)?, params.delta)?;
    let neg = if opts.include_i2 {
        let depth = negative_truncation_depth(params, opts.truncation_tol)?;
        // whole number of steps so both engines see the same grid
        let depth = (depth / opts.step).ceil() * opts.step;
        let path = negative_side_path(params, depth, opts.step, opts.resolution, rng)?;
        Some(negative_potential(&path, params.delta)?)
    } else {
        None
    };
    Ok((pos, neg))
}

/// Ray–Knight hitting time on a given environment.
pub fn hitting_time_rayknight_on<R: Rng + ?Sized>(
    potential: &LevyPathGrid,
    neg_potential: Option<&LevyPathGrid>,
    rng: &mut R,
) -> Result<HittingTimeSample> {
    let sf = scale_function(potential);
    let draw = rayknight_i1_detailed(potential, &sf, rng)?;
    let log_i2 = match neg_potential {
        Some(neg) => Some(log_i2_estimate(neg, sf.log_total(), draw.log_u_at_origin, rng)?),
        None => None,
    };
    Ok(HittingTimeSample::assemble(
        potential.horizon,
        draw.log_i1,
        log_i2,
        Engine::RayKnight,
        draw.merged_points,
    ))
}

/// Ray–Knight hitting time of level `r` in a freshly sampled potential.
pub fn hitting_time_rayknight<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    r: f64,
    opts: &HittingOptions,
    rng: &mut R,
) -> Result<HittingTimeSample> {
    let (pos, neg) = sample_environment(params, r, opts, rng)?;
    hitting_time_rayknight_on(&pos, neg.as_ref(), rng)
}

/// Chain hitting time on a given environment.
pub fn hitting_time_chain_on<R: Rng + ?Sized>(
    potential: &LevyPathGrid,
    neg_potential: Option<&LevyPathGrid>,
    rng: &mut R,
) -> Result<HittingTimeSample> {
    let visits = chain_visits(potential, neg_potential, rng)?;
    let log_hold = visits.holding.ln();
    let log_i2 = neg_potential.map(|_| log_hold + visits.negative.ln());
    Ok(HittingTimeSample::assemble(
        potential.horizon,
        log_hold + visits.positive.ln(),
        log_i2,
        Engine::Chain,
        0,
    ))
}

/// Chain hitting time of level `r` in a freshly sampled potential. With
/// `include_i2` the chain lives on `[-D, r]` with a reflecting wall at
/// `-D`; otherwise the wall sits at 0.
pub fn hitting_time_chain<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    r: f64,
    opts: &HittingOptions,
    rng: &mut R,
) -> Result<HittingTimeSample> {
    if !(r > 0.0) || r / opts.step > CHAIN_MAX_CELLS as f64 * (1.0 + 1e-9) {
        return Err(Error::param(
            "step",
            format!("r/step = {} exceeds the chain engine limit of {CHAIN_MAX_CELLS}", r / opts.step),
        ));
    }
    if opts.resolution != Resolution::Grid {
        return Err(Error::param("resolution", "the chain engine reads grid values only"));
    }
    let (pos, neg) = sample_environment(params, r, opts, rng)?;
    hitting_time_chain_on(&pos, neg.as_ref(), rng)
}
