//! Path skeletons of the stable process.
//!
//! A [`LevyPathGrid`] stores the càdlàg right value at every grid time plus,
//! for jump-resolved paths, the exact times and sizes of all jumps above the
//! cutoff. Inside a grid cell the continuous (residual) part is frozen and
//! moves at the next grid time; resolved jumps act at their own times. This
//! reading turns every skeleton into a piecewise-constant path whose
//! breakpoints are the grid times and jump times.

use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Normal, Open01, Poisson};

use super::stable::IncrementSampler;
use super::StablePotentialParams;
use crate::{Error, Result};

/// Budgets guarding the path samplers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerLimits {
    /// Largest number of grid values a single path may hold.
    pub max_grid_points: usize,
    /// Jump-resolved paths refuse cutoffs at or above this fraction of the
    /// scale of `S_horizon`.
    pub max_cutoff_fraction: f64,
}

impl Default for SamplerLimits {
    fn default() -> Self {
        Self {
            max_grid_points: 50_000_000,
            max_cutoff_fraction: 0.5,
        }
    }
}

/// How a path is discretized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolution {
    /// Exact stable increments on the grid, no jump list.
    Grid,
    /// Jumps above `cutoff` simulated exactly, the rest as a Gaussian residual.
    Jumps { cutoff: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpMark {
    pub time: f64,
    pub size: f64,
}

/// A `(time, value)` pair where a path functional must be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventPoint {
    pub time: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevyPathGrid {
    pub horizon: f64,
    pub step: f64,
    /// `values[k]` is the path at `min(k·step, horizon)`.
    pub values: Vec<f64>,
    /// Sorted by time; empty for grid-only paths.
    pub jumps: Vec<JumpMark>,
    /// Jump resolution; `0` means jumps are not resolved.
    pub cutoff: f64,
}

/// Piecewise-constant reading of a skeleton: the path equals `values[i]`
/// on `[times[i], times[i+1])`, and `values.last()` at the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// `true` where a resolved jump happens at `times[i]`.
    pub after_jump: Vec<bool>,
}

impl PiecewisePath {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Number of constant pieces (one less than the number of breakpoints).
    pub fn pieces(&self) -> usize {
        self.times.len().saturating_sub(1)
    }

    pub fn width(&self, i: usize) -> f64 {
        self.times[i + 1] - self.times[i]
    }
}

#[inline]
fn cell_index(t: f64, step: f64, cells: usize) -> usize {
    let k = (t / step).ceil() as isize - 1;
    k.clamp(0, cells as isize - 1) as usize
}

pub(crate) fn cell_count(horizon: f64, step: f64) -> usize {
    let ratio = horizon / step;
    ((ratio - 1e-9 * ratio).ceil() as usize).max(1)
}

fn check_grid(horizon: f64, step: f64, limits: &SamplerLimits) -> Result<usize> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::param("horizon", format!("{horizon} must be positive and finite")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::param("step", format!("{step} must be positive and finite")));
    }
    if horizon / step < 2.0 * (1.0 - 1e-9) {
        return Err(Error::param("step", format!("horizon/step = {} is below 2", horizon / step)));
    }
    let cells = cell_count(horizon, step);
    if cells + 1 > limits.max_grid_points {
        return Err(Error::GridTooLarge {
            points: cells + 1,
            budget: limits.max_grid_points,
        });
    }
    Ok(cells)
}

impl LevyPathGrid {
    /// Grid-only path from explicit values (`values.len()` must be cells + 1).
    pub fn from_values(horizon: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(horizon > 0.0 && step > 0.0) {
            return Err(Error::param("horizon/step", "must be positive"));
        }
        let cells = cell_count(horizon, step);
        if values.len() != cells + 1 {
            return Err(Error::param(
                "values",
                format!("expected {} grid values, got {}", cells + 1, values.len()),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("values", "path values must be finite"));
        }
        Ok(Self {
            horizon,
            step,
            values,
            jumps: Vec::new(),
            cutoff: 0.0,
        })
    }

    /// Attach a resolved jump list. Grid values are left untouched, so they
    /// must already contain the jumps.
    pub fn with_jumps(mut self, jumps: Vec<JumpMark>, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::param("cutoff", "a jump list needs a positive cutoff"));
        }
        let mut last = 0.0;
        for j in &jumps {
            if !(j.time > last && j.time <= self.horizon) {
                return Err(Error::param(
                    "jumps",
                    "jump times must be strictly increasing inside (0, horizon]",
                ));
            }
            if !(j.size.abs() >= cutoff) || !j.size.is_finite() {
                return Err(Error::param("jumps", format!("jump size {} is below the cutoff", j.size)));
            }
            last = j.time;
        }
        self.jumps = jumps;
        self.cutoff = cutoff;
        Ok(self)
    }

    pub fn cells(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_jump_resolved(&self) -> bool {
        self.cutoff > 0.0
    }

    #[inline]
    pub fn time_at(&self, k: usize) -> f64 {
        if k >= self.cells() {
            self.horizon
        } else {
            k as f64 * self.step
        }
    }

    /// Grid cell `(k·step, (k+1)·step]` holding time `t > 0`.
    #[inline]
    pub fn cell_of(&self, t: f64) -> usize {
        cell_index(t, self.step, self.cells())
    }

    pub fn last_value(&self) -> f64 {
        *self.values.last().expect("paths hold at least two values")
    }

    /// Breakpoints and piece values; see [`PiecewisePath`].
    pub fn piecewise(&self) -> PiecewisePath {
        let cells = self.cells();
        let cap = self.values.len() + self.jumps.len();
        let mut out = PiecewisePath {
            times: Vec::with_capacity(cap),
            values: Vec::with_capacity(cap),
            after_jump: Vec::with_capacity(cap),
        };
        let mut j = 0;
        let mut pending_jump = false;
        for k in 0..cells {
            out.times.push(self.time_at(k));
            out.values.push(self.values[k]);
            out.after_jump.push(pending_jump);
            pending_jump = false;
            let end = self.time_at(k + 1);
            let mut level = self.values[k];
            while j < self.jumps.len() && self.cell_of(self.jumps[j].time) == k {
                let mark = self.jumps[j];
                level += mark.size;
                if mark.time < end {
                    out.times.push(mark.time);
                    out.values.push(level);
                    out.after_jump.push(true);
                } else {
                    // lands on the grid time: belongs to the next grid value
                    pending_jump = true;
                }
                j += 1;
            }
        }
        out.times.push(self.horizon);
        out.values.push(self.values[cells]);
        out.after_jump.push(pending_jump);
        out
    }

    /// Grid points plus `(t⁻, t)` for every resolved jump, in time order.
    pub fn event_points(&self) -> Vec<EventPoint> {
        let pw = self.piecewise();
        let mut out = Vec::with_capacity(pw.len() + self.jumps.len());
        for i in 0..pw.len() {
            if pw.after_jump[i] && i > 0 {
                out.push(EventPoint {
                    time: pw.times[i],
                    value: pw.values[i - 1],
                });
            }
            out.push(EventPoint {
                time: pw.times[i],
                value: pw.values[i],
            });
        }
        out
    }

    /// Same path with every value and jump multiplied by `factor`, and
    /// times stretched by `time_factor`.
    pub fn rescaled(&self, time_factor: f64, factor: f64) -> Self {
        Self {
            horizon: self.horizon * time_factor,
            step: self.step * time_factor,
            values: self.values.iter().map(|v| v * factor).collect(),
            jumps: self
                .jumps
                .iter()
                .map(|j| JumpMark {
                    time: j.time * time_factor,
                    size: j.size * factor,
                })
                .collect(),
            cutoff: self.cutoff * factor.abs(),
        }
    }

    /// Columnar text dump: `time,value` rows and a `time,size` jump table.
    pub fn write_columns<W: Write, J: Write>(&self, values: &mut W, jumps: &mut J) -> std::io::Result<()> {
        writeln!(values, "time,value")?;
        for (k, v) in self.values.iter().enumerate() {
            writeln!(values, "{},{}", self.time_at(k), v)?;
        }
        writeln!(jumps, "time,size")?;
        for j in &self.jumps {
            writeln!(jumps, "{},{}", j.time, j.size)?;
        }
        Ok(())
    }
}

/// Cutoff at the 0.1% quantile of the largest-jump law on `[0, horizon]`.
pub fn default_cutoff(params: &StablePotentialParams, horizon: f64) -> f64 {
    let c = if params.c_plus > 0.0 {
        params.c_plus
    } else {
        params.c_minus
    };
    (c / params.alpha * horizon / 1000f64.ln()).powf(1.0 / params.alpha)
}

/// Cutoff whose Gaussian residual has per-unit-time variance equal to
/// `fraction` times the squared scale of `S_1`.
pub fn cutoff_for_residual_fraction(params: &StablePotentialParams, fraction: f64) -> f64 {
    let sigma = IncrementSampler::new(params).unit_scale();
    let total = params.c_plus + params.c_minus;
    (fraction * sigma * sigma * (2.0 - params.alpha) / total).powf(1.0 / (2.0 - params.alpha))
}

/// Grid skeleton with exact stable increments (default limits).
pub fn sample_path_grid<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    horizon: f64,
    step: f64,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    sample_path_grid_with(params, horizon, step, &SamplerLimits::default(), rng)
}

pub fn sample_path_grid_with<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    horizon: f64,
    step: f64,
    limits: &SamplerLimits,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    params.validate()?;
    let cells = check_grid(horizon, step, limits)?;
    let inc = IncrementSampler::new(params);
    let full = inc.time_factor(step);
    let last = inc.time_factor(horizon - (cells - 1) as f64 * step);
    let mut values = Vec::with_capacity(cells + 1);
    values.push(0.0);
    let mut x = 0.0;
    for k in 0..cells {
        let factor = if k + 1 == cells { last } else { full };
        x += inc.sample_with_factor(factor, rng);
        values.push(x);
    }
    Ok(LevyPathGrid {
        horizon,
        step,
        values,
        jumps: Vec::new(),
        cutoff: 0.0,
    })
}

/// Jump-resolved skeleton (default limits).
pub fn sample_path_jump_resolved<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    horizon: f64,
    step: f64,
    cutoff: f64,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    sample_path_jump_resolved_with(params, horizon, step, cutoff, &SamplerLimits::default(), rng)
}

/// Jumps with `|size| > cutoff` form a Poisson point process with intensity
/// `c^± |x|^{-1-α} dx dt` and are drawn exactly; the compensated small jumps
/// are replaced by a Brownian motion with variance
/// `(c⁺ + c⁻) cutoff^{2-α} / (2-α)` per unit time and the drift that keeps
/// the path centred.
pub fn sample_path_jump_resolved_with<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    horizon: f64,
    step: f64,
    cutoff: f64,
    limits: &SamplerLimits,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    params.validate()?;
    let cells = check_grid(horizon, step, limits)?;
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::param("cutoff", format!("{cutoff} must be positive")));
    }
    let alpha = params.alpha;
    let amplitude = IncrementSampler::new(params).unit_scale() * horizon.powf(1.0 / alpha);
    if cutoff >= limits.max_cutoff_fraction * amplitude {
        return Err(Error::param(
            "cutoff",
            format!(
                "{cutoff} is not small against the path amplitude {amplitude:.4} (limit fraction {})",
                limits.max_cutoff_fraction
            ),
        ));
    }

    let mut jumps = Vec::new();
    for (c, sign) in [(params.c_plus, 1.0), (params.c_minus, -1.0)] {
        if c <= 0.0 {
            continue;
        }
        let mean = horizon * c / (alpha * cutoff.powf(alpha));
        let count = Poisson::new(mean)
            .map_err(|e| Error::param("cutoff", format!("jump count law: {e}")))?
            .sample(rng) as usize;
        for _ in 0..count {
            let u: f64 = Open01.sample(rng);
            let size = cutoff * u.powf(-1.0 / alpha);
            let time = horizon * (1.0 - rng.random::<f64>());
            jumps.push(JumpMark {
                time,
                size: sign * size,
            });
        }
    }
    jumps.sort_by(|a, b| a.time.total_cmp(&b.time));
    // coincident times have probability zero; fold them if they ever occur
    jumps.dedup_by(|later, earlier| {
        if later.time == earlier.time {
            earlier.size += later.size;
            true
        } else {
            false
        }
    });
    jumps.retain(|j| j.size.abs() >= cutoff);

    let variance_rate = (params.c_plus + params.c_minus) * cutoff.powf(2.0 - alpha) / (2.0 - alpha);
    let drift_rate = -(params.c_plus - params.c_minus) * cutoff.powf(1.0 - alpha) / (alpha - 1.0);

    let mut path = LevyPathGrid {
        horizon,
        step,
        values: Vec::with_capacity(cells + 1),
        jumps: Vec::new(),
        cutoff,
    };
    path.values.push(0.0);
    let mut x = 0.0;
    let mut j = 0;
    for k in 0..cells {
        let dt = path.time_at(k + 1) - path.time_at(k);
        let residual = Normal::new(drift_rate * dt, (variance_rate * dt).sqrt())
            .expect("finite residual law")
            .sample(rng);
        x += residual;
        while j < jumps.len() && cell_index(jumps[j].time, step, cells) == k {
            x += jumps[j].size;
            j += 1;
        }
        path.values.push(x);
    }
    path.jumps = jumps;
    Ok(path)
}

/// Dispatch on [`Resolution`].
pub fn sample_path<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    horizon: f64,
    step: f64,
    resolution: Resolution,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    match resolution {
        Resolution::Grid => sample_path_grid(params, horizon, step, rng),
        Resolution::Jumps { cutoff } => sample_path_jump_resolved(params, horizon, step, cutoff, rng),
    }
}

/// `y ↦ S_{-y}` on `[0, depth]`: the negative of an independent copy of the
/// process, so upward jumps of `S` on the negative half-line show up here as
/// downward jumps. No drift is applied.
pub fn negative_side_path<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    depth: f64,
    step: f64,
    resolution: Resolution,
    rng: &mut R,
) -> Result<LevyPathGrid> {
    let copy = sample_path(params, depth, step, resolution, rng)?;
    Ok(LevyPathGrid {
        horizon: copy.horizon,
        step: copy.step,
        values: copy.values.iter().map(|v| -v).collect(),
        jumps: copy
            .jumps
            .iter()
            .map(|j| JumpMark {
                time: j.time,
                size: -j.size,
            })
            .collect(),
        cutoff: copy.cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{ks_two_sample, EmpiricalDistribution};
    use crate::stable_sampler::RngStream;

    fn params() -> StablePotentialParams {
        StablePotentialParams::new(1.5, 1.0, 1.0, 1.0).unwrap()
    }

    fn emp(v: Vec<f64>) -> EmpiricalDistribution {
        EmpiricalDistribution::new(v).unwrap()
    }

    #[test]
    fn two_cell_grid() {
        let mut rng = RngStream::new(1, 1).rng();
        let p = sample_path_grid(&params(), 1.0, 0.5, &mut rng).unwrap();
        assert_eq!(p.values.len(), 3);
        assert_eq!(p.values[0], 0.0);
        assert_eq!(p.time_at(2), 1.0);
    }

    #[test]
    fn grid_rejections() {
        let mut rng = RngStream::new(1, 2).rng();
        let p = params();
        assert!(sample_path_grid(&p, 0.0, 0.1, &mut rng).is_err());
        assert!(sample_path_grid(&p, 1.0, -0.1, &mut rng).is_err());
        assert!(sample_path_grid(&p, 1.0, 0.7, &mut rng).is_err());
        let tight = SamplerLimits {
            max_grid_points: 100,
            ..Default::default()
        };
        assert!(matches!(
            sample_path_grid_with(&p, 1.0, 0.001, &tight, &mut rng),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn grid_paths_are_reproducible() {
        let a = sample_path_jump_resolved(&params(), 2.0, 0.01, 0.05, &mut RngStream::new(5, 9).rng()).unwrap();
        let b = sample_path_jump_resolved(&params(), 2.0, 0.01, 0.05, &mut RngStream::new(5, 9).rng()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_last_cell() {
        let mut rng = RngStream::new(1, 3).rng();
        let p = sample_path_grid(&params(), 1.05, 0.1, &mut rng).unwrap();
        assert_eq!(p.cells(), 11);
        assert_eq!(p.time_at(11), 1.05);
        assert!((p.time_at(10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_marginal_matches_scaled_increment() {
        let p = params();
        let mut rng = RngStream::new(2, 0).rng();
        let ends: Vec<f64> = (0..10_000)
            .map(|_| sample_path_grid(&p, 3.0, 0.25, &mut rng).unwrap().last_value())
            .collect();
        let inc = IncrementSampler::new(&p);
        let f = inc.time_factor(3.0);
        let direct: Vec<f64> = (0..10_000).map(|_| inc.sample_with_factor(f, &mut rng)).collect();
        let d = ks_two_sample(&emp(ends), &emp(direct));
        assert!(d < 0.02, "KS {d}");
    }

    #[test]
    fn disjoint_increments_are_uncorrelated() {
        // heavy tails: correlate signs, whose correlation is 0 under independence
        let p = params();
        let mut rng = RngStream::new(2, 1).rng();
        let n = 10_000;
        let mut s = 0.0;
        for _ in 0..n {
            let path = sample_path_grid(&p, 2.0, 1.0, &mut rng).unwrap();
            let a = path.values[1].signum();
            let b = (path.values[2] - path.values[1]).signum();
            s += a * b;
        }
        let mean = s / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "sign correlation {mean}");
    }

    #[test]
    fn positive_jump_count_and_void_probability() {
        let p = params();
        let (t, a) = (1.0, 0.5);
        let cutoff = 0.2;
        let mut rng = RngStream::new(3, 0).rng();
        let n = 10_000;
        let mut counts = Vec::with_capacity(n);
        for _ in 0..n {
            let path = sample_path_jump_resolved(&p, t, 0.1, cutoff, &mut rng).unwrap();
            counts.push(path.jumps.iter().filter(|j| j.size > a).count() as f64);
        }
        let expected = t * p.c_plus / (p.alpha * a.powf(p.alpha));
        let mean = counts.iter().sum::<f64>() / n as f64;
        // Poisson: variance = mean
        assert!((mean - expected).abs() < 3.0 * (expected / n as f64).sqrt(), "mean {mean} vs {expected}");
        let void = counts.iter().filter(|&&c| c == 0.0).count() as f64 / n as f64;
        let q = (-expected).exp();
        assert!((void - q).abs() < 3.0 * (q * (1.0 - q) / n as f64).sqrt());
    }

    #[test]
    fn jump_resolved_marginal_matches_grid() {
        let p = params();
        let cutoff = cutoff_for_residual_fraction(&p, 0.05);
        let mut rng = RngStream::new(4, 0).rng();
        let a: Vec<f64> = (0..10_000)
            .map(|_| sample_path_jump_resolved(&p, 1.0, 0.1, cutoff, &mut rng).unwrap().last_value())
            .collect();
        let b: Vec<f64> = (0..10_000)
            .map(|_| sample_path_grid(&p, 1.0, 0.1, &mut rng).unwrap().last_value())
            .collect();
        let d = ks_two_sample(&emp(a), &emp(b));
        assert!(d < 0.03, "KS {d}");
    }

    #[test]
    fn jump_resolved_rejects_coarse_cutoff() {
        let mut rng = RngStream::new(4, 1).rng();
        assert!(sample_path_jump_resolved(&params(), 1.0, 0.1, 5.0, &mut rng).is_err());
        assert!(sample_path_jump_resolved(&params(), 1.0, 0.1, 0.0, &mut rng).is_err());
    }

    #[test]
    fn jump_list_invariants() {
        let mut rng = RngStream::new(4, 2).rng();
        for _ in 0..50 {
            let path = sample_path_jump_resolved(&params(), 2.0, 0.05, 0.1, &mut rng).unwrap();
            assert_eq!(path.values[0], 0.0);
            for w in path.jumps.windows(2) {
                assert!(w[0].time < w[1].time);
            }
            for j in &path.jumps {
                assert!(j.time > 0.0 && j.time <= 2.0 && j.size.abs() >= 0.1);
            }
        }
    }

    #[test]
    fn negative_side_marginal_is_mirrored() {
        let p = params();
        let mut rng = RngStream::new(6, 0).rng();
        let neg: Vec<f64> = (0..10_000)
            .map(|_| negative_side_path(&p, 2.0, 0.5, Resolution::Grid, &mut rng).unwrap().last_value())
            .collect();
        let pos: Vec<f64> = (0..10_000)
            .map(|_| -sample_path_grid(&p, 2.0, 0.5, &mut rng).unwrap().last_value())
            .collect();
        assert!(ks_two_sample(&emp(neg), &emp(pos)) < 0.02);
    }

    #[test]
    fn negative_side_mirrors_jump_signs() {
        let p = StablePotentialParams::new(1.5, 1.0, 0.0, 1.0).unwrap();
        let mut rng = RngStream::new(6, 1).rng();
        for _ in 0..20 {
            let path = negative_side_path(&p, 3.0, 0.1, Resolution::Jumps { cutoff: 0.2 }, &mut rng).unwrap();
            assert_eq!(path.values[0], 0.0);
            assert!(path.jumps.iter().all(|j| j.size < 0.0));
        }
    }

    #[test]
    fn piecewise_and_events_of_injected_path() {
        // step 1, jump +2 at 0.3, jump -1 at 1.7, and a jump of 0.5 on the grid time 2
        let path = LevyPathGrid::from_values(3.0, 1.0, vec![0.0, 2.0, 1.5, 1.5])
            .unwrap()
            .with_jumps(
                vec![
                    JumpMark { time: 0.3, size: 2.0 },
                    JumpMark { time: 1.7, size: -1.0 },
                    JumpMark { time: 2.0, size: 0.5 },
                ],
                0.5,
            )
            .unwrap();
        let pw = path.piecewise();
        assert_eq!(pw.times, vec![0.0, 0.3, 1.0, 1.7, 2.0, 3.0]);
        assert_eq!(pw.values, vec![0.0, 2.0, 2.0, 1.0, 1.5, 1.5]);
        assert_eq!(pw.after_jump, vec![false, true, false, true, true, false]);
        let ev = path.event_points();
        let vals: Vec<f64> = ev.iter().map(|e| e.value).collect();
        assert_eq!(vals, vec![0.0, 0.0, 2.0, 2.0, 2.0, 1.0, 1.0, 1.5, 1.5]);
    }

    #[test]
    fn with_jumps_validation() {
        let base = LevyPathGrid::from_values(1.0, 0.5, vec![0.0, 0.0, 0.0]).unwrap();
        assert!(base.clone().with_jumps(vec![JumpMark { time: 0.2, size: 0.1 }], 0.5).is_err());
        assert!(base
            .clone()
            .with_jumps(vec![JumpMark { time: 0.6, size: 1.0 }, JumpMark { time: 0.2, size: 1.0 }], 0.5)
            .is_err());
        assert!(base.with_jumps(vec![JumpMark { time: 1.5, size: 1.0 }], 0.5).is_err());
        assert!(LevyPathGrid::from_values(1.0, 0.5, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn columnar_dump() {
        let path = LevyPathGrid::from_values(1.0, 0.5, vec![0.0, 1.0, 0.5])
            .unwrap()
            .with_jumps(vec![JumpMark { time: 0.25, size: 1.0 }], 0.5)
            .unwrap();
        let (mut v, mut j) = (Vec::new(), Vec::new());
        path.write_columns(&mut v, &mut j).unwrap();
        assert_eq!(String::from_utf8(v).unwrap(), "time,value\n0,0\n0.5,1\n1,0.5\n");
        assert_eq!(String::from_utf8(j).unwrap(), "time,size\n0.25,1\n");
    }
}
