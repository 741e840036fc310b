//! The drifted potential `V_x = S_x - δx`, its scale function
//! `A(x) = ∫₀ˣ e^{V_y} dy` and the inverse `A⁻¹`.
//!
//! `A` is tabulated as `ln A` at the breakpoints of the piecewise-constant
//! reading of the potential (grid times and jump times). Consumers work with
//! logs and ratios only; the linear values overflow for large horizons.

use crate::logspace::{log_sub_exp, LogSum};
use crate::stable_sampler::{LevyPathGrid, StablePotentialParams};
use crate::{Error, Result};

/// Largest `x` with `e^x` finite.
pub const LOG_MAX_F64: f64 = 709.78;

/// `V_x = S_x - δx` on the grid. The drift moves with the grid like the
/// residual part, so the jump list is kept as is.
pub fn potential_path(stable_path: &LevyPathGrid, delta: f64) -> Result<LevyPathGrid> {
    drift_by(stable_path, -delta)
}

/// `y ↦ V_{-y} = S_{-y} + δy` from a [`crate::stable_sampler::negative_side_path`].
pub fn negative_potential(neg_path: &LevyPathGrid, delta: f64) -> Result<LevyPathGrid> {
    drift_by(neg_path, delta)
}

fn drift_by(path: &LevyPathGrid, slope: f64) -> Result<LevyPathGrid> {
    if !(slope.abs() > 0.0 && slope.is_finite()) {
        return Err(Error::param("delta", "must be positive and finite"));
    }
    let mut out = path.clone();
    for (k, v) in out.values.iter_mut().enumerate() {
        *v += slope * path.time_at(k);
    }
    Ok(out)
}

/// Tabulated scale function. `log_a[k] = ln A(positions[k])`, so
/// `log_a[0] = -inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleFunction {
    pub positions: Vec<f64>,
    pub log_a: Vec<f64>,
    /// Pieces whose own contribution `e^{V}·width` is not representable as
    /// an `f64`; the log-domain table is unaffected.
    pub overflow_cells: Vec<usize>,
}

impl ScaleFunction {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `ln A` at the right end.
    pub fn log_total(&self) -> f64 {
        *self.log_a.last().expect("scale functions are never empty")
    }

    pub fn horizon(&self) -> f64 {
        *self.positions.last().expect("scale functions are never empty")
    }

    /// Linear values; `inf` wherever `A` exceeds the `f64` range.
    pub fn a_values(&self) -> Vec<f64> {
        self.log_a.iter().map(|l| l.exp()).collect()
    }

    /// `ln A(x)` for `x` inside the table, exact for the piecewise-constant
    /// integrand.
    pub fn log_at(&self, x: f64) -> Result<f64> {
        let (lo, hi) = (self.positions[0], self.horizon());
        if !(x >= lo && x <= hi) {
            return Err(Error::param("x", format!("{x} is outside [{lo}, {hi}]")));
        }
        let i = self.positions.partition_point(|&p| p <= x).saturating_sub(1);
        if i + 1 == self.len() {
            return Ok(self.log_total());
        }
        let (l0, l1) = (self.log_a[i], self.log_a[i + 1]);
        let frac = (x - self.positions[i]) / (self.positions[i + 1] - self.positions[i]);
        if frac == 0.0 {
            return Ok(l0);
        }
        // A(x) = A_i + frac (A_{i+1} - A_i)
        Ok(crate::logspace::log_add_exp(l0, log_sub_exp(l1, l0) + frac.ln()))
    }
}

/// Left-value quadrature of `e^{V}` over the pieces of the potential,
/// accumulated as a compensated log-sum.
pub fn scale_function(potential: &LevyPathGrid) -> ScaleFunction {
    let pw = potential.piecewise();
    let mut log_a = Vec::with_capacity(pw.len());
    let mut overflow_cells = Vec::new();
    let mut acc = LogSum::new();
    log_a.push(f64::NEG_INFINITY);
    for i in 0..pw.pieces() {
        let term = pw.values[i] + pw.width(i).ln();
        if term > LOG_MAX_F64 {
            overflow_cells.push(i);
        }
        acc.push(term);
        log_a.push(acc.value());
    }
    ScaleFunction {
        positions: pw.times,
        log_a,
        overflow_cells,
    }
}

/// `A⁻¹(a)` by bisection on the table and linear interpolation inside the
/// containing piece (exact for the piecewise-linear `A`).
pub fn scale_inverse(sf: &ScaleFunction, a: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(Error::ScaleOutOfRange {
            value: a,
            max: sf.log_total().exp(),
            above: false,
        });
    }
    if a == 0.0 {
        return Ok(sf.positions[0]);
    }
    scale_inverse_log(sf, a.ln())
}

/// [`scale_inverse`] with the target given as `ln a`.
pub fn scale_inverse_log(sf: &ScaleFunction, log_a: f64) -> Result<f64> {
    let top = sf.log_total();
    if log_a.is_nan() || log_a > top + 1e-12 * (1.0 + top.abs()) {
        return Err(Error::ScaleOutOfRange {
            value: log_a.exp(),
            max: top.exp(),
            above: true,
        });
    }
    if log_a == f64::NEG_INFINITY {
        return Ok(sf.positions[0]);
    }
    let log_a = log_a.min(top);
    // first k with log_a[k] >= target; k ≥ 1 since log_a[0] = -inf
    let k = sf.log_a.partition_point(|&l| l < log_a).max(1);
    let (l0, l1) = (sf.log_a[k - 1], sf.log_a[k]);
    let (x0, x1) = (sf.positions[k - 1], sf.positions[k]);
    if l1 == l0 {
        return Ok(x1);
    }
    let frac = (log_sub_exp(log_a, l0) - log_sub_exp(l1, l0)).exp();
    Ok(x0 + frac.clamp(0.0, 1.0) * (x1 - x0))
}

/// Depth `D = (1/δ')·ln(1/(tol·δ'))` with `δ' = δ/2`, floored at 10.
///
/// On the negative half-line `e^{-V}` decays like `e^{-δ|y|}`; halving the
/// drift leaves room for the stable fluctuations.
pub fn negative_truncation_depth(params: &StablePotentialParams, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::param("tol", format!("{tol} is outside (0, 1)")));
    }
    params.validate()?;
    Ok(truncation_depth_for_rate(params.delta / 2.0, tol))
}

pub(crate) fn truncation_depth_for_rate(rate: f64, tol: f64) -> f64 {
    ((1.0 / (tol * rate)).ln() / rate).max(10.0)
}
