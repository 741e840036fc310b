//! Ray–Knight representation of the hitting time.
//!
//! With `u(y) = (A(r) - A(y))/A(r)` and `U` a BESQ(2) process started at 0,
//! `Ĩ₁(r) = A(r) ∫₀ʳ e^{-V_y} U(u(y)) dy` has the law of the time spent on
//! `[0, r]` before hitting `r`. Below 0 the local time continues as a
//! BESQ(0) process in the variable `1 + |A(y)|/A(r)`.

use rand::Rng;

use super::besq::{besq0_log_step, besq2_log_step};
use crate::logspace::{log_add_exp, LogSum};
use crate::potential::ScaleFunction;
use crate::stable_sampler::LevyPathGrid;
use crate::{Error, Result};

use std::f64::consts::LN_2;

/// `ln Ĩ₁(r)` and the by-products needed downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayKnightDraw {
    pub log_i1: f64,
    /// `ln U(1)` in units of `A(r)`: the local time at level 0.
    pub log_u_at_origin: f64,
    /// Breakpoints whose `u`-spacing fell below floating-point resolution;
    /// the BESQ value is carried over unchanged across them.
    pub merged_points: usize,
}

/// `ln Ĩ₁(r)` for a potential on `[0, r]` and its scale function.
pub fn rayknight_i1<R: Rng + ?Sized>(potential: &LevyPathGrid, sf: &ScaleFunction, rng: &mut R) -> Result<f64> {
    Ok(rayknight_i1_detailed(potential, sf, rng)?.log_i1)
}

/// U is drawn exactly at the breakpoints of the potential, walking from
/// `u = 0` at `y = r` back to `u = 1` at `y = 0`. Within a piece `e^{-V}`
/// is constant and `U` is integrated by the trapezoid rule in `u`, which
/// keeps `E[Ĩ₁] = A(r)∫e^{-V}·2u(y) dy` exact.
pub fn rayknight_i1_detailed<R: Rng + ?Sized>(
    potential: &LevyPathGrid,
    sf: &ScaleFunction,
    rng: &mut R,
) -> Result<RayKnightDraw> {
    let pw = potential.piecewise();
    if pw.len() != sf.len() || (pw.times[pw.len() - 1] - sf.horizon()).abs() > 1e-9 * sf.horizon() {
        return Err(Error::param("sf", "scale function was not built from this potential"));
    }
    let log_a_r = sf.log_total();
    let mut acc = LogSum::new();
    let mut log_u = f64::NEG_INFINITY;
    let mut merged_points = 0;
    for k in (0..pw.pieces()).rev() {
        let (v, log_w) = (pw.values[k], pw.width(k).ln());
        let (next, merged) = besq2_log_step(log_u, v + log_w - log_a_r, rng);
        merged_points += merged as usize;
        acc.push(-v + log_w + log_add_exp(log_u, next) - LN_2);
        log_u = next;
    }
    Ok(RayKnightDraw {
        log_i1: log_a_r + acc.value(),
        log_u_at_origin: log_u,
        merged_points,
    })
}

/// `ln I₂` from the negative-side potential `z ↦ V_{-z}` (drift applied),
/// `ln A(r)` and the local time at 0 in units of `A(r)`. Truncated at the
/// depth of `neg_potential`; `-inf` when the local time dies at 0.
pub fn log_i2_estimate<R: Rng + ?Sized>(
    neg_potential: &LevyPathGrid,
    log_a_r: f64,
    log_u0: f64,
    rng: &mut R,
) -> Result<f64> {
    if log_a_r.is_nan() || log_u0.is_nan() {
        return Err(Error::param("log_u0", "NaN input"));
    }
    let pw = neg_potential.piecewise();
    let mut acc = LogSum::new();
    let mut log_u = log_u0;
    for k in 0..pw.pieces() {
        if log_u == f64::NEG_INFINITY {
            break;
        }
        let (v, log_w) = (pw.values[k], pw.width(k).ln());
        let next = besq0_log_step(log_u, v + log_w - log_a_r, rng);
        acc.push(-v + log_w + log_add_exp(log_u, next) - LN_2);
        log_u = next;
    }
    Ok(log_a_r + acc.value())
}
