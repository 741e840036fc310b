//! Extremal functionals of path skeletons: largest positive jump, largest
//! ascending barrier, drifted barrier and running extrema.

use serde::Serialize;

use crate::stable_sampler::{EventPoint, LevyPathGrid};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrema {
    pub running_max: f64,
    pub running_min: f64,
    pub bilateral_sup: f64,
}

/// All functionals of one path. `largest_jump` is `None` on grid-only paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub largest_jump: Option<f64>,
    pub ascending_barrier: f64,
    pub running_max: f64,
    pub running_min: f64,
    pub bilateral_sup: f64,
}

impl FunctionalReport {
    /// `max - min ≥ barrier ≥ largest jump ≥ 0` and `bilateral = max(|max|, |min|)`.
    pub fn invariants_hold(&self) -> bool {
        let eps = 1e-12 * (1.0 + self.bilateral_sup);
        let jump_ok = match self.largest_jump {
            Some(j) => j >= 0.0 && self.ascending_barrier + eps >= j,
            None => true,
        };
        jump_ok
            && self.ascending_barrier >= 0.0
            && self.ascending_barrier <= self.running_max - self.running_min + eps
            && (self.bilateral_sup - self.running_max.abs().max(self.running_min.abs())).abs() <= eps
    }
}

/// Largest positive resolved jump; `0` when there is none.
pub fn largest_positive_jump(path: &LevyPathGrid) -> Result<f64> {
    if !path.is_jump_resolved() {
        return Err(Error::UnresolvedJumps);
    }
    Ok(path.jumps.iter().map(|j| j.size).fold(0.0, f64::max))
}

fn barrier_of(points: impl IntoIterator<Item = f64>) -> f64 {
    let mut low = f64::INFINITY;
    let mut best: f64 = 0.0;
    for v in points {
        low = low.min(v);
        best = best.max(v - low);
    }
    best
}

/// `sup_{x ≤ y} (Z_y - Z_x)` over the event points, in one pass.
pub fn ascending_barrier(path: &LevyPathGrid) -> f64 {
    if path.jumps.is_empty() {
        return barrier_of(path.values.iter().copied());
    }
    barrier_of(path.event_points().into_iter().map(|e| e.value))
}

/// Ascending barrier of `t ↦ Z_t - λt`. Callers rescale the path to unit
/// horizon first when `λ` is meant in unit time.
pub fn drifted_barrier(path: &LevyPathGrid, lambda: f64) -> f64 {
    if path.jumps.is_empty() {
        let events: Vec<EventPoint> = path
            .values
            .iter()
            .enumerate()
            .map(|(k, &value)| EventPoint {
                time: path.time_at(k),
                value,
            })
            .collect();
        return drifted_barrier_of_events(&events, lambda);
    }
    drifted_barrier_of_events(&path.event_points(), lambda)
}

/// [`drifted_barrier`] on precomputed event points, for sweeps over `λ`.
///
/// Works on increments (largest sub-interval sum) so that `λt` never has
/// to be subtracted from the values themselves, which would lose the jump
/// sizes to rounding once `λ` is large.
pub fn drifted_barrier_of_events(events: &[EventPoint], lambda: f64) -> f64 {
    if lambda == 0.0 {
        return barrier_of(events.iter().map(|e| e.value));
    }
    let mut best: f64 = 0.0;
    let mut run: f64 = 0.0;
    for w in events.windows(2) {
        let d = (w[1].value - w[0].value) - lambda * (w[1].time - w[0].time);
        run = (run + d).max(0.0);
        best = best.max(run);
    }
    best
}

pub fn running_extrema(path: &LevyPathGrid) -> Extrema {
    // pre-jump values equal the preceding piece, so the piecewise values cover all events
    let values = if path.jumps.is_empty() {
        path.values.clone()
    } else {
        path.piecewise().values
    };
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for v in values {
        hi = hi.max(v);
        lo = lo.min(v);
    }
    Extrema {
        running_max: hi,
        running_min: lo,
        bilateral_sup: hi.abs().max(lo.abs()),
    }
}

pub fn functional_report(path: &LevyPathGrid) -> FunctionalReport {
    let ext = running_extrema(path);
    FunctionalReport {
        largest_jump: largest_positive_jump(path).ok(),
        ascending_barrier: ascending_barrier(path),
        running_max: ext.running_max,
        running_min: ext.running_min,
        bilateral_sup: ext.bilateral_sup,
    }
}
