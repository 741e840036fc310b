//! Fluctuation bounds for the drifted potential on `[0, x]`.

use serde::Serialize;

use super::context::Context;
use super::ExperimentKind;
use crate::path_functionals::functional_report;
use crate::potential::potential_path;
use crate::stable_sampler::{default_cutoff, sample_path_jump_resolved, IncrementSampler};
use super::{ExperimentConfig, Report};
use crate::Result;

/// Cutoffs stay below this fraction of the scale of `S_x`.
const CUTOFF_CAP: f64 = 0.45;

#[derive(Serialize)]
struct Cell {
    x: f64,
    a: f64,
    bound: f64,
    barrier_below: f64,
    largest_jump_below: f64,
    bilateral_sup_above: f64,
    binomial_sigma: f64,
    /// `bound - P̂{V#_x ≤ a}` in units of `binomial_sigma`.
    gap_sigmas: f64,
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<Report> {
    let mut ctx = Context::new(cfg, ExperimentKind::Fluctuation)?;
    let p = ctx.params;
    let n = cfg.n_replicas.unwrap_or(10_000);
    let a_values = cfg.a_values.clone();
    let a_min = a_values.iter().copied().fold(f64::INFINITY, f64::min);
    let unit_scale = IncrementSampler::new(&p).unit_scale();
    let c1 = p.c_plus / p.alpha;
    let mut cells = Vec::new();
    let mut cutoffs = Vec::new();
    let mut violations = 0usize;
    let mut envelope: f64 = 0.0;
    let mut tail_monotone = true;

    for (level, &x) in cfg.x_values.iter().enumerate() {
        let step = cfg.step.min(x / 2.0);
        let cutoff = default_cutoff(&p, x)
            .min(a_min / 2.0)
            .min(CUTOFF_CAP * unit_scale * x.powf(1.0 / p.alpha));
        cutoffs.push((x, cutoff));
        let rows = ctx.replicas(1, level as u8, 0, n, "potential functionals on [0, x]", |rng| {
            let v = potential_path(&sample_path_jump_resolved(&p, x, step, cutoff, rng)?, p.delta)?;
            Ok(functional_report(&v))
        })?;
        violations += rows.iter().filter(|r| !r.invariants_hold()).count();
        let freq = |pred: &dyn Fn(&crate::path_functionals::FunctionalReport) -> bool| {
            rows.iter().filter(|r| pred(r)).count() as f64 / n as f64
        };
        let mut previous_tail = f64::INFINITY;
        for &a in &a_values {
            let bound = (-c1 * x / a.powf(p.alpha)).exp();
            let sigma = (bound * (1.0 - bound) / n as f64).sqrt();
            let barrier_below = freq(&|r| r.ascending_barrier <= a);
            let largest_jump_below = freq(&|r| r.largest_jump.is_some_and(|j| j <= a));
            let bilateral_sup_above = freq(&|r| r.bilateral_sup > a);
            ctx.assert_at_most(
                "A8",
                &format!("barrier_bound_x{x}_a{a}"),
                barrier_below,
                bound + 3.0 * sigma,
                format!("bound {bound:.5}, binomial σ {sigma:.5}, N={n}"),
            );
            envelope = envelope.max(bilateral_sup_above * a.powf(p.alpha) / x);
            tail_monotone &= bilateral_sup_above <= previous_tail;
            previous_tail = bilateral_sup_above;
            cells.push(Cell {
                x,
                a,
                bound,
                barrier_below,
                largest_jump_below,
                bilateral_sup_above,
                binomial_sigma: sigma,
                gap_sigmas: if sigma > 0.0 { (bound - barrier_below) / sigma } else { f64::NAN },
            });
        }
    }
    ctx.diagnostic("grid", &cells);
    ctx.diagnostic("cutoffs", &cutoffs);
    ctx.diagnostic("c2_envelope", envelope);
    ctx.diagnostic("bilateral_sup_tail_decreasing_in_a", tail_monotone);
    ctx.assert_at_most("A7", "functional_invariant_violations", violations as f64, 0.0, format!("{} paths", n * cfg.x_values.len()));
    Ok(ctx.finish())
}
