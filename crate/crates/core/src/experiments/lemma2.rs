//! Rescaled ascending barrier of the drifted potential: exact finite-r
//! equality in law with a drifted barrier on the unit interval, and
//! convergence to the largest-jump law.

use serde::Serialize;

use super::context::Context;
use super::ExperimentKind;
use crate::distributions::{
    ks_one_sample, ks_standard_error, ks_two_sample, ks_two_sample_standard_error,
    EmpiricalDistribution, FrechetLaw,
};
use crate::path_functionals::{drifted_barrier, functional_report};
use crate::potential::potential_path;
use crate::stable_sampler::sample_path_grid;
use super::{ExperimentConfig, Report};
use crate::Result;

#[derive(Serialize)]
struct TrendRow {
    r: f64,
    lambda: f64,
    equality_ks: f64,
    frechet_ks: f64,
    mc_error: f64,
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<Report> {
    let mut ctx = Context::new(cfg, ExperimentKind::Lemma2)?;
    let p = ctx.params;
    p.require_positive_jumps()?;
    let r_values = cfg.r_values.clone().unwrap_or_else(|| vec![1e2, 1e3, 1e4]);
    let n = cfg.n_replicas.unwrap_or(4000);
    let step = cfg.step;
    let law = FrechetLaw::new(p.c_plus, p.alpha, 1.0)?;
    let se1 = ks_standard_error(n);
    let se2 = ks_two_sample_standard_error(n, n);
    let mut violations = 0usize;
    let mut paths = 0usize;
    let mut trend = Vec::new();

    for (level, &r) in r_values.iter().enumerate() {
        let level = level as u8;
        let scale = r.powf(-1.0 / p.alpha);
        let lambda = p.delta * r.powf(1.0 - 1.0 / p.alpha);
        let rows = ctx.replicas(1, level, 0, n, "rescaled barrier", |rng| {
            let v = potential_path(&sample_path_grid(&p, r, step, rng)?, p.delta)?;
            let rep = functional_report(&v);
            Ok((rep.ascending_barrier * scale, rep.invariants_hold()))
        })?;
        paths += rows.len();
        violations += rows.iter().filter(|r| !r.1).count();
        let barrier: Vec<f64> = rows.iter().map(|r| r.0).collect();
        ctx.sample_set("rescaled_barrier", r, &barrier);
        let barrier = EmpiricalDistribution::new(barrier)?;

        // same cell count on the unit interval: equal in law cell by cell
        let unit = ctx.replicas(2, level, 0, n, "drifted barrier on the unit interval", |rng| {
            Ok(drifted_barrier(&sample_path_grid(&p, 1.0, step / r, rng)?, lambda))
        })?;
        let unit = EmpiricalDistribution::new(unit)?;
        let equality = ks_two_sample(&barrier, &unit);
        ctx.ks("barrier_vs_unit_drifted_barrier", r, n, equality, se2);
        let frechet = ks_one_sample(&barrier, &law);
        ctx.ks("barrier_vs_frechet", r, n, frechet, se1);
        ctx.ecdf(&format!("rescaled_barrier_r{r}"), &barrier, &law);
        if level == 0 {
            ctx.assert_below(
                "A3",
                "equality_in_law_ks",
                equality,
                0.04,
                Some(se2),
                format!("r={r}, λ={lambda:.4}, N={n} per side"),
            );
            ctx.ecdf(&format!("unit_drifted_barrier_r{r}"), &unit, &barrier);
        }
        trend.push(TrendRow {
            r,
            lambda,
            equality_ks: equality,
            frechet_ks: frechet,
            mc_error: se1,
        });
    }

    for w in trend.windows(2) {
        let allowance = 2.0 * (w[0].mc_error.powi(2) + w[1].mc_error.powi(2)).sqrt();
        ctx.assert_at_most(
            "A3",
            &format!("frechet_ks_trend_r{}", w[1].r),
            w[1].frechet_ks - w[0].frechet_ks,
            allowance,
            format!("KS at r={} minus KS at r={}, two MC errors allowed", w[1].r, w[0].r),
        );
    }
    if let Some(last) = trend.last() {
        let check = "asymptotic_frechet_ks";
        ctx.assert_below("A3", check, last.frechet_ks, 0.05, Some(last.mc_error), format!("r={}, N={n}", last.r));
    }
    ctx.diagnostic("trend", &trend);

    // grid refinement at the smallest r
    if let Some(&r) = r_values.first() {
        let scale = r.powf(-1.0 / p.alpha);
        let fine = ctx.replicas(3, 0, 0, n, "rescaled barrier, half step", |rng| {
            let v = potential_path(&sample_path_grid(&p, r, step / 2.0, rng)?, p.delta)?;
            Ok(functional_report(&v).ascending_barrier * scale)
        })?;
        let coarse = ctx.replicas(3, 0, 1, n, "rescaled barrier, full step", |rng| {
            let v = potential_path(&sample_path_grid(&p, r, step, rng)?, p.delta)?;
            Ok(functional_report(&v).ascending_barrier * scale)
        })?;
        let d = ks_two_sample(&EmpiricalDistribution::new(fine)?, &EmpiricalDistribution::new(coarse)?);
        ctx.diagnostic("step_halving_ks", serde_json::json!({ "r": r, "ks": d, "mc_error": se2 }));
    }

    ctx.assert_at_most("A7", "functional_invariant_violations", violations as f64, 0.0, format!("{paths} paths"));
    Ok(ctx.finish())
}
