//! Squared Bessel processes of dimension 2 and 0, sampled exactly.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};

use crate::{Error, Result};

/// Relative step below which a BESQ(2) update no longer changes the value.
pub(crate) const MERGE_RATIO: f64 = 1e-32;

/// Poisson means above this use the diffusion approximation in BESQ(0).
const POISSON_MEAN_MAX: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct BesqPath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Exact joint draw of the dimension-2 squared Bessel process started at 0,
/// `U = W₁² + W₂²`, at non-decreasing times `≥ 0`.
pub fn besq2_at<R: Rng + ?Sized>(times: &[f64], rng: &mut R) -> Result<BesqPath> {
    let mut prev = 0.0;
    for &t in times {
        if !(t >= prev && t.is_finite()) {
            return Err(Error::param("times", "times must be finite, non-negative and sorted"));
        }
        prev = t;
    }
    let (mut w1, mut w2, mut last) = (0.0f64, 0.0f64, 0.0);
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let sd = (t - last).sqrt();
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        w1 += sd * z1;
        w2 += sd * z2;
        values.push(w1 * w1 + w2 * w2);
        last = t;
    }
    Ok(BesqPath {
        times: times.to_vec(),
        values,
    })
}

/// One BESQ(2) transition in log coordinates: `ln X_{t+dt}` given
/// `ln X_t = log_x` and `ln dt = log_dt`.
///
/// By rotation invariance the planar Brownian motion can be taken to start
/// at `(√x, 0)`, so `X = (√x + √dt Z₁)² + dt Z₂²`, which is expanded around
/// the larger of `x` and `dt`. The second value is `true` when the step is
/// below floating-point resolution relative to `x`.
#[inline]
pub fn besq2_log_step<R: Rng + ?Sized>(log_x: f64, log_dt: f64, rng: &mut R) -> (f64, bool) {
    let z1: f64 = StandardNormal.sample(rng);
    let z2: f64 = StandardNormal.sample(rng);
    let q = z1 * z1 + z2 * z2;
    if log_x == f64::NEG_INFINITY {
        return (log_dt + q.ln(), false);
    }
    let rho = ((log_dt - log_x) / 2.0).exp();
    if rho <= 1.0 {
        let rho2 = rho * rho;
        (log_x + (2.0 * rho * z1 + rho2 * q).ln_1p(), rho2 < MERGE_RATIO)
    } else {
        let a = 1.0 / rho + z1;
        (log_dt + (a * a + z2 * z2).ln(), false)
    }
}

/// Exact dimension-0 squared Bessel transition from `x` over time `t`:
/// `N ~ Poisson(x/(2t))`, then `0` if `N = 0`, else `Gamma(N, 2t)`.
pub fn besq0_transition<R: Rng + ?Sized>(x: f64, t: f64, rng: &mut R) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::param("x", format!("{x} must be non-negative")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::param("t", format!("{t} must be positive")));
    }
    Ok(besq0_log_step(x.ln(), t.ln(), rng).exp())
}

/// [`besq0_transition`] in log coordinates. `-inf` is absorbing.
///
/// When the Poisson mean exceeds `10¹²` the relative change is below
/// `10⁻⁶` and the transition is replaced by its Gaussian diffusion limit
/// `x + 2√(x·dt)·Z`.
#[inline]
pub fn besq0_log_step<R: Rng + ?Sized>(log_x: f64, log_dt: f64, rng: &mut R) -> f64 {
    if log_x == f64::NEG_INFINITY {
        return log_x;
    }
    if log_dt == f64::NEG_INFINITY {
        return log_x;
    }
    let log_mean = log_x - log_dt - std::f64::consts::LN_2;
    if log_mean > POISSON_MEAN_MAX.ln() {
        let rho = ((log_dt - log_x) / 2.0).exp();
        let z: f64 = StandardNormal.sample(rng);
        return log_x + (2.0 * rho * z).ln_1p();
    }
    if log_mean < -700.0 {
        // absorbed except with probability below e^{-700}
        return f64::NEG_INFINITY;
    }
    let n = Poisson::new(log_mean.exp()).expect("finite positive mean").sample(rng);
    if n == 0.0 {
        return f64::NEG_INFINITY;
    }
    let g: f64 = Gamma::new(n, 1.0).expect("positive shape").sample(rng);
    g.ln() + std::f64::consts::LN_2 + log_dt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_sampler::RngStream;

    fn laplace_mean(samples: &[f64], lambda: f64) -> f64 {
        samples.iter().map(|x| (-lambda * x).exp()).sum::<f64>() / samples.len() as f64
    }

    #[test]
    fn besq2_mean_and_support() {
        let mut rng = RngStream::new(40, 0).rng();
        let n = 100_000;
        let draws: Vec<f64> = (0..n).map(|_| besq2_at(&[0.3, 1.0], &mut rng).unwrap().values[1]).collect();
        assert!(draws.iter().all(|&x| x >= 0.0));
        let mean = draws.iter().sum::<f64>() / n as f64;
        // U(1) ~ 2·Exp(1): standard deviation 2
        assert!((mean - 2.0).abs() < 4.0 * 2.0 / (n as f64).sqrt(), "mean {mean}");
        assert_eq!(besq2_at(&[0.0], &mut rng).unwrap().values, vec![0.0]);
        assert!(besq2_at(&[0.5, 0.2], &mut rng).is_err());
    }

    #[test]
    fn besq2_laplace_transform() {
        let mut rng = RngStream::new(41, 0).rng();
        for (lambda, t) in [(1.0, 0.5), (0.5, 1.0), (2.0, 0.25)] {
            let draws: Vec<f64> = (0..100_000).map(|_| besq2_at(&[t], &mut rng).unwrap().values[0]).collect();
            let exact = 1.0 / (1.0 + 2.0 * lambda * t);
            let mc = laplace_mean(&draws, lambda);
            assert!((mc / exact - 1.0).abs() < 0.01, "({lambda},{t}): {mc} vs {exact}");
        }
    }

    #[test]
    fn besq2_log_step_matches_linear_law() {
        // two steps in log coordinates vs the exact value at the end time
        let mut rng = RngStream::new(42, 0).rng();
        let n = 100_000;
        let (lambda, t1, t2) = (1.0, 0.2f64, 0.3f64);
        let draws: Vec<f64> = (0..n)
            .map(|_| {
                let (a, _) = besq2_log_step(f64::NEG_INFINITY, t1.ln(), &mut rng);
                let (b, _) = besq2_log_step(a, t2.ln(), &mut rng);
                b.exp()
            })
            .collect();
        let exact = 1.0 / (1.0 + 2.0 * lambda * (t1 + t2));
        assert!((laplace_mean(&draws, lambda) / exact - 1.0).abs() < 0.01);
        // from a positive start: E e^{-λX} = exp(-λx/(1+2λt)) / (1+2λt)
        let (x0, t) = (3.0f64, 0.7f64);
        for log_t in [t.ln(), (1e-3f64).ln()] {
            let tt = log_t.exp();
            let draws: Vec<f64> = (0..n).map(|_| besq2_log_step(x0.ln(), log_t, &mut rng).0.exp()).collect();
            let exact = (-lambda * x0 / (1.0 + 2.0 * lambda * tt)).exp() / (1.0 + 2.0 * lambda * tt);
            assert!((laplace_mean(&draws, lambda) / exact - 1.0).abs() < 0.01);
        }
        let (_, merged) = besq2_log_step(0.0, -100.0, &mut rng);
        assert!(merged);
    }

    #[test]
    fn besq0_absorption() {
        let mut rng = RngStream::new(43, 0).rng();
        assert_eq!(besq0_transition(0.0, 1.0, &mut rng).unwrap(), 0.0);
        let n = 10_000;
        let zeros = (0..n).filter(|_| besq0_transition(2.0, 1.0, &mut rng).unwrap() == 0.0).count();
        let p = (-1.0f64).exp();
        let freq = zeros as f64 / n as f64;
        assert!((freq - p).abs() < 3.0 * (p * (1.0 - p) / n as f64).sqrt(), "freq {freq}");
        assert!(besq0_transition(-1.0, 1.0, &mut rng).is_err());
        assert!(besq0_transition(1.0, 0.0, &mut rng).is_err());
    }

    #[test]
    fn besq0_laplace_transform() {
        let mut rng = RngStream::new(44, 0).rng();
        for (x, t, lambda) in [(1.0, 1.0, 1.0), (2.0, 0.5, 0.5), (0.5, 2.0, 3.0)] {
            let draws: Vec<f64> = (0..100_000).map(|_| besq0_transition(x, t, &mut rng).unwrap()).collect();
            let exact = (-lambda * x / (1.0 + 2.0 * lambda * t)).exp();
            let mc = laplace_mean(&draws, lambda);
            assert!((mc / exact - 1.0).abs() < 0.01, "({x},{t},{lambda}): {mc} vs {exact}");
        }
    }

    #[test]
    fn besq0_large_mean_branch() {
        // mean x and variance 4xt are preserved by the diffusion limit
        let mut rng = RngStream::new(45, 0).rng();
        let (x, t) = (1.0f64, 1e-14f64);
        let n = 10_000;
        let draws: Vec<f64> = (0..n).map(|_| besq0_log_step(x.ln(), t.ln(), &mut rng).exp()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 4.0 * (4.0 * x * t / n as f64).sqrt());
        assert!((var / (4.0 * x * t) - 1.0).abs() < 0.1);
    }
}
