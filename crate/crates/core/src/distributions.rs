//! Limit laws and Kolmogorov–Smirnov statistics.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Standard deviation of the Kolmogorov distribution, i.e. of `√n·D` under
/// the null. Used as the Monte Carlo error yardstick for KS statistics.
pub const KOLMOGOROV_SD: f64 = 0.260_6;

/// Asymptotic 1% critical constant of `√n·D`.
pub const KS_CRITICAL_1PCT: f64 = 1.628;

/// A cumulative distribution function.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;

    /// `F(x-)`; equal to `cdf` for continuous laws.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Sorted sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::param("samples", "an empirical distribution needs at least one sample"));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::param("samples", "NaN sample"));
        }
        samples.sort_by(|a, b| a.total_cmp(b));
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `#{x_i ≤ x} / n`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.len() as f64
    }

    /// Image under a strictly increasing map.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.samples.iter().map(|&x| f(x)).collect())
    }

    /// `(x, ecdf(x), reference(x))` at every sample point, for plotting.
    pub fn ecdf_table(&self, reference: &impl Cdf) -> Vec<(f64, f64, f64)> {
        let n = self.len() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, (i + 1) as f64 / n, reference.cdf(x)))
            .collect()
    }
}

impl Cdf for EmpiricalDistribution {
    fn cdf(&self, x: f64) -> f64 {
        self.ecdf(x)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s < x) as f64 / self.len() as f64
    }
}

/// `sup_x |ECDF(x) - F(x)|`, checked at both one-sided limits of every sample.
pub fn ks_one_sample(emp: &EmpiricalDistribution, reference: &impl Cdf) -> f64 {
    let xs = emp.samples();
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        // tie group [i, j)
        let mut j = i + 1;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let below = (reference.cdf_left(xs[i]) - i as f64 / n).abs();
        let at = (reference.cdf(xs[i]) - j as f64 / n).abs();
        d = d.max(below).max(at);
        i = j;
    }
    d
}

/// Sup-norm distance between two ECDFs.
pub fn ks_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (xa, xb) = (a.samples(), b.samples());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    // once one side is exhausted the gap can only shrink
    d
}

/// Monte Carlo standard error of a one-sample KS statistic at size `n`.
pub fn ks_standard_error(n: usize) -> f64 {
    KOLMOGOROV_SD / (n as f64).sqrt()
}

/// Monte Carlo standard error of a two-sample KS statistic.
pub fn ks_two_sample_standard_error(n: usize, m: usize) -> f64 {
    KOLMOGOROV_SD * (1.0 / n as f64 + 1.0 / m as f64).sqrt()
}

/// Law of the largest positive jump on `[0, horizon]`:
/// `F(x) = exp(-(c⁺/α) horizon x^{-α})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrechetLaw {
    pub c_plus: f64,
    pub alpha: f64,
    pub horizon: f64,
}

impl FrechetLaw {
    pub fn new(c_plus: f64, alpha: f64, horizon: f64) -> Result<Self> {
        if !(c_plus > 0.0) {
            return Err(Error::param("c_plus", "must be positive"));
        }
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::param("alpha", format!("{alpha} is outside (1, 2)")));
        }
        if !(horizon > 0.0) {
            return Err(Error::param("horizon", "must be positive"));
        }
        Ok(Self {
            c_plus,
            alpha,
            horizon,
        })
    }

    /// `(c⁺/α)·horizon`, the constant `K` of `exp(-K x^{-α})`.
    pub fn intensity(&self) -> f64 {
        self.c_plus / self.alpha * self.horizon
    }

    pub fn quantile(&self, p: f64) -> f64 {
        (self.intensity() / -p.ln()).powf(1.0 / self.alpha)
    }
}

impl Cdf for FrechetLaw {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            (-self.intensity() * x.powf(-self.alpha)).exp()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialLaw {
    pub rate: f64,
}

impl ExponentialLaw {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::param("rate", "must be positive"));
        }
        Ok(Self { rate })
    }
}

impl Cdf for ExponentialLaw {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }
}

pub fn frechet_cdf(law: &FrechetLaw, x: f64) -> f64 {
    law.cdf(x)
}

pub fn exponential_cdf(law: &ExponentialLaw, x: f64) -> f64 {
    law.cdf(x)
}

/// Samples of `log H(r)` rescaled by `r^{-1/α}`.
#[derive(Debug, Clone)]
pub struct Rescaled {
    pub distribution: EmpiricalDistribution,
    /// Samples dropped because `log H ≤ 0`.
    pub excluded: usize,
}

/// Map `log H` to `log H / r^{1/α}`, dropping non-positive values (which can
/// only occur at tiny `r`).
pub fn theorem_rescale(log_h: &[f64], r: f64, alpha: f64) -> Result<Rescaled> {
    if !(r > 0.0) {
        return Err(Error::param("r", "must be positive"));
    }
    let factor = r.powf(-1.0 / alpha);
    let kept: Vec<f64> = log_h.iter().filter(|&&x| x > 0.0).map(|&x| x * factor).collect();
    let excluded = log_h.len() - kept.len();
    Ok(Rescaled {
        distribution: EmpiricalDistribution::new(kept)?,
        excluded,
    })
}

/// `x ↦ x^{-α}`, sending the Fréchet limit to `Exp(c⁺/α)`.
pub fn to_exponential_scale(emp: &EmpiricalDistribution, alpha: f64) -> Result<EmpiricalDistribution> {
    EmpiricalDistribution::new(emp.samples().iter().map(|&x| x.powf(-alpha)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_sampler::{sample_largest_jump_exact, RngStream};
    use rand::Rng;

    fn emp(v: Vec<f64>) -> EmpiricalDistribution {
        EmpiricalDistribution::new(v).unwrap()
    }

    #[test]
    fn frechet_values() {
        let law = FrechetLaw::new(1.5, 1.5, 1.0).unwrap();
        assert!((frechet_cdf(&law, 1.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(frechet_cdf(&law, 0.0), 0.0);
        assert_eq!(frechet_cdf(&law, -3.0), 0.0);
        let law = FrechetLaw::new(3.0, 1.5, 1.0).unwrap();
        assert!((frechet_cdf(&law, 2.0) - 0.493_068_691_395_239_8).abs() < 1e-15);
        assert!((law.cdf(law.quantile(0.3)) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn exponential_values() {
        let law = ExponentialLaw::new(1.0).unwrap();
        assert!((exponential_cdf(&law, 1.0) - 0.632_120_558_828_557_7).abs() < 1e-15);
        assert_eq!(exponential_cdf(&law, 0.0), 0.0);
        assert!(ExponentialLaw::new(0.0).is_err());
    }

    #[test]
    fn frechet_pushforward_is_exponential() {
        let (c, alpha) = (1.0, 1.5);
        let fr = FrechetLaw::new(c, alpha, 1.0).unwrap();
        let ex = ExponentialLaw::new(c / alpha).unwrap();
        for k in 1..=1000 {
            let x = k as f64 * 0.01;
            // P{X^{-α} ≤ y} = 1 - F(y^{-1/α})
            let y = x.powf(-alpha);
            assert!((ex.cdf(y) - (1.0 - fr.cdf(x))).abs() < 1e-12);
        }
    }

    #[test]
    fn cdfs_are_monotone_with_limits() {
        let fr = FrechetLaw::new(1.0, 1.5, 2.0).unwrap();
        let ex = ExponentialLaw::new(0.7).unwrap();
        let mut prev = (0.0, 0.0);
        for k in 0..1000 {
            let x = k as f64 * 0.05;
            let cur = (fr.cdf(x), ex.cdf(x));
            assert!(cur.0 >= prev.0 && cur.1 >= prev.1);
            prev = cur;
        }
        assert!(fr.cdf(1e12) > 1.0 - 1e-12 && ex.cdf(1e4) == 1.0);
        assert!(fr.cdf(1e-3) < 1e-12 && ex.cdf(-1.0) == 0.0);
    }

    #[test]
    fn ks_one_sample_single_point() {
        let d = ks_one_sample(&emp(vec![0.5]), &|x: f64| x.clamp(0.0, 1.0));
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_one_sample_against_own_ecdf() {
        let e = emp(vec![1.0, 2.0, 2.0, 5.0]);
        assert_eq!(ks_one_sample(&e, &e.clone()), 0.0);
    }

    #[test]
    fn ks_one_sample_null_calibration() {
        // exact samples: D < 1.628/√n in at least 99% of repetitions (up to MC slack)
        let law = FrechetLaw::new(1.0, 1.5, 1.0).unwrap();
        let n = 200;
        let mut rng = RngStream::new(77, 0).rng();
        let mut pass = 0;
        for _ in 0..1000 {
            let s: Vec<f64> = (0..n)
                .map(|_| sample_largest_jump_exact(1.0, 1.5, 1.0, &mut rng).unwrap())
                .collect();
            if ks_one_sample(&emp(s), &law) < KS_CRITICAL_1PCT / (n as f64).sqrt() {
                pass += 1;
            }
        }
        // binomial(1000, 0.99): 3σ ≈ 9.4, and the finite-n level is below 1%
        assert!(pass >= 980, "pass {pass}");
    }

    #[test]
    fn ks_two_sample_cases() {
        let a = emp(vec![1.0, 2.0, 3.0]);
        assert_eq!(ks_two_sample(&a, &a.clone()), 0.0);
        assert_eq!(ks_two_sample(&emp(vec![1.0, 2.0]), &emp(vec![3.0, 4.0])), 1.0);
        assert_eq!(ks_two_sample(&emp(vec![1.0, 2.0]), &emp(vec![1.5])), 0.5);
        // ties across samples
        assert_eq!(ks_two_sample(&emp(vec![1.0, 1.0]), &emp(vec![1.0])), 0.0);
    }

    #[test]
    fn ks_is_symmetric_and_transform_invariant() {
        let mut rng = RngStream::new(78, 0).rng();
        let a: Vec<f64> = (0..300).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..200).map(|_| rng.random::<f64>().powf(1.3)).collect();
        let (ea, eb) = (emp(a.clone()), emp(b.clone()));
        let d = ks_two_sample(&ea, &eb);
        assert_eq!(d, ks_two_sample(&eb, &ea));
        let f = |x: f64| (3.0 * x).exp();
        let d2 = ks_two_sample(&ea.map_increasing(f).unwrap(), &eb.map_increasing(f).unwrap());
        assert!((d - d2).abs() < 1e-15);
        let unif = |x: f64| x.clamp(0.0, 1.0);
        let d1 = ks_one_sample(&ea, &unif);
        let d1t = ks_one_sample(&ea.map_increasing(f).unwrap(), &|y: f64| unif(y.ln() / 3.0));
        assert!((d1 - d1t).abs() < 1e-12);
    }

    #[test]
    fn rescale_and_exponential_transform() {
        let r = theorem_rescale(&[1.0, 2.0, -1.0, 0.0], 1.0, 1.5).unwrap();
        assert_eq!(r.distribution.samples(), &[1.0, 2.0]);
        assert_eq!(r.excluded, 2);

        let (c, alpha) = (1.0, 1.5);
        let mut rng = RngStream::new(79, 0).rng();
        let draws: Vec<f64> = (0..10_000)
            .map(|_| sample_largest_jump_exact(c, alpha, 1.0, &mut rng).unwrap())
            .collect();
        let e = emp(draws);
        let ex = to_exponential_scale(&e, alpha).unwrap();
        let d_exp = ks_one_sample(&ex, &ExponentialLaw::new(c / alpha).unwrap());
        let d_fr = ks_one_sample(&e, &FrechetLaw::new(c, alpha, 1.0).unwrap());
        assert!(d_exp < 0.02);
        assert!((d_exp - d_fr).abs() < 1e-12);
    }

    #[test]
    fn monotone_map_preserves_ecdf_order() {
        let e = emp(vec![0.3, 0.1, 0.2]);
        let m = e.map_increasing(|x| x * 10.0).unwrap();
        assert_eq!(m.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(e.ecdf(0.2), m.ecdf(2.0));
    }
}
