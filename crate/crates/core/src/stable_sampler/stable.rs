//! Strictly stable random variables (Chambers–Mallows–Stuck) and the map
//! from Lévy intensities to stable scales.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01};

use super::StablePotentialParams;
use crate::{Error, Result};

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::param("alpha", format!("{alpha} is outside (1, 2)")))
    }
}

/// Standard strictly stable law `S_α(1, β, 0)` with characteristic function
/// `exp(-|t|^α (1 - iβ sign(t) tan(πα/2)))`. For `α > 1` it is centred.
#[derive(Debug, Clone, Copy)]
pub struct StandardStable {
    alpha: f64,
    skew: f64,
    // α·B = atan(β tan(πα/2))
    alpha_shift: f64,
    factor: f64,
    inv_alpha: f64,
    tail_exponent: f64,
}

impl StandardStable {
    pub fn new(alpha: f64, skew: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(-1.0..=1.0).contains(&skew) {
            return Err(Error::param("skew", format!("{skew} is outside [-1, 1]")));
        }
        let t = skew * (PI * alpha / 2.0).tan();
        Ok(Self {
            alpha,
            skew,
            alpha_shift: t.atan(),
            factor: (1.0 + t * t).powf(1.0 / (2.0 * alpha)),
            inv_alpha: 1.0 / alpha,
            tail_exponent: (1.0 - alpha) / alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn skew(&self) -> f64 {
        self.skew
    }
}

impl Distribution<f64> for StandardStable {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = Open01.sample(rng);
        let v = PI * u - FRAC_PI_2;
        let w: f64 = Exp1.sample(rng);
        let arg = self.alpha * v + self.alpha_shift;
        self.factor * arg.sin() / v.cos().powf(self.inv_alpha)
            * ((v - arg).cos() / w).powf(self.tail_exponent)
    }
}

/// One draw of the standard strictly stable law with the given index and skewness.
pub fn sample_standard_stable<R: Rng + ?Sized>(alpha: f64, skew: f64, rng: &mut R) -> Result<f64> {
    Ok(StandardStable::new(alpha, skew)?.sample(rng))
}

/// `σ^α` such that `σ·X`, `X ~ S_α(1, 1, 0)`, has Lévy density `c x^{-1-α}` on
/// `x > 0` (and none on `x < 0`).
///
/// Integrating `(e^{itx} - 1 - itx) c x^{-1-α}` over `(0, ∞)` gives
/// `c Γ(-α) cos(πα/2) |t|^α (1 - i sign(t) tan(πα/2))`; the prefactor is
/// negative for `α ∈ (1, 2)` and equals `-σ^α`.
pub(crate) fn scale_power_for_intensity(c: f64, alpha: f64) -> f64 {
    // Γ(-α) = Γ(2-α) / (α(α-1)) avoids evaluating Γ at a negative argument.
    let gamma_neg_alpha = libm::tgamma(2.0 - alpha) / (alpha * (alpha - 1.0));
    -c * gamma_neg_alpha * (PI * alpha / 2.0).cos()
}

/// Scale `σ` of the totally skewed stable law whose upper tail behaves like
/// `c / (α x^α)`.
pub fn stable_scale_for_intensity(c: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param("c", format!("{c} must be positive and finite")));
    }
    Ok(scale_power_for_intensity(c, alpha).powf(1.0 / alpha))
}

/// Sampler for increments `S_{t+dt} - S_t` of the two-sided stable process:
/// a spectrally positive component with intensity `c⁺` minus an independent
/// one with intensity `c⁻`.
#[derive(Debug, Clone, Copy)]
pub struct IncrementSampler {
    unit: StandardStable,
    plus_scale: f64,
    minus_scale: f64,
    alpha: f64,
}

impl IncrementSampler {
    pub fn new(params: &StablePotentialParams) -> Self {
        let alpha = params.alpha;
        let scale = |c: f64| {
            if c > 0.0 {
                scale_power_for_intensity(c, alpha).powf(1.0 / alpha)
            } else {
                0.0
            }
        };
        Self {
            unit: StandardStable::new(alpha, 1.0).expect("validated params"),
            plus_scale: scale(params.c_plus),
            minus_scale: scale(params.c_minus),
            alpha,
        }
    }

    /// Multiplier `dt^{1/α}` for a time step `dt`.
    #[inline]
    pub fn time_factor(&self, dt: f64) -> f64 {
        dt.powf(1.0 / self.alpha)
    }

    /// Increment over a time step whose `dt^{1/α}` is `factor`.
    #[inline]
    pub fn sample_with_factor<R: Rng + ?Sized>(&self, factor: f64, rng: &mut R) -> f64 {
        let mut x = 0.0;
        if self.plus_scale > 0.0 {
            x += self.plus_scale * self.unit.sample(rng);
        }
        if self.minus_scale > 0.0 {
            x -= self.minus_scale * self.unit.sample(rng);
        }
        factor * x
    }

    /// Scale `σ` of the combined law `S_1`, i.e. `(σ₊^α + σ₋^α)^{1/α}`.
    pub fn unit_scale(&self) -> f64 {
        (self.plus_scale.powf(self.alpha) + self.minus_scale.powf(self.alpha)).powf(1.0 / self.alpha)
    }
}

/// One draw distributed as `S_dt`.
pub fn sample_increment<R: Rng + ?Sized>(
    params: &StablePotentialParams,
    dt: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::param("dt", format!("{dt} must be positive")));
    }
    let sampler = IncrementSampler::new(params);
    Ok(sampler.sample_with_factor(sampler.time_factor(dt), rng))
}

/// Exact draw of the largest positive jump on `[0, horizon]`, whose law is
/// `P{J ≤ a} = exp(-(c⁺/α)·horizon·a^{-α})`.
pub fn sample_largest_jump_exact<R: Rng + ?Sized>(
    c_plus: f64,
    alpha: f64,
    horizon: f64,
    rng: &mut R,
) -> Result<f64> {
    check_alpha(alpha)?;
    if !(c_plus > 0.0) {
        return Err(Error::param("c_plus", "the largest positive jump needs c_plus > 0"));
    }
    if !(horizon > 0.0) {
        return Err(Error::param("horizon", format!("{horizon} must be positive")));
    }
    let e: f64 = Exp1.sample(rng);
    Ok((horizon * c_plus / (alpha * e)).powf(1.0 / alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{ks_two_sample, EmpiricalDistribution};
    use crate::stable_sampler::RngStream;

    fn params() -> StablePotentialParams {
        StablePotentialParams::new(1.5, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_index_and_skew() {
        let mut rng = RngStream::new(1, 0).rng();
        assert!(sample_standard_stable(1.0, 0.0, &mut rng).is_err());
        assert!(sample_standard_stable(2.0, 0.0, &mut rng).is_err());
        assert!(sample_standard_stable(1.5, 1.01, &mut rng).is_err());
        assert!(sample_standard_stable(1.5, -1.0, &mut rng).is_ok());
    }

    #[test]
    fn totally_skewed_draws_are_centred() {
        let law = StandardStable::new(1.5, 1.0).unwrap();
        let mut rng = RngStream::new(3, 0).rng();
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        // the variance is infinite; bound the error with a robust spread
        // estimate of the mean of a stable sample: sd of the mean scales as n^{1/α - 1}
        let scale = 2.0 * (n as f64).powf(1.0 / 1.5 - 1.0);
        assert!(mean.abs() < 4.0 * scale, "mean {mean}");
    }

    #[test]
    fn symmetric_law_is_symmetric() {
        let law = StandardStable::new(1.5, 0.0).unwrap();
        let mut rng = RngStream::new(4, 0).rng();
        let a: Vec<f64> = (0..10_000).map(|_| law.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..10_000).map(|_| -law.sample(&mut rng)).collect();
        let d = ks_two_sample(&EmpiricalDistribution::new(a).unwrap(), &EmpiricalDistribution::new(b).unwrap());
        assert!(d < 0.02, "KS {d}");
    }

    #[test]
    fn upper_tail_matches_asymptotic_constant() {
        // Tail constant of S_α(1,1,0): P{X > x} x^α → (1-α) / (Γ(2-α) cos(πα/2)).
        let alpha = 1.5_f64;
        let oracle = (1.0 - alpha) / (libm::tgamma(2.0 - alpha) * (PI * alpha / 2.0).cos());
        let law = StandardStable::new(alpha, 1.0).unwrap();
        let mut rng = RngStream::new(5, 0).rng();
        let n = 1_000_000usize;
        let mut xs: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
        xs.sort_by(|a, b| a.total_cmp(b));
        for tail_count in [1000usize, 500, 250] {
            let x = xs[n - tail_count];
            let p = tail_count as f64 / n as f64;
            let ratio = p * x.powf(alpha);
            let rel_se = 1.0 / (tail_count as f64).sqrt();
            // second-order correction of the tail is O(x^{-α}), far below the MC error here
            assert!((ratio / oracle - 1.0).abs() < 4.0 * rel_se, "ratio {ratio} oracle {oracle}");
        }
    }

    #[test]
    fn scale_homogeneity() {
        let alpha = 1.5;
        let s1 = stable_scale_for_intensity(1.3, alpha).unwrap();
        let s2 = stable_scale_for_intensity(1.3 * 2f64.powf(alpha), alpha).unwrap();
        assert!((s2 / s1 - 2.0).abs() < 1e-12);
        assert!(stable_scale_for_intensity(0.0, alpha).is_err());
    }

    #[test]
    fn intensity_scale_reproduces_tail_intensity() {
        // c / (α x^α) tail: σ^α · tail constant = c / α
        for alpha in [1.2, 1.5, 1.8] {
            let tail_const = (1.0 - alpha) / (libm::tgamma(2.0 - alpha) * (PI * alpha / 2.0).cos());
            let sigma = stable_scale_for_intensity(2.0, alpha).unwrap();
            assert!((sigma.powf(alpha) * tail_const - 2.0 / alpha).abs() < 1e-12);
        }
        // α → 2⁻: Γ(2-α) → ∞ is compensated by cos(πα/2) → -1, σ^α stays finite
        let near_two = scale_power_for_intensity(1.0, 1.999);
        assert!(near_two.is_finite() && near_two > 0.0);
    }

    #[test]
    fn increment_without_negative_component_equals_positive_part() {
        let p = StablePotentialParams::new(1.5, 1.0, 0.0, 1.0).unwrap();
        let inc = IncrementSampler::new(&p);
        let unit = StandardStable::new(1.5, 1.0).unwrap();
        let sigma = stable_scale_for_intensity(1.0, 1.5).unwrap();
        let mut a = RngStream::new(9, 0).rng();
        let mut b = RngStream::new(9, 0).rng();
        for _ in 0..100 {
            assert_eq!(inc.sample_with_factor(1.0, &mut a), sigma * unit.sample(&mut b));
        }
    }

    #[test]
    fn increments_are_self_similar() {
        let p = params();
        let mut rng = RngStream::new(10, 0).rng();
        let four: Vec<f64> = (0..10_000).map(|_| sample_increment(&p, 4.0, &mut rng).unwrap()).collect();
        let factor = 4f64.powf(1.0 / 1.5);
        let one: Vec<f64> = (0..10_000)
            .map(|_| factor * sample_increment(&p, 1.0, &mut rng).unwrap())
            .collect();
        let d = ks_two_sample(&EmpiricalDistribution::new(four).unwrap(), &EmpiricalDistribution::new(one).unwrap());
        assert!(d < 0.02, "KS {d}");
    }

    #[test]
    fn increments_are_centred() {
        let p = params();
        let mut rng = RngStream::new(11, 0).rng();
        let n = 100_000;
        let mean = (0..n).map(|_| sample_increment(&p, 1.0, &mut rng).unwrap()).sum::<f64>() / n as f64;
        let scale = 4.0 * IncrementSampler::new(&p).unit_scale() * (n as f64).powf(1.0 / 1.5 - 1.0);
        assert!(mean.abs() < scale, "mean {mean}");
        assert!(sample_increment(&p, 0.0, &mut rng).is_err());
    }

    #[test]
    fn exact_largest_jump_closed_form() {
        let mut rng = RngStream::new(12, 0).rng();
        let n = 10_000;
        let hits = (0..n)
            .filter(|_| sample_largest_jump_exact(1.5, 1.5, 1.0, &mut rng).unwrap() <= 1.0)
            .count() as f64;
        let p = (-1.0f64).exp();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits / n as f64 - p).abs() < 3.0 * se);

        let hits = (0..n)
            .filter(|_| sample_largest_jump_exact(3.0, 1.5, 1.0, &mut rng).unwrap() <= 2.0)
            .count() as f64;
        let p = 0.493_068_691_395_239_8;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits / n as f64 - p).abs() < 3.0 * se);
        assert!(sample_largest_jump_exact(0.0, 1.5, 1.0, &mut rng).is_err());
    }

    #[test]
    fn largest_jump_vanishes_with_horizon() {
        let mut rng = RngStream::new(13, 0).rng();
        let mut draws: Vec<f64> = (0..2001)
            .map(|_| sample_largest_jump_exact(1.0, 1.5, 1e-6, &mut rng).unwrap())
            .collect();
        draws.sort_by(|a, b| a.total_cmp(b));
        let median_closed = (1e-6 * 1.0 / (1.5 * std::f64::consts::LN_2)).powf(1.0 / 1.5);
        assert!(draws[1000] < 1e-3);
        assert!((draws[1000] / median_closed - 1.0).abs() < 0.2);
    }
}
