//! Stable random variables, path skeletons and exact jump laws.

mod path;
mod stable;
mod stream;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use path::{
    cutoff_for_residual_fraction, default_cutoff, negative_side_path, sample_path,
    sample_path_grid, sample_path_grid_with, sample_path_jump_resolved,
    sample_path_jump_resolved_with, EventPoint, JumpMark, LevyPathGrid, PiecewisePath, Resolution,
    SamplerLimits,
};
pub use stable::{
    sample_increment, sample_largest_jump_exact, sample_standard_stable,
    stable_scale_for_intensity, IncrementSampler, StandardStable,
};
pub use stream::{RngStream, StreamKey, StreamRng};

/// Law of the potential `V(x) = S(x) - δx`: stable index, jump intensities
/// `c⁺`, `c⁻` of the Lévy density `c^± |x|^{-1-α}`, and the drift `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StablePotentialParams {
    pub alpha: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub delta: f64,
}

impl StablePotentialParams {
    pub fn new(alpha: f64, c_plus: f64, c_minus: f64, delta: f64) -> Result<Self> {
        let p = Self {
            alpha,
            c_plus,
            c_minus,
            delta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        stable::check_alpha(self.alpha)?;
        if !(self.c_plus >= 0.0 && self.c_minus >= 0.0) {
            return Err(Error::param("c_plus/c_minus", "intensities must be non-negative"));
        }
        if !(self.c_plus + self.c_minus > 0.0) || !(self.c_plus + self.c_minus).is_finite() {
            return Err(Error::param("c_plus/c_minus", "c_plus + c_minus must be positive"));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::param("delta", format!("{} must be positive", self.delta)));
        }
        Ok(())
    }

    /// Same law with another drift.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.alpha, self.c_plus, self.c_minus, delta)
    }

    /// Positive-jump intensity check for statements about the largest jump.
    pub fn require_positive_jumps(&self) -> Result<()> {
        if self.c_plus > 0.0 {
            Ok(())
        } else {
            Err(Error::param("c_plus", "this quantity needs positive jumps (c_plus > 0)"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(StablePotentialParams::new(1.5, 1.0, 1.0, 1.0).is_ok());
        assert!(StablePotentialParams::new(2.5, 1.0, 1.0, 1.0).is_err());
        assert!(StablePotentialParams::new(1.5, 0.0, 0.0, 1.0).is_err());
        assert!(StablePotentialParams::new(1.5, -1.0, 2.0, 1.0).is_err());
        assert!(StablePotentialParams::new(1.5, 1.0, 0.0, 0.0).is_err());
        let p = StablePotentialParams::new(1.5, 0.0, 1.0, 1.0).unwrap();
        assert!(p.require_positive_jumps().is_err());
    }
}
