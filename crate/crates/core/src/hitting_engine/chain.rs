//! Birth–death chain on the grid `x_i = i·h`, `-M ≤ i ≤ N = r/h`.
//!
//! The chain is the diffusion observed at grid sites: from site `i` it moves
//! right with probability `p_i = (A(x_i) - A(x_{i-1}))/(A(x_{i+1}) - A(x_{i-1}))`
//! and each visit is charged the expected exit time of `(x_{i-1}, x_{i+1})`.
//! With a potential that is constant on grid cells that expected time is
//! `h²` at every site, including the reflecting wall at `-M`.
//!
//! Visit counts before the first passage at `N` are drawn exactly through
//! the branching structure of edge crossings: the number of left steps out
//! of `i` is negative binomial given the number of right steps out of `i`.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};

use crate::stable_sampler::LevyPathGrid;
use crate::{Error, Result};

/// Largest number of positive grid cells the chain engine accepts.
pub const CHAIN_MAX_CELLS: usize = 10_000;

/// Visit totals of one chain run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainVisits {
    /// Visits to sites `0..N`.
    pub positive: f64,
    /// Visits to sites `-M..0`.
    pub negative: f64,
    /// Per-visit expected holding time.
    pub holding: f64,
}

/// Failures before the `n`-th success of a Bernoulli(p) sequence, with the
/// odds `(1-p)/p` given directly: `Poisson(Gamma(n, odds))`.
fn negative_binomial<R: Rng + ?Sized>(n: f64, odds: f64, rng: &mut R) -> f64 {
    if n == 0.0 || odds == 0.0 {
        return 0.0;
    }
    let lam = Gamma::new(n, odds).expect("positive shape and scale").sample(rng);
    if !(lam > 0.0) {
        return 0.0;
    }
    if lam > 1e15 {
        let z: f64 = StandardNormal.sample(rng);
        return (lam + lam.sqrt() * z).round().max(0.0);
    }
    Poisson::new(lam).expect("finite positive mean").sample(rng)
}

/// Runs the chain from site 0 until it first reaches `N`.
///
/// `potential` is `V` on `[0, r]`; `neg_potential` is `z ↦ V_{-z}` on
/// `[0, M·h]` with the same step, or `None` for a reflecting wall at 0.
/// The chain reads grid values only: cell `(x_c, x_{c+1})` carries the
/// value at its left end.
pub fn chain_visits<R: Rng + ?Sized>(
    potential: &LevyPathGrid,
    neg_potential: Option<&LevyPathGrid>,
    rng: &mut R,
) -> Result<ChainVisits> {
    let h = potential.step;
    let n_cells = potential.cells();
    if n_cells > CHAIN_MAX_CELLS {
        return Err(Error::param(
            "step",
            format!("r/step = {n_cells} exceeds the chain engine limit of {CHAIN_MAX_CELLS}"),
        ));
    }
    if ((n_cells as f64) * h - potential.horizon).abs() > 1e-9 * potential.horizon {
        return Err(Error::param("step", "the chain needs r to be a whole number of steps"));
    }
    let m_cells = match neg_potential {
        Some(neg) => {
            if (neg.step - h).abs() > 1e-12 * h
                || ((neg.cells() as f64) * h - neg.horizon).abs() > 1e-9 * neg.horizon
            {
                return Err(Error::param("neg_potential", "negative side must use the same whole-step grid"));
            }
            neg.cells()
        }
        None => 0,
    };
    let cell = |c: isize| -> f64 {
        if c >= 0 {
            potential.values[c as usize]
        } else {
            neg_potential.expect("negative cells exist only with a negative side").values[(-c - 1) as usize]
        }
    };

    let n = n_cells as isize;
    let m = m_cells as isize;
    let (mut positive, mut negative) = (0.0, 0.0);
    // left crossings of the edge (i, i+1)
    let mut left_above = 0.0;
    for i in (-m..n).rev() {
        let right = left_above + if i >= 0 { 1.0 } else { 0.0 };
        if right == 0.0 {
            break;
        }
        let left_below = if i == -m {
            0.0
        } else {
            negative_binomial(right, (cell(i) - cell(i - 1)).exp(), rng)
        };
        let visits = right + left_below;
        if i >= 0 {
            positive += visits;
        } else {
            negative += visits;
        }
        left_above = left_below;
    }
    Ok(ChainVisits {
        positive,
        negative,
        holding: h * h,
    })
}
