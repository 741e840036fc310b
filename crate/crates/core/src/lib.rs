//! Monte Carlo laboratory for a diffusion living in a drifted, spectrally
//! two-sided α-stable random potential `V(x) = S(x) - δx`.
//!
//! The crate is organised bottom-up:
//!
//! * [`stable_sampler`] draws strictly stable variables and path skeletons,
//!   either on a plain grid or with the large jumps resolved exactly.
//! * [`path_functionals`] evaluates extremal functionals (largest jump,
//!   largest ascending barrier, running extrema) on those skeletons.
//! * [`potential`] adds the drift and builds the scale function in log space.
//! * [`hitting_engine`] samples hitting times of the diffusion, through the
//!   squared-Bessel (Ray–Knight) representation or a birth–death chain.
//! * [`distributions`] holds the limit laws and Kolmogorov–Smirnov statistics.
//! * [`experiments`] wires everything into seeded, reproducible verification
//!   runs that emit JSON/CSV reports.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
mod error;
pub mod experiments;
pub mod hitting_engine;
pub mod logspace;
pub mod path_functionals;
pub mod potential;
pub mod stable_sampler;

pub use error::{Error, Result};
