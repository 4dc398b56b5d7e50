//! Quantum dynamics of two decay fragments whose mutual interaction acts on
//! the center of mass like a harmonic restoring force.
//!
//! In center-of-mass (`X`) and relative (`Y`) coordinates the two-particle
//! problem separates: `Y` evolves freely while `X` sits in an oscillator of
//! mass `M = 2m` and frequency `ω = sqrt(4κ/m)`. A Gaussian center-of-mass
//! packet therefore stays Gaussian forever, and every observable handled by
//! this crate (the width law `α(t)`, the perfect-correlation probability
//! density, the fragment alignment angle, the Schmidt number per unit volume)
//! is a closed-form function of `α(t)` and the packet moments.
//!
//! The closed forms are never trusted on their own: the [`oracle`] module
//! carries an independent split-operator spectral propagator and a dense
//! grid-based reduced-density-matrix purity calculation that adjudicate every
//! claim, including a couple of places where the widely-used printed formulas
//! disagree with their own derivation (see [`moments`]).
//!
//! Heavy inner loops (the purity contraction, batch evaluation over samples)
//! run data-parallel through [`parallel`] when the default `parallel` feature
//! is enabled, and fall back to plain sequential iteration otherwise.

pub mod analytic;
pub mod entangle;
mod error;
pub mod model;
pub mod moments;
pub mod oracle;
pub mod parallel;
pub mod tolerances;

pub use analytic::Dims;
pub use error::{Error, Result};
pub use model::{MomentState, Regime, RegimeTag, SystemParams};
