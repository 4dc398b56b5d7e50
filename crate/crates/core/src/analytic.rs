//! Closed-form evolution of the center-of-mass Gaussian.
//!
//! With the initial packet `ψ₀ ∝ exp(−X²/a²)`, the evolved state per
//! component is
//!
//! ```text
//! ψ(X, t) = (2α(t)/π)^{1/4} · exp(i·c_f(t)·X² − α(t)·X²)
//! ```
//!
//! up to an X-independent global phase that cancels in every probability.
//! The inverse-width law is
//!
//! ```text
//! α(t) = M²ω²a² / (4ħ² sin²ωt + M²a⁴ω² cos²ωt)
//! ```
//!
//! oscillating between α₋ = 1/a² and α₊ = (Mωa/2ħ)² with period π/ω, and the
//! phase coefficient, combined over a common denominator so it stays finite
//! at sin ωt = 0, is
//!
//! ```text
//! c_f(t) = Mω (4ħ² − M²ω²a⁴) sinωt cosωt / (2ħ · (4ħ² sin²ωt + M²ω²a⁴ cos²ωt))
//! ```
//!
//! The two-term textbook form of c_f has both terms diverging like 1/sin³ and
//! 1/sin near ωt = nπ while their sum vanishes; the combined fraction is the
//! numerically usable equivalent (same rational function, removable zeros at
//! ωt = nπ). For κ = 0 every operation dispatches to the free-spreading forms
//! α_F(t) = 1/(a² + (2ħt/Ma)²) and c_f = 2Mħt/(M²a⁴ + 4ħ²t²).
//!
//! The wavefunction is normalized as a relative probability density per unit
//! volume of the (free, unconstrained) relative coordinate; its uniform Y
//! dependence is never stored.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Spatial dimensionality of a density or Schmidt quantity. The problem is
/// isotropic, so every 3-D value is the cube (or 3/2 power) of the 1-D one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    One,
    Three,
}

impl Dims {
    pub fn count(self) -> u32 {
        match self {
            Dims::One => 1,
            Dims::Three => 3,
        }
    }

    /// The exponent dims/2 used by the density and Schmidt power laws.
    pub fn half(self) -> f64 {
        match self {
            Dims::One => 0.5,
            Dims::Three => 1.5,
        }
    }
}

impl TryFrom<u32> for Dims {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        match value {
            1 => Ok(Dims::One),
            3 => Ok(Dims::Three),
            other => Err(Error::InvalidDims(other)),
        }
    }
}

/// Denominator 4ħ²sin²ωt + M²ω²a⁴cos²ωt shared by α and c_f. Never vanishes:
/// sin and cos have no common zero.
fn width_denominator(params: &SystemParams, t: f64) -> (f64, f64, f64) {
    let w = params.omega();
    let (s, c) = (w * t).sin_cos();
    let hb = params.hbar();
    let ma2 = params.total_mass() * params.a() * params.a();
    let d = 4.0 * hb * hb * s * s + ma2 * ma2 * w * w * c * c;
    (s, c, d)
}

/// Inverse width α(t) of |ψ|² ∝ exp(−2αX²). Dispatches to [`alpha_free`]
/// when κ = 0.
pub fn alpha(params: &SystemParams, t: f64) -> f64 {
    debug_assert!(t >= 0.0, "alpha expects t >= 0");
    let w = params.omega();
    if w == 0.0 {
        return alpha_free(params, t);
    }
    let (_, _, d) = width_denominator(params, t);
    let mwa = params.total_mass() * w * params.a();
    mwa * mwa / d
}

/// Free-evolution width law α_F(t) = 1/(a² + (2ħt/Ma)²), the ω → 0 limit of
/// α(t). Monotonically decreasing from 1/a².
pub fn alpha_free(params: &SystemParams, t: f64) -> f64 {
    debug_assert!(t >= 0.0, "alpha_free expects t >= 0");
    let a = params.a();
    let spread = 2.0 * params.hbar() * t / (params.total_mass() * a);
    1.0 / (a * a + spread * spread)
}

/// Oscillation bounds of α(t): (α₋, α₊) = (1/a², (Mωa/2ħ)²). For κ = 0 the
/// second value is 0, the t → ∞ infimum of α_F.
pub fn alpha_bounds(params: &SystemParams) -> (f64, f64) {
    let a = params.a();
    let plus = params.total_mass() * params.omega() * a / (2.0 * params.hbar());
    (1.0 / (a * a), plus * plus)
}

/// Coefficient c_f(t) of the quadratic phase f = c_f·X², evaluated from the
/// combined single fraction. c_f(0) = 0 and c_f(nπ/ω) = 0 exactly; the state
/// is momentarily a real Gaussian at those times.
pub fn phase_coeff(params: &SystemParams, t: f64) -> f64 {
    debug_assert!(t >= 0.0, "phase_coeff expects t >= 0");
    let w = params.omega();
    let hb = params.hbar();
    let m_tot = params.total_mass();
    if w == 0.0 {
        let ma2 = m_tot * params.a() * params.a();
        return 2.0 * m_tot * hb * t / (ma2 * ma2 + 4.0 * hb * hb * t * t);
    }
    let (s, c, d) = width_denominator(params, t);
    let ma2 = m_tot * params.a() * params.a();
    m_tot * w * (4.0 * hb * hb - ma2 * ma2 * w * w) * s * c / (2.0 * hb * d)
}

/// Relative probability density |ψ(X,t)|² = (2α/π)^{3/2} exp(−2α|X|²) at
/// distance `x = |X|` from the perfect-correlation point. Integrates to 1
/// over X-space for every t.
pub fn wavefunction_density(params: &SystemParams, t: f64, x: f64) -> f64 {
    let al = alpha(params, t);
    (2.0 * al / std::f64::consts::PI).powf(1.5) * (-2.0 * al * x * x).exp()
}

/// One component of the evolved wavefunction, ψ(x,t) = (2α/π)^{1/4}
/// exp(ic_f x² − αx²), with the X-independent global phase omitted (it drops
/// out of every probability and of the |⟨·|·⟩| fidelity used by the oracle).
pub fn wavefunction_1d(params: &SystemParams, t: f64, x: f64) -> Complex64 {
    let al = alpha(params, t);
    let cf = phase_coeff(params, t);
    let norm = (2.0 * al / std::f64::consts::PI).powf(0.25);
    let x2 = x * x;
    norm * Complex64::new(-al * x2, cf * x2).exp()
}

/// Probability density of detecting the fragments perfectly correlated
/// (X = 0): (2α/π)^{dims/2}. Oscillates for ω > 0, decreases for κ = 0, and
/// is constant in the critical regime.
pub fn perfect_correlation_density(params: &SystemParams, t: f64, dims: Dims) -> f64 {
    (2.0 * alpha(params, t) / std::f64::consts::PI).powf(dims.half())
}

/// Sampled width law with its bounds and period.
#[derive(Debug, Clone)]
pub struct WidthTrajectory {
    pub params: SystemParams,
    pub times: Vec<f64>,
    pub alpha: Vec<f64>,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    /// π/ω for ω > 0; `None` marks the unbounded free case.
    pub period: Option<f64>,
}

impl WidthTrajectory {
    pub fn sample(params: &SystemParams, times: &[f64]) -> WidthTrajectory {
        let (alpha_minus, alpha_plus) = alpha_bounds(params);
        let period = if params.omega() > 0.0 {
            Some(std::f64::consts::PI / params.omega())
        } else {
            None
        };
        WidthTrajectory {
            params: *params,
            times: times.to_vec(),
            alpha: times.iter().map(|&t| alpha(params, t)).collect(),
            alpha_minus,
            alpha_plus,
            period,
        }
    }
}
