//! Momentum representation, purity traces, and the Schmidt number per unit
//! volume.
//!
//! The state is uniform in the relative coordinate, so it cannot carry a
//! total entanglement, only entanglement per unit volume. With the momentum
//! amplitude φ(p, q, t) supported on p = q (a structural δ³, never realized
//! numerically), the plane-wave-basis purity trace is
//!
//! ```text
//! Tr_p(ρ_x²) = √8 (2πħ)³ (π/2α)^{3/2}        (3-D)
//!            = √2 (2πħ)  (π/2α)^{1/2}        (per dimension)
//! ```
//!
//! and the Schmidt number referred to a volume V (in 1-D: a length L) is
//!
//! ```text
//! S_V = (2πħ)³ V / Tr_p(ρ_x²) = (V/√8)(2α/π)^{3/2},   S_L = L·sqrt(α/π),
//! ```
//!
//! proportional to α^{dims/2}, which is exactly the time dependence of the
//! perfect-correlation density. The 1-D laws come from repeating the trace
//! algebra per component and are validated against the dense grid-purity
//! oracle before the acceptance suite trusts them. Raw values are reported
//! without clamping: S_V < 1 for a small reference volume simply means less
//! than one effective plane-wave mode fits in it.

use crate::analytic::{alpha, Dims};
use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Momentum-space profile of the state at a fixed time.
///
/// The full amplitude is `factor(q) · δ³(p − q)`; the delta factor is carried
/// structurally by [`MomentumProfile::diagonal_support`] and every integral
/// against it is done analytically.
#[derive(Debug, Clone, Copy)]
pub struct MomentumProfile {
    alpha: f64,
    hbar: f64,
    /// Always true: total momentum is conserved, so φ is supported on p = q.
    pub diagonal_support: bool,
}

impl MomentumProfile {
    pub fn new(params: &SystemParams, t: f64) -> MomentumProfile {
        MomentumProfile {
            alpha: alpha(params, t),
            hbar: params.hbar(),
            diagonal_support: true,
        }
    }

    /// Smooth 3-D Gaussian factor √8 (π/2α)^{3/4} exp(−q²/(4ħ²α)) at
    /// momentum magnitude `q`. Equal to the plain Fourier transform
    /// ∫ψ(X)e^{−iq·X/ħ}d³X of the relative-normalized wavefunction.
    pub fn factor(&self, q: f64) -> f64 {
        let g = std::f64::consts::PI / (2.0 * self.alpha);
        8.0f64.sqrt() * g.powf(0.75) * (-q * q / (4.0 * self.hbar * self.hbar * self.alpha)).exp()
    }

    /// One-dimensional factor √2 (π/2α)^{1/4} exp(−q²/(4ħ²α)); the 3-D
    /// factor is the product over components.
    pub fn factor_1d(&self, q: f64) -> f64 {
        let g = std::f64::consts::PI / (2.0 * self.alpha);
        2.0f64.sqrt() * g.powf(0.25) * (-q * q / (4.0 * self.hbar * self.hbar * self.alpha)).exp()
    }
}

/// Smooth momentum-profile factor at magnitude `q` (3-D form).
pub fn momentum_profile(params: &SystemParams, t: f64, q: f64) -> f64 {
    MomentumProfile::new(params, t).factor(q)
}

/// Plane-wave purity trace Tr_p(ρ_x²); dimensions momentum^dims·length^{2·dims},
/// so it is only physically meaningful once divided into (2πħ)^dims·V.
pub fn purity_trace(params: &SystemParams, t: f64, dims: Dims) -> f64 {
    let hb = params.hbar();
    let g = std::f64::consts::PI / (2.0 * alpha(params, t));
    let two_pi_hbar = 2.0 * std::f64::consts::PI * hb;
    match dims {
        Dims::One => 2.0f64.sqrt() * two_pi_hbar * g.sqrt(),
        Dims::Three => 8.0f64.sqrt() * two_pi_hbar.powi(3) * g.powf(1.5),
    }
}

/// Schmidt number in a reference volume V (a length for `Dims::One`):
/// S_V = (V/√8)(2α/π)^{3/2}, S_L = L·sqrt(α/π). Linear in V by construction.
pub fn schmidt_per_volume(params: &SystemParams, t: f64, volume: f64, dims: Dims) -> f64 {
    assert!(volume > 0.0, "reference volume must be positive, got {volume}");
    let ratio = 2.0 * alpha(params, t) / std::f64::consts::PI;
    match dims {
        Dims::One => volume / 2.0f64.sqrt() * ratio.sqrt(),
        Dims::Three => volume / 8.0f64.sqrt() * ratio.powf(1.5),
    }
}

/// Characteristic spreading time t* = Ma²/(2ħ): for t ≫ t* the free width
/// law has entered its α_F ∝ t^{−2} asymptote.
pub fn free_spreading_time(params: &SystemParams) -> f64 {
    params.total_mass() * params.a() * params.a() / (2.0 * params.hbar())
}

/// Least-squares log-log slope of S_V(t) over `t_window` for free evolution;
/// −dims in the asymptotic era. The window must start at or after 10·t*.
pub fn free_decay_exponent(
    params: &SystemParams,
    t_window: (f64, f64),
    dims: Dims,
) -> Result<f64> {
    if params.kappa() != 0.0 {
        return Err(Error::Regime(format!(
            "decay-exponent fit requires kappa = 0, got {}",
            params.kappa()
        )));
    }
    let t_star = free_spreading_time(params);
    let (lo, hi) = t_window;
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Regime(format!("bad window ({lo}, {hi})")));
    }
    if lo < 10.0 * t_star {
        return Err(Error::Regime(format!(
            "window starts at {lo:.3e}, before the asymptotic era 10·Ma²/2ħ = {:.3e}",
            10.0 * t_star
        )));
    }
    const SAMPLES: usize = 200;
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let mut pts = Vec::with_capacity(SAMPLES);
    for k in 0..SAMPLES {
        let ln_t = ln_lo + (ln_hi - ln_lo) * k as f64 / (SAMPLES - 1) as f64;
        let t = ln_t.exp();
        pts.push((ln_t, schmidt_per_volume(params, t, 1.0, dims).ln()));
    }
    let n = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x / n, sy + y / n));
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in pts {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    Ok(sxy / sxx)
}

/// Time series of the entanglement diagnostics at a fixed reference volume.
#[derive(Debug, Clone)]
pub struct EntanglementReport {
    pub times: Vec<f64>,
    pub volume: f64,
    pub schmidt_per_volume: Vec<f64>,
    /// Tr_p(ρ_x²) per sample.
    pub purity_density: Vec<f64>,
    /// Fitted log-log decay slope over [10, 1000]·t*; `None` when κ > 0
    /// (S_V oscillates instead of decaying).
    pub decay_exponent: Option<f64>,
}

impl EntanglementReport {
    pub fn sample(
        params: &SystemParams,
        times: &[f64],
        volume: f64,
        dims: Dims,
    ) -> EntanglementReport {
        let t_star = free_spreading_time(params);
        let decay_exponent = if params.is_free() {
            free_decay_exponent(params, (10.0 * t_star, 1000.0 * t_star), dims).ok()
        } else {
            None
        };
        EntanglementReport {
            times: times.to_vec(),
            volume,
            schmidt_per_volume: times
                .iter()
                .map(|&t| schmidt_per_volume(params, t, volume, dims))
                .collect(),
            purity_density: times.iter().map(|&t| purity_trace(params, t, dims)).collect(),
            decay_exponent,
        }
    }
}
