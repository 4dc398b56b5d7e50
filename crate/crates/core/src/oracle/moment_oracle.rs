//! Grid cross-check of the moment laws.
//!
//! The variance comes from propagating the X-sector on the grid and reading
//! the second moment of |ψ|². The mean fragment position comes from the
//! two-sector decomposition ⟨x⟩ = ⟨X⟩ + ⟨Y⟩/2: the X-sector is symmetric
//! (⟨X⟩ = 0) and the relative sector is a free particle of reduced mass μ
//! carrying mean momentum ⟨p_Y⟩ = p0 (a plane-wave factor exp(ip0·Y/ħ)), so
//! ⟨Y⟩(t) = (p0/μ)·t and ⟨x⟩ = (p0/μ)·t/2, independent of the coupling.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{MomentState, SystemParams};
use crate::oracle::grid::{GridSpec, GridWavefunction};
use crate::oracle::split_step::split_step_evolve;

#[derive(Debug, Clone, Copy)]
pub struct MomentOracle {
    /// Variance of one center-of-mass component from the grid propagation.
    pub var_x: f64,
    /// Mean fragment position from the relative-sector drift.
    pub mean_x: f64,
}

/// Pure-Gaussian realization of `state` on the grid: ψ₀ ∝ exp(−γX²) with
/// Re γ = 1/(4ΔX²) and Im γ = −cov/(2ħΔX²). Requires zero means and a pure
/// state (ΔX²ΔP² − cov² = ħ²/4), since only those have a Gaussian wavefunction
/// with exactly these moments.
pub fn moment_oracle_with(
    state: &MomentState,
    params: &SystemParams,
    t: f64,
    spec: &GridSpec,
) -> Result<MomentOracle> {
    if state.mean_x != 0.0 || state.mean_p != 0.0 {
        return Err(Error::Precondition(
            "moment oracle assumes <X0> = <P0> = 0".to_string(),
        ));
    }
    let hb = params.hbar();
    let det = state.delta_x * state.delta_x * state.delta_p * state.delta_p
        - state.cov_xp * state.cov_xp;
    let min_det = hb * hb / 4.0;
    if (det - min_det).abs() > 1e-9 * min_det {
        return Err(Error::Precondition(format!(
            "moment oracle needs a pure Gaussian state: dX^2 dP^2 - cov^2 = {det:.6e} != hbar^2/4"
        )));
    }
    let gamma_re = 1.0 / (4.0 * state.delta_x * state.delta_x);
    let gamma_im = -state.cov_xp / (2.0 * hb * state.delta_x * state.delta_x);
    let psi0 = GridWavefunction::pure_gaussian(spec, Complex64::new(gamma_re, gamma_im))?;
    let psi = split_step_evolve(&psi0, params, t)?;
    Ok(MomentOracle {
        var_x: psi.variance(),
        mean_x: (state.p0 / params.reduced_mass()) * t / 2.0,
    })
}

/// [`moment_oracle_with`] on an automatically sized grid.
pub fn moment_oracle(
    state: &MomentState,
    params: &SystemParams,
    t: f64,
) -> Result<MomentOracle> {
    let a_eff = 2.0 * state.delta_x;
    let spec = GridSpec::auto_for_width(params, a_eff, t);
    moment_oracle_with(state, params, t, &spec)
}
