//! Physical parameters, derived constants, regime classification, and
//! minimum-uncertainty initial states.
//!
//! Units are natural: every quantity is a dimensionless f64 under the
//! conventions ħ (action), m (mass), a (length). The defaults used throughout
//! the tests are ħ = m = 1.

use crate::error::{Error, Result};
use crate::tolerances::CRITICAL_OMEGA_REL_TOL;

/// Immutable parameter set for the two-fragment system.
///
/// The interaction `V = κ(x+y)²` maps onto a harmonic oscillator in the
/// center-of-mass coordinate with total mass `M = 2m`, reduced mass `μ = m/2`
/// for the (free) relative coordinate, and frequency `ω² = 8κ/M = 4κ/m`.
/// In terms of the classical coupled-oscillator Hamiltonian this is the
/// coefficient choice C₁ = C₂ = κ, C₁₂ = 2κ.
///
/// `a` is the initial center-of-mass width: the initial state is
/// `ψ₀ ∝ exp(−X²/a²)` per component. The minimum-uncertainty parameter is
/// carried as ε ≡ a²/ħ, since `a` is the width symbol the evolution formulas
/// are written in. All three spatial components share the same ε (isotropy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    m: f64,
    hbar: f64,
    kappa: f64,
    a: f64,
    total_mass: f64,
    reduced_mass: f64,
    omega: f64,
    epsilon: f64,
}

impl SystemParams {
    /// Derive the full parameter set from the primitive inputs.
    pub fn new(m: f64, hbar: f64, kappa: f64, a: f64) -> Result<Self> {
        if m <= 0.0 || !m.is_finite() {
            return Err(Error::ParameterDomain(format!("m must be positive, got {m}")));
        }
        if hbar <= 0.0 || !hbar.is_finite() {
            return Err(Error::ParameterDomain(format!("hbar must be positive, got {hbar}")));
        }
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::ParameterDomain(format!("a must be positive, got {a}")));
        }
        if kappa < 0.0 || !kappa.is_finite() {
            return Err(Error::ParameterDomain(format!("kappa must be >= 0, got {kappa}")));
        }
        let total_mass = 2.0 * m;
        Ok(SystemParams {
            m,
            hbar,
            kappa,
            a,
            total_mass,
            reduced_mass: 0.5 * m,
            omega: (8.0 * kappa / total_mass).sqrt(),
            epsilon: a * a / hbar,
        })
    }

    /// Construct from the center-of-mass frequency instead of the coupling
    /// (κ = mω²/4).
    pub fn from_omega(m: f64, hbar: f64, omega: f64, a: f64) -> Result<Self> {
        if omega < 0.0 || !omega.is_finite() {
            return Err(Error::ParameterDomain(format!("omega must be >= 0, got {omega}")));
        }
        Self::new(m, hbar, 0.25 * m * omega * omega, a)
    }

    /// Uncoupled fragments (κ = 0).
    pub fn free(m: f64, hbar: f64, a: f64) -> Result<Self> {
        Self::new(m, hbar, 0.0, a)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Total mass M = 2m of the center-of-mass sector.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Reduced mass μ = m/2 of the relative sector.
    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }

    /// Center-of-mass oscillation frequency ω = sqrt(8κ/M) = sqrt(4κ/m).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Minimum-uncertainty parameter ε = a²/ħ.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The frequency 2ħ/(Ma²) separating the stiff and soft regimes.
    pub fn critical_omega(&self) -> f64 {
        2.0 * self.hbar / (self.total_mass * self.a * self.a)
    }

    pub fn is_free(&self) -> bool {
        self.kappa == 0.0
    }

    /// Shortest dynamical time scale: min(π/ω, Ma²/ħ), or Ma²/ħ when free.
    /// Numerical defaults (time steps) are expressed in this unit.
    pub fn characteristic_time(&self) -> f64 {
        let spread = self.total_mass * self.a * self.a / self.hbar;
        if self.omega > 0.0 {
            spread.min(std::f64::consts::PI / self.omega)
        } else {
            spread
        }
    }

    /// Classify against the critical frequency.
    pub fn regime(&self) -> Regime {
        let critical = self.critical_omega();
        let tag = if self.kappa == 0.0 {
            RegimeTag::Free
        } else if (self.omega - critical).abs() <= CRITICAL_OMEGA_REL_TOL * critical {
            RegimeTag::Critical
        } else if self.omega > critical {
            RegimeTag::Stiff
        } else {
            RegimeTag::Soft
        };
        Regime { tag, critical_omega: critical }
    }
}

/// Where ω sits relative to 2ħ/(Ma²), which decides whether the width
/// oscillates above, below, or not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeTag {
    Free,
    Soft,
    Critical,
    Stiff,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeTag::Free => "Free",
            RegimeTag::Soft => "Soft",
            RegimeTag::Critical => "Critical",
            RegimeTag::Stiff => "Stiff",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub tag: RegimeTag,
    pub critical_omega: f64,
}

/// First and second moments of one center-of-mass component and the total
/// momentum, plus the per-particle mean momentum that drives the fragments
/// apart.
///
/// `cov_xp` is the symmetrized covariance ⟨(XP+PX)/2⟩ − ⟨X⟩⟨P⟩ (the only
/// self-adjoint reading of the mixed moment). `lambda` is the mean wavelength
/// h/p0, present iff p0 ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentState {
    pub delta_x: f64,
    pub delta_p: f64,
    pub cov_xp: f64,
    pub p0: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub lambda: Option<f64>,
}

impl MomentState {
    /// Moments of the minimum-uncertainty state exp(−X²/a²) boosted to
    /// per-particle mean momentum `p0`.
    ///
    /// ΔX = a/2 and ΔP = ħ/a, so Δ(x+y)·Δ(p_x+p_y) = 2ΔX·ΔP = ħ saturates
    /// the two-particle uncertainty relation.
    pub fn minimum_uncertainty(params: &SystemParams, p0: f64) -> MomentState {
        let lambda = if p0 != 0.0 {
            Some(2.0 * std::f64::consts::PI * params.hbar() / p0)
        } else {
            None
        };
        MomentState {
            delta_x: 0.5 * params.a(),
            delta_p: params.hbar() / params.a(),
            cov_xp: 0.0,
            p0,
            mean_x: 0.0,
            mean_p: 0.0,
            lambda,
        }
    }
}
