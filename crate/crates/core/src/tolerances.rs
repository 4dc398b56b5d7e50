//! Centralized tolerances for the oracle checks and the acceptance suite.
//!
//! Every threshold used when comparing closed forms against the numerical
//! oracles lives here with a one-line rationale, so no test carries ad-hoc
//! magic numbers.

/// Relative tolerance for the regime classifier's ω = 2ħ/(Ma²) equality.
/// Floating-point equality of two independently derived frequencies is
/// meaningless; 1e−12 leaves ~4 digits of headroom over f64 rounding.
pub const CRITICAL_OMEGA_REL_TOL: f64 = 1e-12;

/// Width law α(t) versus the split-step oracle. The propagator at default dt
/// has measured relative error ~4e−9; 1e−6 is the acceptance bound.
pub const WIDTH_ORACLE_REL_TOL: f64 = 1e-6;

/// Critical-regime constancy of α(t), analytic route. Pure algebra, so the
/// bound is near machine precision.
pub const CRITICAL_ANALYTIC_REL_TOL: f64 = 1e-12;

/// Critical-regime constancy of α(t) extracted from the grid oracle.
pub const CRITICAL_ORACLE_REL_TOL: f64 = 1e-8;

/// |α − α_F|/α_F at ωt = 0.01. The gap is O((ωt)²) ≈ 1e−4 here, so 1e−3
/// bounds it with an order of magnitude to spare.
pub const FREE_LIMIT_REL_TOL: f64 = 1e-3;

/// The (ωt)² scaling of the free-limit gap must hold within this factor
/// across two decades of ωt.
pub const FREE_LIMIT_SCALE_FACTOR: f64 = 2.0;

/// 4·α(t)·ΔX²(t) = 1 for minimum-uncertainty inputs. Identity is exact in
/// real arithmetic; 1e−10 allows accumulated rounding in both routes.
pub const ALPHA_IDENTITY_REL_TOL: f64 = 1e-10;

/// Interacting tan θ at t = 1e4 must have decayed below this (1/t law).
pub const ALIGNMENT_LATE_TIME_MAX: f64 = 1e-3;

/// Free tan θ asymptote versus its closed form dP/(2p0). Exact algebra.
pub const ASYMPTOTE_REL_TOL: f64 = 1e-9;

/// Gap between tan θ evaluated at t = 1e6 and the asymptote constant.
pub const ASYMPTOTE_LATE_EVAL_ABS: f64 = 1e-6;

/// Fitted free-decay log-log slope of S_V versus −dims.
pub const DECAY_SLOPE_ABS_TOL: f64 = 0.01;

/// S_V(t)/α(t)^{dims/2} constancy in the interacting regime. Pure power-law
/// algebra, so near machine precision.
pub const SCHMIDT_SCALING_REL_TOL: f64 = 1e-12;

/// Grid-purity Schmidt number per box half-width versus sqrt(α/π). The box
/// regularization carries O(1/(box_L·sqrt(α))) edge corrections, ~1% at the
/// reference geometry.
pub const PURITY_REL_TOL: f64 = 0.02;

/// Tr(ρ_x²) versus Tr(ρ_y²) from the grid contraction.
pub const TRACE_SYMMETRY_REL_TOL: f64 = 1e-8;

/// Grid-purity self-consistency when the per-axis point count doubles.
pub const PURITY_CONVERGENCE_REL_TOL: f64 = 0.01;

/// Split-step discrete norm drift, |Σ|ψ|²Δx − 1|, over a whole run.
pub const NORM_DRIFT_TOL: f64 = 1e-10;

/// Split-step ⟨H⟩ drift over ≥ 10 % periods, relative to ⟨H⟩(0). Strang at
/// the default dt has measured drift ~2e−9.
pub const ENERGY_DRIFT_REL_TOL: f64 = 1e-8;

/// Minimum |⟨ψ_grid|ψ_analytic⟩| (global phase removed).
pub const FIDELITY_MIN: f64 = 1.0 - 1e-8;

/// |c_f| near ωt = nπ, in units of 1/a²: the combined-fraction phase
/// coefficient must stay finite and vanish at the removable singularity.
pub const PHASE_REMOVABILITY_ABS: f64 = 1e-6;

/// Excess kurtosis of |ψ|² above which a state is rejected as non-Gaussian.
pub const KURTOSIS_MAX: f64 = 1e-3;

/// Boundary-to-peak density ratio above which the grid domain is declared
/// too small (spectral wrap-around would corrupt the run).
pub const ALIASING_DENSITY_MAX: f64 = 1e-12;

/// Agreement between the moment-based and log-fit α estimates.
pub const ALPHA_ESTIMATE_AGREEMENT_REL: f64 = 1e-6;

/// Halving dt at the default step must move extracted α by less than this.
pub const DT_HALVING_REL_TOL: f64 = 1e-8;

/// Observed convergence order of the splitting at coarse dt (nominal 2).
pub const SPECTRAL_ORDER_MIN: f64 = 1.9;

/// Grid moment oracle versus the closed-form variance/mean laws.
pub const MOMENT_ORACLE_REL_TOL: f64 = 1e-6;
