use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A physical parameter is outside its domain (non-positive mass, width,
    /// ħ, or negative coupling).
    #[error("parameter domain: {0}")]
    ParameterDomain(String),

    /// An operation precondition was violated (nonzero means where zero is
    /// assumed, p0 = 0 for alignment, non-pure second moments, ...).
    #[error("precondition: {0}")]
    Precondition(String),

    /// Dimensionality other than 1 or 3.
    #[error("invalid dims {0}: only 1 and 3 are supported")]
    InvalidDims(u32),

    /// Operation asked for outside its regime of validity (decay-exponent fit
    /// with coupling on, or a window before the asymptotic era).
    #[error("regime: {0}")]
    Regime(String),

    /// Split-step norm conservation broke down.
    #[error("numerical failure: norm drift {drift:.3e} at t = {t:.6} (step {step})")]
    NormDrift { drift: f64, t: f64, step: usize },

    /// Probability density reached the grid boundary: the spatial domain does
    /// not cover the evolved packet.
    #[error("domain too small: boundary density ratio {boundary_density:.3e}")]
    DomainTooSmall { boundary_density: f64 },

    /// State handed to a Gaussian-only estimator is not Gaussian.
    #[error("shape: state is not Gaussian (excess kurtosis {excess_kurtosis:.3e})")]
    NonGaussian { excess_kurtosis: f64 },

    /// Grid resolution or box size is insufficient for a converged result.
    #[error("resolution: {0}")]
    Resolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
