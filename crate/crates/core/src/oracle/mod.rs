//! Independent numerical verification of every closed form in the crate.
//!
//! Nothing here reuses the analytic solution path it checks: the propagator
//! discretizes the center-of-mass Schrödinger equation directly (Strang
//! splitting, spectral kinetic step), width extraction reads |ψ|² moments off
//! the grid, and the purity oracle contracts a dense two-particle grid into a
//! reduced density matrix with no low-rank shortcut. All oracles run per
//! spatial component; 3-D quantities are powers of 1-D results because the
//! problem is isotropic and separable.

mod grid;
mod moment_oracle;
mod purity;
mod split_step;

pub use grid::{extract_alpha, AlphaEstimate, GridSpec, GridWavefunction};
pub use moment_oracle::{moment_oracle, moment_oracle_with, MomentOracle};
pub use purity::{grid_purity, grid_purity_for_alpha, purity_of, Grid2, PurityReport};
pub use split_step::{energy, split_step_evolve, split_step_sampled};
