//! Gaussian states in the covariance formalism.
//!
//! Quadratures are mode-interleaved, `ξ = (x₁, p₁, …, xₙ, pₙ)`, with
//! `ħ = 1` and the vacuum covariance equal to the identity, so every
//! physical state has symplectic eigenvalues `ν ≥ 1`.

mod covariance;
mod entanglement;
mod symplectic;
mod williamson;

pub use covariance::{gaussian_purity, is_pure, reduce_modes, symplectic_eigenvalues, CovarianceMatrix, GaussianState};
pub use entanglement::{gaussian_entropy_across, log_negativity_two_mode, mode_entropy};
pub use symplectic::{symplectic_defect, symplectic_form, SymplecticMatrix};
pub(crate) use williamson::williamson_decompose;
pub use williamson::{mode_separating_transform, williamson, williamson_residual};
