//! Entanglement of quantum states relative to observable-induced tensor
//! product structures.
//!
//! The same state can be product, partially entangled or maximally entangled
//! depending on which observables define the subsystems. This crate provides:
//!
//! - [`findim`]: pure and mixed states on `C^d`, tensor product frames,
//!   Schmidt decomposition, reduced states, entropy, purity, negativity and
//!   operator Schmidt rank.
//! - [`tailor`]: frames that give a known pure state any Schmidt spectrum,
//!   subalgebra generators for a frame, and the independence/completeness
//!   checks for an induced tensor product structure.
//! - [`gaussian`]: covariance-matrix Gaussian states, symplectic spectra,
//!   the Williamson normal form and Gaussian entanglement measures.
//! - [`twobody`]: two harmonically trapped, coupled particles; center-of-mass
//!   and relative coordinates, ground states and Gaussian time evolution.
//! - [`scattering`]: two distinguishable particles on a ring lattice whose
//!   contact interaction entangles initially uncorrelated wave packets.
//!
//! Everything is generic over the scalar via [`Real`] (`f32` or `f64`); the
//! `*F64` aliases below fix the usual double-precision choice.

pub mod error;
pub mod findim;
pub mod gaussian;
pub mod io;
pub mod linalg;
pub mod num;
pub mod random;
pub mod scattering;
pub mod tailor;
pub mod twobody;

pub use error::{Error, Result};
pub use num::{Real, C};

pub type PureStateF64 = findim::PureState<f64>;
pub type DensityMatrixF64 = findim::DensityMatrix<f64>;
pub type TpsFrameF64 = findim::TpsFrame<f64>;
pub type SchmidtDataF64 = findim::SchmidtData<f64>;
pub type TargetSpectrumF64 = tailor::TargetSpectrum<f64>;
pub type SubalgebraBasisF64 = tailor::SubalgebraBasis<f64>;
pub type CovarianceMatrixF64 = gaussian::CovarianceMatrix<f64>;
pub type GaussianStateF64 = gaussian::GaussianState<f64>;
pub type SymplecticMatrixF64 = gaussian::SymplecticMatrix<f64>;
pub type TwoBodyParamsF64 = twobody::TwoBodyParams<f64>;
pub type QuadraticHamiltonianF64 = twobody::QuadraticHamiltonian<f64>;
pub type LatticeConfigF64 = scattering::LatticeConfig<f64>;
pub type TwoParticleStateF64 = scattering::TwoParticleState<f64>;

pub type PureStateF32 = findim::PureState<f32>;
pub type DensityMatrixF32 = findim::DensityMatrix<f32>;
pub type TpsFrameF32 = findim::TpsFrame<f32>;
pub type CovarianceMatrixF32 = gaussian::CovarianceMatrix<f32>;
pub type GaussianStateF32 = gaussian::GaussianState<f32>;
