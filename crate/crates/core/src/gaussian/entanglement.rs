use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::num::Real;

use super::covariance::{
    complement, gaussian_purity, is_pure, reduce_modes, symplectic_eigenvalues, symplectic_spectrum, GaussianState,
};

/// Entropy (nats) of a thermal mode with symplectic eigenvalue `ν`:
/// `((ν+1)/2)·ln((ν+1)/2) − ((ν−1)/2)·ln((ν−1)/2)`, with `f(1) = 0`.
pub fn mode_entropy<T: Real>(nu: T) -> T {
    let half = T::lit(0.5);
    let plus = (nu + T::one()) * half;
    let minus = (nu - T::one()) * half;
    if minus <= T::zero() {
        return T::zero();
    }
    plus * plus.ln() - minus * minus.ln()
}

/// Entanglement entropy of a pure Gaussian state across `side_a | rest`
/// (0-based mode indices).
pub fn gaussian_entropy_across<T: Real>(state: &GaussianState<T>, side_a: &[usize]) -> Result<T> {
    complement(state.n_modes(), side_a)?;
    if !is_pure(&state.cov) {
        return Err(Error::MixedState(gaussian_purity(&state.cov).as_f64()));
    }
    let reduced = reduce_modes(state, side_a)?;
    Ok(symplectic_eigenvalues(&reduced.cov).into_iter().fold(T::zero(), |acc, nu| acc + mode_entropy(nu)))
}

/// `max(0, −ln ν̃₋)` where `ν̃₋` is the smaller symplectic eigenvalue of the
/// partially transposed covariance (`p₂ ↦ −p₂`).
pub fn log_negativity_two_mode<T: Real>(state: &GaussianState<T>) -> Result<T> {
    if state.n_modes() != 2 {
        return Err(Error::InvalidModes(format!("two-mode log-negativity needs 2 modes, got {}", state.n_modes())));
    }
    let mut flip = DMatrix::<T>::identity(4, 4);
    flip[(3, 3)] = -T::one();
    let transposed = &flip * state.cov.matrix() * &flip;
    let nu = symplectic_spectrum(&transposed)?;
    Ok((-nu[1].ln()).max(T::zero()))
}
