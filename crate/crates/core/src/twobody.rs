//! Two particles on a line in a common harmonic trap with a spring coupling,
//! `H = p₁²/2m₁ + p₂²/2m₂ + ½ω²(m₁x₁² + m₂x₂²) + ½κ(x₁ − x₂)²`.
//!
//! Three coordinate systems appear:
//!
//! - physical particle coordinates `(x₁, p₁, x₂, p₂)`, where the Hamiltonian
//!   matrix and the center-of-mass map are defined;
//! - mass-scaled particle quadratures `x̃ᵢ = √(mᵢω_ref)·xᵢ`,
//!   `p̃ᵢ = pᵢ/√(mᵢω_ref)`, in which ground states are reported (vacuum `= 𝕀`);
//! - mass-scaled center-of-mass/relative quadratures, built the same way with
//!   `M = m₁ + m₂` and `μ = m₁m₂/M`.
//!
//! `ω_ref` is the trap frequency, or 1 for an untrapped pair. Only local
//! rescalings separate the scaled and physical systems, so entanglement is
//! the same in either.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::{
    gaussian_entropy_across, symplectic_form, williamson_decompose, CovarianceMatrix, GaussianState, SymplecticMatrix,
};
use crate::num::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodyParams<T: Real> {
    m1: T,
    m2: T,
    omega: T,
    kappa: T,
}

impl<T: Real> TwoBodyParams<T> {
    pub fn new(m1: T, m2: T, omega: T, kappa: T) -> Result<Self> {
        if !(m1 > T::zero() && m2 > T::zero()) || !m1.is_finite() || !m2.is_finite() {
            return Err(Error::InvalidParams(format!("masses must be positive, got m1={m1}, m2={m2}")));
        }
        if omega < T::zero() || kappa < T::zero() || !omega.is_finite() || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!(
                "omega and kappa must be nonnegative, got omega={omega}, kappa={kappa}"
            )));
        }
        if omega == T::zero() && kappa == T::zero() {
            return Err(Error::InvalidParams("free particles: need omega > 0 or kappa > 0".into()));
        }
        Ok(Self { m1, m2, omega, kappa })
    }

    pub fn m1(&self) -> T {
        self.m1
    }

    pub fn m2(&self) -> T {
        self.m2
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn total_mass(&self) -> T {
        self.m1 + self.m2
    }

    pub fn reduced_mass(&self) -> T {
        self.m1 * self.m2 / self.total_mass()
    }

    pub fn with_kappa(&self, kappa: T) -> Result<Self> {
        Self::new(self.m1, self.m2, self.omega, kappa)
    }

    /// Frequency used to scale quadratures: the trap frequency, or 1 untrapped.
    pub fn reference_frequency(&self) -> T {
        if self.omega > T::zero() {
            self.omega
        } else {
            T::one()
        }
    }
}

/// `H = ½ ξᵀ H ξ` on `n` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian<T: Real> {
    h: DMatrix<T>,
}

impl<T: Real> QuadraticHamiltonian<T> {
    pub fn new(h: DMatrix<T>) -> Result<Self> {
        if !h.is_square() || !h.nrows().is_multiple_of(2) || h.nrows() == 0 {
            return Err(Error::InvalidDimension(format!("expected 2n x 2n, got {}x{}", h.nrows(), h.ncols())));
        }
        let asym = (&h - h.transpose()).amax();
        if asym > T::tol(1e-12) * T::one().max(h.amax()) {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        Ok(Self { h: (&h + h.transpose()) * T::lit(0.5) })
    }

    pub fn n_modes(&self) -> usize {
        self.h.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.h
    }

    /// The same Hamiltonian in coordinates `ξ' = Sξ`: `S⁻ᵀ H S⁻¹`.
    pub fn in_coordinates(&self, s: &SymplecticMatrix<T>) -> Result<Self> {
        if s.n_modes() != self.n_modes() {
            return Err(Error::DimensionMismatch { expected: self.n_modes(), got: s.n_modes() });
        }
        let inv = s.inverse();
        let h = inv.matrix().transpose() * &self.h * inv.matrix();
        Ok(Self { h: (&h + h.transpose()) * T::lit(0.5) })
    }

    /// Normal-mode frequencies (descending) and the symplectic `S` with
    /// `S H Sᵀ = ⊕ ωⱼ𝕀₂`. Fails for unbound Hamiltonians.
    pub fn normal_modes(&self) -> Result<(Vec<T>, DMatrix<T>)> {
        let (s, freqs) = williamson_decompose(&self.h).map_err(|e| match e {
            Error::NotPositive(v) => Error::Unbound(v),
            other => other,
        })?;
        let top = freqs[0];
        let low = *freqs.last().unwrap();
        if low < T::lit(1e-10) * top {
            return Err(Error::Unbound(low.as_f64()));
        }
        Ok((freqs, s))
    }
}

/// `(x₁, p₁, x₂, p₂) ↦ (x_c, p_c, x_r, p_r)` with `x_c = (m₁x₁ + m₂x₂)/M`,
/// `x_r = x₁ − x₂`, `p_c = p₁ + p₂`, `p_r = (m₂p₁ − m₁p₂)/M`.
pub fn com_rel_transform<T: Real>(m1: T, m2: T) -> Result<SymplecticMatrix<T>> {
    if !(m1 > T::zero() && m2 > T::zero()) {
        return Err(Error::InvalidParams(format!("masses must be positive, got m1={m1}, m2={m2}")));
    }
    let m = m1 + m2;
    let (z, one) = (T::zero(), T::one());
    #[rustfmt::skip]
    let s = DMatrix::from_row_slice(4, 4, &[
        m1 / m, z,      m2 / m, z,
        z,      one,    z,      one,
        one,    z,      -one,   z,
        z,      m2 / m, z,      -m1 / m,
    ]);
    SymplecticMatrix::new(s)
}

fn scaling<T: Real>(a: T, b: T) -> SymplecticMatrix<T> {
    SymplecticMatrix::new_unchecked(DMatrix::from_diagonal(&DVector::from_vec(vec![
        a.sqrt(),
        T::one() / a.sqrt(),
        b.sqrt(),
        T::one() / b.sqrt(),
    ])))
}

/// Physical particle coordinates to mass-scaled particle quadratures.
pub fn particle_scaling<T: Real>(params: &TwoBodyParams<T>) -> SymplecticMatrix<T> {
    let w = params.reference_frequency();
    scaling(params.m1 * w, params.m2 * w)
}

/// Physical center-of-mass/relative coordinates to their scaled quadratures.
pub fn com_rel_scaling<T: Real>(params: &TwoBodyParams<T>) -> SymplecticMatrix<T> {
    let w = params.reference_frequency();
    scaling(params.total_mass() * w, params.reduced_mass() * w)
}

/// Scaled particle quadratures to scaled center-of-mass/relative quadratures.
pub fn particle_to_com_rel<T: Real>(params: &TwoBodyParams<T>) -> Result<SymplecticMatrix<T>> {
    let cr = com_rel_transform(params.m1, params.m2)?;
    Ok(com_rel_scaling(params).compose(&cr).compose(&particle_scaling(params).inverse()))
}

/// Hamiltonian matrix in physical particle coordinates.
pub fn build_hamiltonian_matrix<T: Real>(params: &TwoBodyParams<T>) -> QuadraticHamiltonian<T> {
    let w2 = params.omega * params.omega;
    let k = params.kappa;
    let z = T::zero();
    #[rustfmt::skip]
    let h = DMatrix::from_row_slice(4, 4, &[
        params.m1 * w2 + k, z,                   -k,                 z,
        z,                  T::one() / params.m1, z,                  z,
        -k,                 z,                   params.m2 * w2 + k, z,
        z,                  z,                   z,                  T::one() / params.m2,
    ]);
    QuadraticHamiltonian { h }
}

/// Hamiltonian matrix in the mass-scaled particle quadratures used by
/// [`ground_state_covariance`] and [`evolve_gaussian`].
pub fn scaled_hamiltonian<T: Real>(params: &TwoBodyParams<T>) -> QuadraticHamiltonian<T> {
    build_hamiltonian_matrix(params).in_coordinates(&particle_scaling(params)).expect("two-mode scaling")
}

/// Ground state in mass-scaled particle quadratures.
///
/// The Hamiltonian is moved to center-of-mass/relative coordinates, brought
/// to normal modes `ξ'` where `H = ½ Σ ωⱼ(x'ⱼ² + p'ⱼ²)`, each normal mode is
/// put in its vacuum, and the result is mapped back.
pub fn ground_state_covariance<T: Real>(params: &TwoBodyParams<T>) -> Result<GaussianState<T>> {
    let cr = com_rel_transform(params.m1, params.m2)?;
    let h_cr = build_hamiltonian_matrix(params).in_coordinates(&cr)?;
    let (_, s) = h_cr.normal_modes()?;
    // ξ' = S⁻ᵀ ξ_cr is the normal-mode frame, so σ_cr = Sᵀ S.
    let sigma_cr = s.transpose() * &s;
    let to_scaled = particle_scaling(params).compose(&cr.inverse());
    let sigma = to_scaled.matrix() * sigma_cr * to_scaled.matrix().transpose();
    let cov = CovarianceMatrix::new((&sigma + sigma.transpose()) * T::lit(0.5))?;
    Ok(GaussianState::centered(cov))
}

/// Entropy across particle 1 | particle 2 of a pure state in scaled particle quadratures.
pub fn interparticle_entropy<T: Real>(state: &GaussianState<T>) -> Result<T> {
    gaussian_entropy_across(state, &[0])
}

/// Entropy across center of mass | relative motion of a pure state in scaled
/// particle quadratures.
pub fn internal_external_entropy<T: Real>(state: &GaussianState<T>, params: &TwoBodyParams<T>) -> Result<T> {
    let moved = state.transform(&particle_to_com_rel(params)?)?;
    gaussian_entropy_across(&moved, &[0])
}

pub fn interparticle_entanglement<T: Real>(params: &TwoBodyParams<T>) -> Result<T> {
    interparticle_entropy(&ground_state_covariance(params)?)
}

pub fn internal_external_entanglement<T: Real>(params: &TwoBodyParams<T>) -> Result<T> {
    internal_external_entropy(&ground_state_covariance(params)?, params)
}

/// Propagator `S_t = exp(t·Ω·H)` of a quadratic Hamiltonian.
pub fn propagator<T: Real>(h: &QuadraticHamiltonian<T>, t: T) -> SymplecticMatrix<T> {
    let generator = symplectic_form::<T>(h.n_modes()) * h.matrix() * t;
    SymplecticMatrix::new_unchecked(generator.exp())
}

/// `σ(t) = S_t σ S_tᵀ`, `mean(t) = S_t·mean`.
pub fn evolve_gaussian<T: Real>(
    state: &GaussianState<T>,
    h: &QuadraticHamiltonian<T>,
    t: T,
) -> Result<GaussianState<T>> {
    if h.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch { expected: state.n_modes(), got: h.n_modes() });
    }
    state.transform(&propagator(h, t))
}

/// Galilean boost by `velocity`: momentum means shift by `mᵢ·v`, expressed
/// in scaled quadratures. The covariance is untouched.
pub fn galilean_boost<T: Real>(
    state: &GaussianState<T>,
    velocity: T,
    params: &TwoBodyParams<T>,
) -> Result<GaussianState<T>> {
    let w = params.reference_frequency();
    let dp = |m: T| m * velocity / (m * w).sqrt();
    let shift = DVector::from_vec(vec![T::zero(), dp(params.m1), T::zero(), dp(params.m2)]);
    state.displace(&shift)
}

/// Spatial translation of both particles by `distance`.
pub fn galilean_translate<T: Real>(
    state: &GaussianState<T>,
    distance: T,
    params: &TwoBodyParams<T>,
) -> Result<GaussianState<T>> {
    let w = params.reference_frequency();
    let dx = |m: T| (m * w).sqrt() * distance;
    let shift = DVector::from_vec(vec![dx(params.m1), T::zero(), dx(params.m2), T::zero()]);
    state.displace(&shift)
}
