use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::num::Real;

/// `Ω = ⊕ⁿ [[0, 1], [−1, 0]]` for mode-interleaved quadratures
/// `(x₁, p₁, …, xₙ, pₙ)`.
pub fn symplectic_form<T: Real>(n_modes: usize) -> DMatrix<T> {
    let mut om = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        om[(2 * j, 2 * j + 1)] = T::one();
        om[(2 * j + 1, 2 * j)] = -T::one();
    }
    om
}

/// `‖SᵀΩS − Ω‖_F`.
pub fn symplectic_defect<T: Real>(s: &DMatrix<T>) -> T {
    let om = symplectic_form::<T>(s.nrows() / 2);
    (s.transpose() * &om * s - om).norm()
}

/// Real `2n × 2n` matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix<T: Real> {
    s: DMatrix<T>,
}

impl<T: Real> SymplecticMatrix<T> {
    /// Checks `SᵀΩS = Ω` to 1e-10, scaled by `‖S‖²_F` for strongly squeezing maps.
    pub fn new(s: DMatrix<T>) -> Result<Self> {
        if !s.is_square() || !s.nrows().is_multiple_of(2) || s.nrows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "symplectic matrix must be 2n x 2n, got {}x{}",
                s.nrows(),
                s.ncols()
            )));
        }
        let defect = symplectic_defect(&s);
        let scale = T::one().max(s.norm_squared() / T::from_usize(s.nrows()).unwrap());
        if defect > T::tol(1e-10) * scale {
            return Err(Error::NotSymplectic(defect.as_f64()));
        }
        Ok(Self { s })
    }

    pub(crate) fn new_unchecked(s: DMatrix<T>) -> Self {
        Self { s }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self { s: DMatrix::identity(2 * n_modes, 2 * n_modes) }
    }

    /// Single-mode squeezer `diag(e^{−r}, e^{r})`: squeezes `x` for `r > 0`.
    pub fn squeezer(r: T) -> Self {
        Self { s: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![(-r).exp(), r.exp()])) }
    }

    pub fn n_modes(&self) -> usize {
        self.s.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.s
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.s
    }

    pub fn defect(&self) -> T {
        symplectic_defect(&self.s)
    }

    /// `S⁻¹ = −Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let om = symplectic_form::<T>(self.n_modes());
        Self { s: -(&om * self.s.transpose() * om) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { s: &self.s * &other.s }
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.s.nrows(), other.s.nrows());
        let mut s = DMatrix::zeros(a + b, a + b);
        s.view_mut((0, 0), (a, a)).copy_from(&self.s);
        s.view_mut((a, a), (b, b)).copy_from(&other.s);
        Self { s }
    }
}
