use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, hermitian_part, hermiticity_defect, CMatrix, CVector};
use crate::num::{creal, Real, C};

/// Normalized state vector on `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: CVector<T>,
}

impl<T: Real> PureState<T> {
    /// Wraps amplitudes that must already have unit norm (within 1e-12).
    pub fn new(amplitudes: CVector<T>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("state dimension must be at least 1".into()));
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm. Fails only for the zero vector.
    pub fn normalized(amplitudes: CVector<T>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("state dimension must be at least 1".into()));
        }
        let norm = amplitudes.norm();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { amplitudes: amplitudes / creal(norm) })
    }

    pub fn from_slice(amplitudes: &[C<T>]) -> Result<Self> {
        Self::new(CVector::from_column_slice(amplitudes))
    }

    /// Result of a norm-preserving map; skips the tolerance check.
    pub(crate) fn from_computed(amplitudes: CVector<T>) -> Self {
        Self { amplitudes }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidDimension(format!("basis index {index} out of range for d={dim}")));
        }
        let mut v = CVector::zeros(dim);
        v[index] = creal(T::one());
        Ok(Self { amplitudes: v })
    }

    /// `|a⟩ ⊗ |b⟩` with `a` as the slow index.
    pub fn product(a: &Self, b: &Self) -> Self {
        Self { amplitudes: a.amplitudes.kronecker(&b.amplitudes) }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector<T> {
        self.amplitudes
    }

    pub(crate) fn projector_matrix(&self) -> CMatrix<T> {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    pub fn projector(&self) -> DensityMatrix<T> {
        DensityMatrix { matrix: self.projector_matrix() }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        Self::validate(&matrix)?;
        Ok(Self { matrix })
    }

    fn validate(matrix: &CMatrix<T>) -> Result<()> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "density matrix must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_defect(matrix);
        if herm > T::tol(1e-12) {
            return Err(Error::NotHermitian(herm.as_f64()));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::tol(1e-12) || tr.im.abs() > T::tol(1e-12) {
            return Err(Error::InvalidTrace(tr.re.as_f64()));
        }
        let min = eigvalsh(matrix)[0];
        if min < -T::tol(1e-10) {
            return Err(Error::NotPositive(min.as_f64()));
        }
        Ok(())
    }

    /// Output of a trace-preserving computation: symmetrized, then checked.
    pub(crate) fn from_computed(matrix: CMatrix<T>) -> Result<Self> {
        let matrix = hermitian_part(&matrix);
        Self::validate(&matrix)?;
        Ok(Self { matrix })
    }

    /// Skips validation; only for maps known to preserve every invariant.
    pub(crate) fn from_computed_unchecked(matrix: CMatrix<T>) -> Self {
        Self { matrix: hermitian_part(&matrix) }
    }

    /// `𝕀/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("dimension must be at least 1".into()));
        }
        let w = creal(T::one() / T::from_usize(dim).unwrap());
        Ok(Self { matrix: CMatrix::from_diagonal_element(dim, dim, w) })
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(probabilities: &[T]) -> Result<Self> {
        let diag = CVector::from_iterator(probabilities.len(), probabilities.iter().map(|&p| creal(p)));
        Self::new(CMatrix::from_diagonal(&diag))
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &Self, b: &Self) -> Self {
        Self { matrix: a.matrix.kronecker(&b.matrix) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        eigvalsh(&self.matrix)
    }
}

impl<T: Real> From<&PureState<T>> for DensityMatrix<T> {
    fn from(psi: &PureState<T>) -> Self {
        psi.projector()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        })
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "φ⁺" | "phiplus" => Ok(BellLabel::PhiPlus),
            "phi-" | "φ⁻" | "phiminus" => Ok(BellLabel::PhiMinus),
            "psi+" | "ψ⁺" | "psiplus" => Ok(BellLabel::PsiPlus),
            "psi-" | "ψ⁻" | "psiminus" => Ok(BellLabel::PsiMinus),
            other => Err(Error::Parse(format!("unknown Bell label {other:?}"))),
        }
    }
}

/// Standard two-qubit Bell vector in basis order 00, 01, 10, 11.
pub fn bell_state<T: Real>(label: BellLabel) -> PureState<T> {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let (z, p, m) = (T::zero(), h, -h);
    let amps = match label {
        BellLabel::PhiPlus => [p, z, z, p],
        BellLabel::PhiMinus => [p, z, z, m],
        BellLabel::PsiPlus => [z, p, p, z],
        BellLabel::PsiMinus => [z, p, m, z],
    };
    PureState::from_computed(CVector::from_iterator(4, amps.into_iter().map(creal)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::cplx;

    #[test]
    fn bell_vectors() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = bell_state::<f64>(BellLabel::PhiPlus);
        assert_eq!(phi.amplitudes().as_slice(), &[creal(h), creal(0.0), creal(0.0), creal(h)]);
        let psi = bell_state::<f64>(BellLabel::PsiMinus);
        assert_eq!(psi.amplitudes().as_slice(), &[creal(0.0), creal(h), creal(-h), creal(0.0)]);
        for label in [BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus] {
            assert!((bell_state::<f64>(label).amplitudes().norm() - 1.0).abs() < 1e-15);
            assert_eq!(label.to_string().parse::<BellLabel>().unwrap(), label);
        }
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        let v = CVector::<f64>::from_vec(vec![creal(1.0), creal(1.0)]);
        assert!(matches!(PureState::new(v.clone()), Err(Error::NotNormalized(_))));
        assert!(PureState::normalized(v).is_ok());
        assert!(PureState::<f64>::normalized(CVector::zeros(3)).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::<f64>::maximally_mixed(4).is_ok());
        assert!(matches!(DensityMatrix::<f64>::diagonal(&[0.5, 0.4]), Err(Error::InvalidTrace(_))));
        assert!(matches!(DensityMatrix::<f64>::diagonal(&[1.5, -0.5]), Err(Error::NotPositive(_))));
        let m = CMatrix::<f64>::from_row_slice(2, 2, &[creal(0.5), cplx(0.1, 0.1), cplx(0.1, 0.1), creal(0.5)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        // Roundoff-sized negative eigenvalues are tolerated.
        assert!(DensityMatrix::<f64>::diagonal(&[1.0 + 5e-11, -5e-11]).is_ok());
        assert!(DensityMatrix::<f64>::diagonal(&[1.0 + 2e-10, -2e-10]).is_err());
    }
}
