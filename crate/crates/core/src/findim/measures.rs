//! Schmidt decomposition, reduced states and entanglement measures, all
//! evaluated in the product basis of a [`TpsFrame`].

use nalgebra::ComplexField;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, singular_values, CMatrix, CVector};
use crate::num::{creal, Real};

use super::frame::{Factorization, TpsFrame};
use super::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// `ψ = Σᵢ √λᵢ |uᵢ⟩|vᵢ⟩` in the frame's product basis.
#[derive(Debug, Clone)]
pub struct SchmidtData<T: Real> {
    /// Squared Schmidt coefficients, descending.
    pub coefficients: Vec<T>,
    pub left_vectors: Vec<CVector<T>>,
    pub right_vectors: Vec<CVector<T>>,
}

impl<T: Real> SchmidtData<T> {
    /// Rebuilds `Uψ` from the decomposition.
    pub fn reconstruct(&self) -> CVector<T> {
        let k1 = self.left_vectors.first().map_or(0, |v| v.len());
        let k2 = self.right_vectors.first().map_or(0, |v| v.len());
        let mut out = CVector::zeros(k1 * k2);
        for ((lam, u), v) in self.coefficients.iter().zip(&self.left_vectors).zip(&self.right_vectors) {
            out += u.kronecker(v) * creal(lam.sqrt());
        }
        out
    }

    pub fn entropy(&self) -> Result<T> {
        spectrum_entropy(&self.coefficients)
    }

    /// Number of coefficients above `tol`.
    pub fn rank(&self, tol: T) -> usize {
        self.coefficients.iter().filter(|&&l| l > tol).count()
    }
}

/// Index of the first component whose modulus exceeds a small threshold.
fn leading_index<T: Real>(v: &CVector<T>) -> usize {
    let cut = T::tol(1e-12);
    v.iter().position(|z| z.modulus() > cut).unwrap_or(0)
}

pub fn schmidt_decompose<T: Real>(state: &PureState<T>, frame: &TpsFrame<T>) -> Result<SchmidtData<T>> {
    let f = frame.factorization();
    f.check_dim(state.dim())?;
    let (k1, k2) = f.factors();
    let phi = frame.map_vector(state.amplitudes());
    let m = CMatrix::from_fn(k1, k2, |a, b| phi[a * k2 + b]);
    let svd = m.svd(true, true);
    let u = svd.u.ok_or_else(|| Error::Decomposition("SVD did not return U".into()))?;
    let v_t = svd.v_t.ok_or_else(|| Error::Decomposition("SVD did not return Vᵀ".into()))?;

    let mut terms: Vec<(T, CVector<T>, CVector<T>)> = (0..f.schmidt_len())
        .map(|i| {
            let s = svd.singular_values[i];
            let mut left: CVector<T> = u.column(i).into_owned();
            let mut right: CVector<T> = v_t.row(i).transpose();
            // First significant component of the left vector is made real positive.
            let z = left[leading_index(&left)];
            let modulus = z.modulus();
            if modulus > T::zero() {
                let phase = z / creal(modulus);
                left *= phase.conj();
                right *= phase;
            }
            (s * s, left, right)
        })
        .collect();

    let tie = T::tol(1e-12);
    terms.sort_by(|a, b| {
        if (a.0 - b.0).abs() > tie {
            return b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal);
        }
        let (ia, ib) = (leading_index(&a.1), leading_index(&b.1));
        ia.cmp(&ib).then_with(|| b.1[ib].modulus().partial_cmp(&a.1[ia].modulus()).unwrap_or(Ordering::Equal))
    });

    let mut data = SchmidtData {
        coefficients: Vec::with_capacity(terms.len()),
        left_vectors: Vec::with_capacity(terms.len()),
        right_vectors: Vec::with_capacity(terms.len()),
    };
    for (lam, l, r) in terms {
        data.coefficients.push(lam);
        data.left_vectors.push(l);
        data.right_vectors.push(r);
    }
    Ok(data)
}

/// Partial trace of a `(k₁·k₂)`-dimensional operator with row-major
/// composite index `i_A·k₂ + i_B`. Factors may be 1.
pub(crate) fn partial_trace_raw<T: Real>(m: &CMatrix<T>, k1: usize, k2: usize, keep: Side) -> CMatrix<T> {
    match keep {
        Side::A => CMatrix::from_fn(k1, k1, |a, ap| (0..k2).map(|b| m[(a * k2 + b, ap * k2 + b)]).sum()),
        Side::B => CMatrix::from_fn(k2, k2, |b, bp| (0..k1).map(|a| m[(a * k2 + b, a * k2 + bp)]).sum()),
    }
}

/// Reduced state of the kept `side` after moving into the frame.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, frame: &TpsFrame<T>, side: Side) -> Result<DensityMatrix<T>> {
    let f = frame.factorization();
    f.check_dim(rho.dim())?;
    let conj = frame.map_operator(rho.matrix());
    DensityMatrix::from_computed(partial_trace_raw(&conj, f.k1(), f.k2(), side))
}

/// Shannon entropy (nats) of a probability spectrum.
///
/// Entries in `[−1e-10, 0)` are roundoff and count as zero; anything more
/// negative is rejected. A weight of `1 + ε` would give `−ε`, so the result
/// is floored at zero.
pub fn spectrum_entropy<T: Real>(spectrum: &[T]) -> Result<T> {
    let floor = -T::tol(1e-10);
    let mut s = T::zero();
    for &p in spectrum {
        if p < floor {
            return Err(Error::NotPositive(p.as_f64()));
        }
        if p > T::zero() {
            s -= p * p.ln();
        }
    }
    Ok(s.max(T::zero()))
}

/// Von Neumann entropy across the frame's bipartition, in nats.
pub fn entanglement_entropy<T: Real>(state: &PureState<T>, frame: &TpsFrame<T>) -> Result<T> {
    schmidt_decompose(state, frame)?.entropy()
}

/// `−Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    spectrum_entropy(&rho.eigenvalues())
}

/// `Tr ρ²`.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.matrix().iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// Partial transpose on subsystem B of an operator in product-basis order.
pub(crate) fn partial_transpose_b<T: Real>(m: &CMatrix<T>, k1: usize, k2: usize) -> CMatrix<T> {
    CMatrix::from_fn(k1 * k2, k1 * k2, |r, c| {
        let (a, b) = (r / k2, r % k2);
        let (ap, bp) = (c / k2, c % k2);
        m[(a * k2 + bp, ap * k2 + b)]
    })
}

/// `(‖ρ^{T_B}‖₁ − 1)/2` with the transpose taken in the frame's product basis.
pub fn negativity<T: Real>(rho: &DensityMatrix<T>, frame: &TpsFrame<T>) -> Result<T> {
    let f = frame.factorization();
    f.check_dim(rho.dim())?;
    let conj = frame.map_operator(rho.matrix());
    let pt = partial_transpose_b(&conj, f.k1(), f.k2());
    let trace_norm = eigvalsh(&pt).iter().fold(T::zero(), |acc, l| acc + l.abs());
    Ok(((trace_norm - T::one()) * T::lit(0.5)).max(T::zero()))
}

/// Realignment `R[(a,a'),(b,b')] = M[(a,b),(a',b')]`, a `k₁² × k₂²` matrix
/// whose singular values are the operator Schmidt coefficients.
pub(crate) fn reshuffle<T: Real>(m: &CMatrix<T>, k1: usize, k2: usize) -> CMatrix<T> {
    CMatrix::from_fn(k1 * k1, k2 * k2, |r, c| {
        let (a, ap) = (r / k1, r % k1);
        let (b, bp) = (c / k2, c % k2);
        m[(a * k2 + b, ap * k2 + bp)]
    })
}

/// Number of operator Schmidt terms: singular values of the realigned
/// matrix above `tol` times the largest. Rank 1 means `M = A ⊗ B`.
pub fn operator_schmidt_rank<T: Real>(m: &CMatrix<T>, factorization: Factorization, tol: T) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidDimension(format!("operator must be square, got {}x{}", m.nrows(), m.ncols())));
    }
    factorization.check_dim(m.nrows())?;
    let sv = singular_values(&reshuffle(m, factorization.k1(), factorization.k2()));
    Ok(match sv.first() {
        Some(&top) if top > T::zero() => sv.iter().filter(|&&s| s > tol * top).count(),
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{bell_state, ApplyFrame, BellLabel};
    use crate::random::{random_density, random_pure, random_unitary};
    use std::f64::consts::LN_2;

    fn f(k1: usize, k2: usize) -> Factorization {
        Factorization::new(k1, k2).unwrap()
    }

    fn id(k1: usize, k2: usize) -> TpsFrame<f64> {
        TpsFrame::identity(f(k1, k2))
    }

    /// `Σ_b (𝕀⊗⟨b|) ρ (𝕀⊗|b⟩)`, written with explicit embedding matrices.
    fn oracle_trace_b(rho: &CMatrix<f64>, k1: usize, k2: usize) -> CMatrix<f64> {
        let mut out = CMatrix::zeros(k1, k1);
        for b in 0..k2 {
            let mut e = CMatrix::<f64>::zeros(k1 * k2, k1);
            for a in 0..k1 {
                e[(a * k2 + b, a)] = creal(1.0);
            }
            out += e.adjoint() * rho * &e;
        }
        out
    }

    fn oracle_trace_a(rho: &CMatrix<f64>, k1: usize, k2: usize) -> CMatrix<f64> {
        let mut out = CMatrix::zeros(k2, k2);
        for a in 0..k1 {
            for b in 0..k2 {
                for bp in 0..k2 {
                    out[(b, bp)] += rho[(a * k2 + b, a * k2 + bp)];
                }
            }
        }
        out
    }

    #[test]
    fn bell_schmidt_is_uniform() {
        let s = schmidt_decompose(&bell_state(BellLabel::PhiPlus), &id(2, 2)).unwrap();
        assert!((s.coefficients[0] - 0.5).abs() < 1e-14 && (s.coefficients[1] - 0.5).abs() < 1e-14);
        assert!((entanglement_entropy(&bell_state(BellLabel::PhiPlus), &id(2, 2)).unwrap() - LN_2).abs() < 1e-14);
    }

    #[test]
    fn product_state_schmidt() {
        let psi = PureState::<f64>::basis(4, 0).unwrap();
        let s = schmidt_decompose(&psi, &id(2, 2)).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-15 && s.coefficients[1].abs() < 1e-15);
        assert_eq!(entanglement_entropy(&psi, &id(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn schmidt_matches_reduced_spectrum_and_reconstructs() {
        let psi = random_pure::<f64>(6, 17).unwrap();
        let s = schmidt_decompose(&psi, &id(2, 3)).unwrap();
        let mut ev = eigvalsh(&oracle_trace_b(&psi.projector_matrix(), 2, 3));
        ev.reverse();
        for (a, b) in s.coefficients.iter().zip(&ev) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((s.reconstruct() - psi.amplitudes()).norm() < 1e-10);
        assert!((s.coefficients.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(s.coefficients.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn schmidt_phase_convention() {
        let psi = random_pure::<f64>(8, 5).unwrap();
        let s = schmidt_decompose(&psi, &id(2, 4)).unwrap();
        for u in &s.left_vectors {
            let z = u[leading_index(u)];
            assert!(z.im.abs() < 1e-14 && z.re > 0.0);
        }
    }

    #[test]
    fn partial_trace_examples() {
        let rho = bell_state::<f64>(BellLabel::PhiPlus).projector();
        let a = partial_trace(&rho, &id(2, 2), Side::A).unwrap();
        assert!((a.matrix() - CMatrix::identity(2, 2) * creal(0.5)).norm() < 1e-15);

        let ra = random_density::<f64>(2, 2, 1).unwrap();
        let rb = random_density::<f64>(3, 3, 2).unwrap();
        let prod = DensityMatrix::product(&ra, &rb);
        let back = partial_trace(&prod, &id(2, 3), Side::A).unwrap();
        assert!((back.matrix() - ra.matrix()).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_matches_oracles() {
        let rho = random_density::<f64>(6, 3, 9).unwrap();
        let a = partial_trace(&rho, &id(2, 3), Side::A).unwrap();
        let b = partial_trace(&rho, &id(2, 3), Side::B).unwrap();
        let oa = oracle_trace_b(rho.matrix(), 2, 3);
        let ob = oracle_trace_a(rho.matrix(), 2, 3);
        assert!(a.matrix().iter().zip(oa.iter()).all(|(x, y)| (x - y).norm() < 1e-12));
        assert!(b.matrix().iter().zip(ob.iter()).all(|(x, y)| (x - y).norm() < 1e-12));
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&DensityMatrix::<f64>::maximally_mixed(4).unwrap()) - 0.25).abs() < 1e-15);
        assert!((purity(&random_pure::<f64>(5, 1).unwrap().projector()) - 1.0).abs() < 1e-12);
        assert!((purity(&DensityMatrix::<f64>::diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn negativity_examples() {
        let mixed = DensityMatrix::<f64>::maximally_mixed(4).unwrap();
        for seed in 0..5 {
            let frame = TpsFrame::new(f(2, 2), random_unitary(4, seed).unwrap()).unwrap();
            assert!(negativity(&mixed, &frame).unwrap() < 1e-12);
        }
        let bell = bell_state::<f64>(BellLabel::PhiPlus).projector();
        assert!((negativity(&bell, &id(2, 2)).unwrap() - 0.5).abs() < 1e-12);
        let prod =
            DensityMatrix::product(&random_density::<f64>(2, 2, 3).unwrap(), &random_density::<f64>(2, 2, 4).unwrap());
        assert!(negativity(&prod, &id(2, 2)).unwrap() < 1e-12);
    }

    #[test]
    fn entropy_clipping() {
        assert_eq!(spectrum_entropy(&[1.0, -5e-11]).unwrap(), 0.0);
        assert!(spectrum_entropy(&[1.0, -1e-9]).is_err());
    }

    #[test]
    fn frame_covariance_of_entropy() {
        let psi = random_pure::<f64>(6, 8).unwrap();
        let u = random_unitary::<f64>(6, 9).unwrap();
        let frame = TpsFrame::new(f(2, 3), u).unwrap();
        let direct = entanglement_entropy(&psi, &frame).unwrap();
        let moved = psi.apply_frame(&frame).unwrap();
        let via = entanglement_entropy(&moved, &id(2, 3)).unwrap();
        assert!((direct - via).abs() < 1e-12);
    }

    #[test]
    fn operator_schmidt_ranks() {
        let c = |x: f64| creal(x);
        let cnot = CMatrix::<f64>::from_row_slice(
            4,
            4,
            &[
                c(1.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(1.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(1.),
                c(0.),
                c(0.),
                c(1.),
                c(0.),
            ],
        );
        let swap = CMatrix::<f64>::from_row_slice(
            4,
            4,
            &[
                c(1.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(1.),
                c(0.),
                c(0.),
                c(1.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(0.),
                c(1.),
            ],
        );
        assert_eq!(operator_schmidt_rank(&cnot, f(2, 2), 1e-10).unwrap(), 2);
        assert_eq!(operator_schmidt_rank(&swap, f(2, 2), 1e-10).unwrap(), 4);
        let prod = random_unitary::<f64>(2, 1).unwrap().kronecker(&random_unitary::<f64>(3, 2).unwrap());
        assert_eq!(operator_schmidt_rank(&prod, f(2, 3), 1e-10).unwrap(), 1);
        assert!(operator_schmidt_rank(&cnot, f(2, 3), 1e-10).is_err());
    }

    #[test]
    fn measures_reject_dimension_mismatch() {
        let rho = DensityMatrix::<f64>::maximally_mixed(6).unwrap();
        assert!(partial_trace(&rho, &id(2, 2), Side::A).is_err());
        assert!(negativity(&rho, &id(2, 2)).is_err());
        assert!(schmidt_decompose(&random_pure::<f64>(6, 1).unwrap(), &id(2, 2)).is_err());
    }
}
