use std::fmt;

use crate::error::{Error, Result};
use crate::findim::{Side, TpsFrame};
use crate::linalg::{hermiticity_defect, identity, rank_relative, unitarity_defect, CMatrix};
use crate::num::{cplx, creal, Real};

/// Hermitian generators spanning one virtual subsystem's observable algebra,
/// expressed in the native basis.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis<T: Real> {
    pub side: Side,
    pub frame: TpsFrame<T>,
    generators: Vec<CMatrix<T>>,
}

impl<T: Real> SubalgebraBasis<T> {
    /// Arbitrary generator set (used for degenerate or hand-built algebras).
    pub fn from_generators(frame: TpsFrame<T>, side: Side, generators: Vec<CMatrix<T>>) -> Result<Self> {
        let d = frame.dim();
        for g in &generators {
            if g.nrows() != d || g.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.nrows() });
            }
            let dev = hermiticity_defect(g);
            if dev > T::tol(1e-10) {
                return Err(Error::NotHermitian(dev.as_f64()));
            }
        }
        Ok(Self { side, frame, generators })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn generators(&self) -> &[CMatrix<T>] {
        &self.generators
    }
}

/// Identity followed by the generalized Gell-Mann matrices of `𝕄ᵏ`:
/// symmetric, antisymmetric, then diagonal. For `k = 2` this is
/// `{𝕀, σₓ, σ_y, σ_z}`.
pub fn gell_mann_basis<T: Real>(k: usize) -> Vec<CMatrix<T>> {
    let mut out = Vec::with_capacity(k * k);
    out.push(identity(k));
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (j + 1..k).map(move |l| (j, l))).collect();
    for &(j, l) in &pairs {
        let mut m = CMatrix::zeros(k, k);
        m[(j, l)] = creal(T::one());
        m[(l, j)] = creal(T::one());
        out.push(m);
    }
    for &(j, l) in &pairs {
        let mut m = CMatrix::zeros(k, k);
        m[(j, l)] = cplx(T::zero(), -T::one());
        m[(l, j)] = cplx(T::zero(), T::one());
        out.push(m);
    }
    for n in 1..k {
        let nf = T::from_usize(n).unwrap();
        let scale = (T::lit(2.0) / (nf * (nf + T::one()))).sqrt();
        let mut m = CMatrix::zeros(k, k);
        for j in 0..n {
            m[(j, j)] = creal(scale);
        }
        m[(n, n)] = creal(-scale * nf);
        out.push(m);
    }
    out
}

/// Full Hermitian basis of one factor, embedded as `G ⊗ 𝕀` (side A) or
/// `𝕀 ⊗ G` (side B), then pulled back into the native basis by `U†(·)U`.
pub fn subalgebra_generators<T: Real>(frame: &TpsFrame<T>, side: Side) -> SubalgebraBasis<T> {
    let (k1, k2) = frame.factorization().factors();
    let generators = match side {
        Side::A => gell_mann_basis::<T>(k1)
            .iter()
            .map(|g| frame.pull_back_operator(&g.kronecker(&identity::<T>(k2))))
            .collect(),
        Side::B => {
            gell_mann_basis::<T>(k2).iter().map(|g| frame.pull_back_operator(&identity::<T>(k1).kronecker(g))).collect()
        }
    };
    SubalgebraBasis { side, frame: frame.clone(), generators }
}

/// Outcome of the two algebraic tensor-product criteria.
#[derive(Debug, Clone, PartialEq)]
pub struct ZanardiReport {
    pub independent: bool,
    pub max_commutator_norm: f64,
    pub complete: bool,
    pub span_dimension: usize,
    pub full_dimension: usize,
}

impl ZanardiReport {
    pub fn induces_tps(&self) -> bool {
        self.independent && self.complete
    }
}

impl fmt::Display for ZanardiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "independence={} max_commutator_norm={:e}", self.independent, self.max_commutator_norm)?;
        writeln!(f, "completeness={} span_dimension={}/{}", self.complete, self.span_dimension, self.full_dimension)?;
        write!(f, "local_accessibility=not_evaluated (physical criterion)")
    }
}

/// Subsystem independence (`‖[Aᵢ, Bⱼ]‖_F < 1e-8` for all pairs) and
/// completeness (the products `AᵢBⱼ` span all `d²` operators, rank taken
/// with relative singular value threshold 1e-8).
pub fn check_zanardi<T: Real>(gens_a: &SubalgebraBasis<T>, gens_b: &SubalgebraBasis<T>) -> Result<ZanardiReport> {
    let d = gens_a.dim();
    if gens_b.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: gens_b.dim() });
    }
    let mut max_comm = T::zero();
    let mut columns = Vec::with_capacity(gens_a.generators.len() * gens_b.generators.len());
    for a in &gens_a.generators {
        for b in &gens_b.generators {
            let ab = a * b;
            let ba = b * a;
            max_comm = max_comm.max((&ab - &ba).norm());
            columns.push(ab);
        }
    }
    let span = CMatrix::from_fn(d * d, columns.len(), |r, c| columns[c][(r / d, r % d)]);
    let span_dimension = rank_relative(&span, T::lit(1e-8));
    Ok(ZanardiReport {
        independent: max_comm < T::lit(1e-8),
        max_commutator_norm: max_comm.as_f64(),
        complete: span_dimension == d * d,
        span_dimension,
        full_dimension: d * d,
    })
}

/// `G ↦ V G V†` for every generator. The recorded frame becomes `U V†`,
/// which is the frame that induces the conjugated algebra.
pub fn conjugate_subalgebra<T: Real>(gens: &SubalgebraBasis<T>, v: &CMatrix<T>) -> Result<SubalgebraBasis<T>> {
    let d = gens.dim();
    if v.nrows() != d || v.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: v.nrows() });
    }
    let defect = unitarity_defect(v);
    if defect > T::tol(1e-8) {
        return Err(Error::NotUnitary(defect.as_f64()));
    }
    let v_adj = v.adjoint();
    let generators = gens.generators.iter().map(|g| v * g * &v_adj).collect();
    Ok(SubalgebraBasis { side: gens.side, frame: gens.frame.then(&v_adj)?, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{operator_schmidt_rank, Factorization};
    use crate::random::random_unitary;

    fn f22() -> Factorization {
        Factorization::new(2, 2).unwrap()
    }

    fn paulis() -> Vec<CMatrix<f64>> {
        let c = |re: f64, im: f64| cplx(re, im);
        vec![
            CMatrix::identity(2, 2),
            CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
        ]
    }

    #[test]
    fn identity_frame_gives_pauli_embeddings() {
        let frame = TpsFrame::<f64>::identity(f22());
        let a = subalgebra_generators(&frame, Side::A);
        let b = subalgebra_generators(&frame, Side::B);
        let i2 = CMatrix::<f64>::identity(2, 2);
        for (g, p) in a.generators().iter().zip(paulis()) {
            assert!((g - p.kronecker(&i2)).norm() < 1e-15);
        }
        for (g, p) in b.generators().iter().zip(paulis()) {
            assert!((g - i2.kronecker(&p)).norm() < 1e-15);
        }
    }

    #[test]
    fn gell_mann_is_orthogonal_hermitian_basis() {
        for k in 2..5 {
            let basis = gell_mann_basis::<f64>(k);
            assert_eq!(basis.len(), k * k);
            for (i, x) in basis.iter().enumerate() {
                assert!(hermiticity_defect(x) < 1e-15);
                for y in &basis[i + 1..] {
                    assert!((x.adjoint() * y).trace().norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn generators_hermitian_in_any_frame() {
        let frame = TpsFrame::<f64>::new(Factorization::new(2, 3).unwrap(), random_unitary(6, 4).unwrap()).unwrap();
        for side in [Side::A, Side::B] {
            for g in subalgebra_generators(&frame, side).generators() {
                assert!(hermiticity_defect(g) < 1e-12);
            }
        }
    }

    #[test]
    fn pauli_pair_passes_and_same_side_fails() {
        let frame = TpsFrame::<f64>::identity(f22());
        let a = subalgebra_generators(&frame, Side::A);
        let b = subalgebra_generators(&frame, Side::B);
        let r = check_zanardi(&a, &b).unwrap();
        assert!(r.independent && r.complete && r.span_dimension == 16);
        let same = check_zanardi(&a, &a).unwrap();
        assert!(!same.independent);
    }

    #[test]
    fn trivial_algebras_are_incomplete() {
        let frame = TpsFrame::<f64>::identity(f22());
        let a = SubalgebraBasis::from_generators(frame.clone(), Side::A, vec![CMatrix::identity(4, 4)]).unwrap();
        let b = SubalgebraBasis::from_generators(frame, Side::B, vec![CMatrix::identity(4, 4)]).unwrap();
        let r = check_zanardi(&a, &b).unwrap();
        assert!(r.independent && !r.complete);
        assert_eq!(r.span_dimension, 1);
    }

    #[test]
    fn conjugation_preserves_report() {
        let frame = TpsFrame::<f64>::identity(f22());
        let a = subalgebra_generators(&frame, Side::A);
        let b = subalgebra_generators(&frame, Side::B);
        let base = check_zanardi(&a, &b).unwrap();
        let same_id = conjugate_subalgebra(&a, &CMatrix::identity(4, 4)).unwrap();
        for (x, y) in same_id.generators().iter().zip(a.generators()) {
            assert!((x - y).norm() < 1e-15);
        }
        for seed in 0..5 {
            let u = random_unitary::<f64>(4, seed).unwrap();
            let r =
                check_zanardi(&conjugate_subalgebra(&a, &u).unwrap(), &conjugate_subalgebra(&b, &u).unwrap()).unwrap();
            assert_eq!(
                (r.independent, r.complete, r.span_dimension),
                (base.independent, base.complete, base.span_dimension)
            );
        }
    }

    #[test]
    fn conjugated_frame_reproduces_generators() {
        let frame = TpsFrame::<f64>::identity(f22());
        let a = subalgebra_generators(&frame, Side::A);
        let u = random_unitary::<f64>(4, 8).unwrap();
        let conj = conjugate_subalgebra(&a, &u).unwrap();
        let rebuilt = subalgebra_generators(&conj.frame, Side::A);
        for (x, y) in conj.generators().iter().zip(rebuilt.generators()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn cnot_moves_generators_out_of_the_local_algebra() {
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
        let a = subalgebra_generators(&TpsFrame::<f64>::identity(f22()), Side::A);
        let conj = conjugate_subalgebra(&a, &cnot).unwrap();
        // CNOT is Clifford: σₓ⊗𝕀 ↦ σₓ⊗σₓ is still a single product term...
        let x_image = &conj.generators()[1];
        let expected = paulis()[1].kronecker(&paulis()[1]);
        assert!((x_image - expected).norm() < 1e-14);
        assert_eq!(operator_schmidt_rank(x_image, f22(), 1e-10).unwrap(), 1);
        // ...but it no longer lies in span{G ⊗ 𝕀}: it has a non-identity B factor.
        let b = subalgebra_generators(&TpsFrame::<f64>::identity(f22()), Side::B);
        let r = check_zanardi(&conj, &b).unwrap();
        assert!(!r.independent);
        // A non-Clifford entangling unitary produces genuinely non-product generators.
        let u = random_unitary::<f64>(4, 12).unwrap();
        let conj = conjugate_subalgebra(&a, &u).unwrap();
        let max_rank = conj.generators().iter().map(|g| operator_schmidt_rank(g, f22(), 1e-10).unwrap()).max().unwrap();
        assert!(max_rank > 1);
    }

    #[test]
    fn rejects_non_unitary() {
        let a = subalgebra_generators(&TpsFrame::<f64>::identity(f22()), Side::A);
        let m = CMatrix::identity(4, 4) * creal(2.0);
        assert!(matches!(conjugate_subalgebra(&a, &m), Err(Error::NotUnitary(_))));
    }
}
