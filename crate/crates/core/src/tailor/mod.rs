//! Tailored observables: frames and subalgebras that give a known pure state
//! any Schmidt spectrum, plus the algebraic checks for an induced tensor
//! product structure.
//!
//! Local accessibility is a physical criterion and is not evaluated here.

mod frame;
mod subalgebra;

pub use frame::{max_frame, min_frame, tailor_frame, TargetSpectrum};
pub use subalgebra::{
    check_zanardi, conjugate_subalgebra, gell_mann_basis, subalgebra_generators, SubalgebraBasis, ZanardiReport,
};
