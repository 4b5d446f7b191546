//! Scalar abstraction shared by every module.
//!
//! All numerical code is written against [`Real`], which both `f32` and `f64`
//! implement. Tolerances are given in `f64` terms and widened to a small
//! multiple of machine epsilon when the scalar is less precise.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the library: `f32` or `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync {
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// A tolerance no tighter than what the scalar can resolve.
    fn tol(requested: f64) -> Self {
        let eps = Self::default_epsilon().to_f64().unwrap_or(f64::EPSILON);
        Self::lit(requested.max(64.0 * eps))
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor_tracks_precision() {
        assert_eq!(<f64 as Real>::tol(1e-10), 1e-10);
        assert!(<f32 as Real>::tol(1e-12) > 1e-6);
    }
}
