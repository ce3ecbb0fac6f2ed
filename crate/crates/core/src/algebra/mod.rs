//! Closed-form arithmetic for the algebras used throughout the crate.
//!
//! * [`Biquaternion`]: complex quaternions `q0 + q1 e1 + q2 e2 + q3 e3` with
//!   complex `q_k`. Non-commutative, has zero divisors such as `1 + i e1`.
//! * [`Hyperbolic`]: split-complex numbers `u + v j` with `j² = +1`.
//! * [`Bicomplex`]: the commutative algebra spanned by `{1, i, e1, i e1}`,
//!   which carries the one-dimensional Maxwell reduction.

mod bicomplex;
mod biquaternion;
mod hyperbolic;

pub use bicomplex::{split as bicomplex_split, Bicomplex};
pub use biquaternion::{right_mul, Biquaternion, RightMul};
pub use hyperbolic::Hyperbolic;

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Relative threshold used by every invertibility test in the crate.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

/// Values that can be sampled on a grid and differenced: a real vector space
/// with a norm.
pub trait FieldValue:
    Copy
    + Default
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn norm(&self) -> f64;

    fn is_finite(&self) -> bool;
}

/// Algebras that contain a hyperbolic unit `j` with `j² = 1`.
pub trait HyperbolicUnit: FieldValue {
    fn mul_j(self) -> Self;
}

impl FieldValue for f64 {
    fn norm(&self) -> f64 {
        self.abs()
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl FieldValue for Complex64 {
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }

    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}
