use super::{FieldValue, HyperbolicUnit, ZERO_DIVISOR_TOL};
use crate::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Split-complex number `u + v j`, `j² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hyperbolic {
    pub u: f64,
    pub v: f64,
}

impl Hyperbolic {
    pub const ZERO: Hyperbolic = Hyperbolic { u: 0.0, v: 0.0 };
    pub const ONE: Hyperbolic = Hyperbolic { u: 1.0, v: 0.0 };
    pub const J: Hyperbolic = Hyperbolic { u: 0.0, v: 1.0 };

    pub const fn new(u: f64, v: f64) -> Self {
        Hyperbolic { u, v }
    }

    /// `u - v j`.
    pub fn conj(self) -> Self {
        Hyperbolic::new(self.u, -self.v)
    }

    /// `(u + vj)(u - vj) = u² - v²`.
    pub fn modulus_sqr(self) -> f64 {
        self.u * self.u - self.v * self.v
    }

    pub fn is_zero_divisor(self) -> bool {
        self.modulus_sqr().abs() < ZERO_DIVISOR_TOL * (1.0 + self.u * self.u + self.v * self.v)
    }

    pub fn inverse(self) -> Result<Self> {
        if self.is_zero_divisor() {
            return Err(Error::ZeroDivisor {
                norm: self.modulus_sqr().abs(),
            });
        }
        let m = self.modulus_sqr();
        Ok(Hyperbolic::new(self.u / m, -self.v / m))
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Hyperbolic::ONE, |acc, _| acc * self)
    }
}

impl Add for Hyperbolic {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Hyperbolic::new(self.u + rhs.u, self.v + rhs.v)
    }
}

impl Sub for Hyperbolic {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Hyperbolic::new(self.u - rhs.u, self.v - rhs.v)
    }
}

impl Neg for Hyperbolic {
    type Output = Self;

    fn neg(self) -> Self {
        Hyperbolic::new(-self.u, -self.v)
    }
}

impl Mul for Hyperbolic {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Hyperbolic::new(
            self.u * rhs.u + self.v * rhs.v,
            self.u * rhs.v + self.v * rhs.u,
        )
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Hyperbolic::new(self.u * rhs, self.v * rhs)
    }
}

impl Mul<Hyperbolic> for f64 {
    type Output = Hyperbolic;

    fn mul(self, rhs: Hyperbolic) -> Hyperbolic {
        rhs * self
    }
}

impl FieldValue for Hyperbolic {
    fn norm(&self) -> f64 {
        self.u.hypot(self.v)
    }

    fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }
}

impl HyperbolicUnit for Hyperbolic {
    fn mul_j(self) -> Self {
        Hyperbolic::new(self.v, self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_and_zero_divisors() {
        assert_eq!(Hyperbolic::J * Hyperbolic::J, Hyperbolic::ONE);
        let p = Hyperbolic::new(1.0, 1.0);
        let q = Hyperbolic::new(1.0, -1.0);
        assert_eq!(p * q, Hyperbolic::ZERO);
        assert!(matches!(p.inverse(), Err(Error::ZeroDivisor { .. })));
        assert_eq!(Hyperbolic::new(2.0, 0.0).inverse().unwrap(), Hyperbolic::new(0.5, 0.0));
    }

    proptest! {
        #[test]
        fn conjugate_product_is_real(u in -5.0f64..5.0, v in -5.0f64..5.0) {
            let z = Hyperbolic::new(u, v);
            let p = z * z.conj();
            prop_assert_eq!(p.v, 0.0);
            prop_assert!((p.u - (u * u - v * v)).abs() <= 1e-12 * (1.0 + u * u + v * v));
        }

        #[test]
        fn commutative(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0) {
            let p = Hyperbolic::new(a, b);
            let q = Hyperbolic::new(c, d);
            prop_assert_eq!(p * q, q * p);
        }
    }
}
