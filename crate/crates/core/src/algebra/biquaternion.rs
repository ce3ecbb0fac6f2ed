use super::{FieldValue, ZERO_DIVISOR_TOL};
use crate::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A complex quaternion `q0 + q1 e1 + q2 e2 + q3 e3`.
///
/// The units satisfy `e1 e2 = e3`, `e2 e3 = e1`, `e3 e1 = e2` and
/// `e_k² = -1`; the complex unit `i` commutes with all of them.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquaternion {
    pub q: [Complex64; 4],
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Biquaternion {
    pub const ZERO: Biquaternion = Biquaternion { q: [ZERO; 4] };
    pub const ONE: Biquaternion = Biquaternion {
        q: [ONE, ZERO, ZERO, ZERO],
    };

    pub const fn new(q0: Complex64, q1: Complex64, q2: Complex64, q3: Complex64) -> Self {
        Biquaternion {
            q: [q0, q1, q2, q3],
        }
    }

    /// The basis unit `e_k`, `k = 0..=3` (`e_0 = 1`).
    pub fn unit(k: usize) -> Self {
        assert!(k < 4, "basis index {k} out of range");
        let mut q = [ZERO; 4];
        q[k] = ONE;
        Biquaternion { q }
    }

    pub fn scalar(s: Complex64) -> Self {
        Biquaternion {
            q: [s, ZERO, ZERO, ZERO],
        }
    }

    pub fn real(s: f64) -> Self {
        Self::scalar(Complex64::new(s, 0.0))
    }

    /// Purely vectorial element `v1 e1 + v2 e2 + v3 e3`.
    pub fn vector(v: [Complex64; 3]) -> Self {
        Biquaternion {
            q: [ZERO, v[0], v[1], v[2]],
        }
    }

    pub fn from_real(r: [f64; 4]) -> Self {
        Biquaternion {
            q: r.map(|x| Complex64::new(x, 0.0)),
        }
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.q[0]
    }

    pub fn vector_part(&self) -> [Complex64; 3] {
        [self.q[1], self.q[2], self.q[3]]
    }

    /// Quaternionic conjugation `q0 - q`.
    pub fn conj(&self) -> Self {
        Biquaternion {
            q: [self.q[0], -self.q[1], -self.q[2], -self.q[3]],
        }
    }

    /// Complex conjugation of every component, `Re q - i Im q`.
    pub fn complex_conj(&self) -> Self {
        Biquaternion {
            q: self.q.map(|c| c.conj()),
        }
    }

    pub fn re(&self) -> [f64; 4] {
        self.q.map(|c| c.re)
    }

    pub fn im(&self) -> [f64; 4] {
        self.q.map(|c| c.im)
    }

    /// The complex scalar `q q̄ = q0² + q1² + q2² + q3²`.
    pub fn quadratic_form(&self) -> Complex64 {
        self.q.iter().map(|c| c * c).sum()
    }

    /// Sum of the squared moduli of the components.
    pub fn norm_sqr(&self) -> f64 {
        self.q.iter().map(|c| c.norm_sqr()).sum()
    }

    /// True when `|q q̄|` falls below the scale-invariant threshold.
    pub fn is_zero_divisor(&self) -> bool {
        self.quadratic_form().norm() < ZERO_DIVISOR_TOL * (1.0 + self.norm_sqr())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.quadratic_form();
        if self.is_zero_divisor() {
            return Err(Error::ZeroDivisor { norm: n.norm() });
        }
        let inv = 1.0 / n;
        Ok(self.conj().scale_complex(inv))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Biquaternion {
            q: self.q.map(|c| c * s),
        }
    }

    /// `M^p q = q p`.
    pub fn right_mul(&self, p: &Biquaternion) -> Self {
        *self * *p
    }

    pub fn max_abs_diff(&self, other: &Biquaternion) -> f64 {
        self.q
            .iter()
            .zip(other.q.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The right-multiplication operator `M^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightMul(pub Biquaternion);

impl RightMul {
    pub fn apply(&self, q: Biquaternion) -> Biquaternion {
        q * self.0
    }

    /// `M^p M^r = M^{r p}`.
    pub fn compose(&self, inner: &RightMul) -> RightMul {
        RightMul(inner.0 * self.0)
    }
}

pub fn right_mul(p: Biquaternion) -> RightMul {
    RightMul(p)
}

impl Add for Biquaternion {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Biquaternion {
            q: [
                self.q[0] + rhs.q[0],
                self.q[1] + rhs.q[1],
                self.q[2] + rhs.q[2],
                self.q[3] + rhs.q[3],
            ],
        }
    }
}

impl AddAssign for Biquaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Biquaternion {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Biquaternion {
            q: [
                self.q[0] - rhs.q[0],
                self.q[1] - rhs.q[1],
                self.q[2] - rhs.q[2],
                self.q[3] - rhs.q[3],
            ],
        }
    }
}

impl Neg for Biquaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Biquaternion {
            q: self.q.map(|c| -c),
        }
    }
}

impl Mul for Biquaternion {
    type Output = Self;

    // scalar: p0 q0 - p·q, vector: p0 q + q0 p + p × q
    fn mul(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = rhs.q;
        Biquaternion {
            q: [
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
                a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
            ],
        }
    }
}

impl Mul<f64> for Biquaternion {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Biquaternion {
            q: self.q.map(|c| c * rhs),
        }
    }
}

impl Mul<Complex64> for Biquaternion {
    type Output = Self;

    fn mul(self, rhs: Complex64) -> Self {
        self.scale_complex(rhs)
    }
}

impl Mul<Biquaternion> for Complex64 {
    type Output = Biquaternion;

    fn mul(self, rhs: Biquaternion) -> Biquaternion {
        rhs.scale_complex(self)
    }
}

impl Mul<Biquaternion> for f64 {
    type Output = Biquaternion;

    fn mul(self, rhs: Biquaternion) -> Biquaternion {
        rhs * self
    }
}

impl std::iter::Sum for Biquaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Biquaternion::ZERO, |a, b| a + b)
    }
}

impl FieldValue for Biquaternion {
    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn is_finite(&self) -> bool {
        self.q.iter().all(|c| c.is_finite())
    }
}
