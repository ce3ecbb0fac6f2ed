//! One-dimensional numerical helpers: cumulative Simpson quadrature,
//! fourth-order nodal derivatives, cubic Hermite splines (with an optional
//! monotonicity limiter) and local cubic Lagrange interpolation.

use crate::algebra::FieldValue;
use crate::{Error, Result};

/// Cumulative composite Simpson integral of equally spaced samples, starting
/// at zero.
///
/// Even nodes carry the classical composite rule; odd nodes add the
/// quadratic-through-three-points integral over a single interval, so the
/// running integral is fourth-order accurate at every node.
pub fn cumulative_simpson(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut res = vec![0.0; n];
    if n < 2 {
        return res;
    }
    if n == 2 {
        res[1] = 0.5 * h * (y[0] + y[1]);
        return res;
    }
    for i in 1..(n + 1) / 2 {
        let (a, b, c) = (y[2 * i - 2], y[2 * i - 1], y[2 * i]);
        res[2 * i - 1] = res[2 * i - 2] + h / 12.0 * (5.0 * a + 8.0 * b - c);
        res[2 * i] = res[2 * i - 1] + h / 12.0 * (5.0 * c + 8.0 * b - a);
    }
    if n % 2 == 0 {
        let (a, b, c) = (y[n - 3], y[n - 2], y[n - 1]);
        res[n - 1] = res[n - 2] + h / 12.0 * (5.0 * c + 8.0 * b - a);
    }
    res
}

/// Nodal first derivative of equally spaced samples, fourth order at every
/// node (five-point stencils, one-sided near the ends).
pub fn derivative4(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 5 {
        return Err(Error::InvalidInput(format!(
            "fourth-order derivative needs at least 5 samples, got {n}"
        )));
    }
    let s = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    d[0] = s * (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]);
    d[1] = s * (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]);
    for i in 2..n - 2 {
        d[i] = s * (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]);
    }
    let m = n - 1;
    d[m] = -s * (-25.0 * y[m] + 48.0 * y[m - 1] - 36.0 * y[m - 2] + 16.0 * y[m - 3] - 3.0 * y[m - 4]);
    d[m - 1] = -s * (-3.0 * y[m] - 10.0 * y[m - 1] + 18.0 * y[m - 2] - 6.0 * y[m - 3] + y[m - 4]);
    Ok(d)
}

/// Shape-preserving slopes for piecewise cubic Hermite interpolation of
/// arbitrary data (weighted harmonic mean of adjacent secants).
pub fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 2 {
        let s = (y[1] - y[0]) / (x[1] - x[0]);
        return vec![s, s];
    }
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end = |h0: f64, h1: f64, m0: f64, m1: f64| {
        let mut d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if d.signum() != m0.signum() {
            d = 0.0;
        } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
            d = 3.0 * m0;
        }
        d
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// Piecewise cubic Hermite interpolant through `(knots[i], values[i])` with
/// prescribed nodal slopes.
#[derive(Debug, Clone)]
pub struct HermiteSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    uniform: Option<(f64, f64)>,
}

impl HermiteSpline {
    pub fn new(knots: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() || knots.len() != slopes.len() {
            return Err(Error::InvalidInput(
                "spline needs at least two knots with matching values and slopes".into(),
            ));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("spline knots must increase strictly".into()));
        }
        Ok(HermiteSpline {
            knots,
            values,
            slopes,
            uniform: None,
        })
    }

    /// Spline on the uniform knots `x0 + i h`.
    pub fn uniform(x0: f64, h: f64, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        let knots = (0..values.len()).map(|i| x0 + h * i as f64).collect();
        let mut s = Self::new(knots, values, slopes)?;
        s.uniform = Some((x0, h));
        Ok(s)
    }

    /// Fritsch-Carlson limiter: rescales slopes wherever the cubic on an
    /// interval could overshoot, so monotone data give a monotone spline.
    /// Smooth, well-resolved data are left untouched.
    pub fn monotone(mut self) -> Self {
        let n = self.knots.len();
        for k in 0..n - 1 {
            let delta = (self.values[k + 1] - self.values[k]) / (self.knots[k + 1] - self.knots[k]);
            if delta == 0.0 {
                self.slopes[k] = 0.0;
                self.slopes[k + 1] = 0.0;
                continue;
            }
            let mut a = self.slopes[k] / delta;
            let mut b = self.slopes[k + 1] / delta;
            if a < 0.0 {
                a = 0.0;
            }
            if b < 0.0 {
                b = 0.0;
            }
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                a *= tau;
                b *= tau;
            }
            self.slopes[k] = a * delta;
            self.slopes[k + 1] = b * delta;
        }
        self
    }

    pub fn lo(&self) -> f64 {
        self.knots[0]
    }

    pub fn hi(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn locate(&self, x: f64) -> Result<usize> {
        let (lo, hi) = (self.lo(), self.hi());
        let slack = 1e-12 * (hi - lo).abs().max(1.0);
        if !(x >= lo - slack && x <= hi + slack) {
            return Err(Error::OutOfDomain { value: x, lo, hi });
        }
        let last = self.knots.len() - 2;
        let k = match self.uniform {
            Some((x0, h)) => (((x - x0) / h).floor().max(0.0) as usize).min(last),
            None => self.knots.partition_point(|&k| k <= x).saturating_sub(1).min(last),
        };
        Ok(k)
    }

    fn local(&self, k: usize, x: f64) -> (f64, f64) {
        let h = self.knots[k + 1] - self.knots[k];
        (h, (x - self.knots[k]) / h)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let k = self.locate(x)?;
        let (h, s) = self.local(k, x);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Ok(h00 * self.values[k]
            + h10 * h * self.slopes[k]
            + h01 * self.values[k + 1]
            + h11 * h * self.slopes[k + 1])
    }

    pub fn eval_derivative(&self, x: f64) -> Result<f64> {
        let k = self.locate(x)?;
        let (h, s) = self.local(k, x);
        let s2 = s * s;
        let d00 = (6.0 * s2 - 6.0 * s) / h;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = (-6.0 * s2 + 6.0 * s) / h;
        let d11 = 3.0 * s2 - 2.0 * s;
        Ok(d00 * self.values[k]
            + d10 * self.slopes[k]
            + d01 * self.values[k + 1]
            + d11 * self.slopes[k + 1])
    }
}

/// Local cubic Lagrange interpolation of equally spaced samples
/// `value(i)` at `x0 + i h`, `i < n`.
pub fn lagrange_cubic<V: FieldValue>(
    x0: f64,
    h: f64,
    n: usize,
    value: impl Fn(usize) -> V,
    x: f64,
) -> Result<V> {
    let hi = x0 + h * (n - 1) as f64;
    let slack = 1e-12 * (hi - x0).abs().max(1.0);
    if n < 4 || !(x >= x0 - slack && x <= hi + slack) {
        return Err(Error::OutOfDomain { value: x, lo: x0, hi });
    }
    let s = (x - x0) / h;
    let start = (s.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
    let mut acc = V::default();
    for a in 0..4 {
        let mut w = 1.0;
        for b in 0..4 {
            if a != b {
                w *= (s - (start + b) as f64) / (a as f64 - b as f64);
            }
        }
        acc = acc + value(start + a) * w;
    }
    Ok(acc)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_exactness() {
        let h = 0.1;
        for n in [3usize, 4, 7, 10] {
            let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(3)).collect();
            let c = cumulative_simpson(&y, h);
            for (i, v) in c.iter().enumerate().step_by(2) {
                let x = i as f64 * h;
                assert!((v - x.powi(4) / 4.0).abs() < 1e-14, "n={n} i={i}");
            }
            let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(2)).collect();
            let c = cumulative_simpson(&y, h);
            for (i, v) in c.iter().enumerate() {
                let x = i as f64 * h;
                assert!((v - x.powi(3) / 3.0).abs() < 1e-14, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn simpson_fourth_order() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).exp()).collect();
            let c = cumulative_simpson(&y, h);
            c.iter()
                .enumerate()
                .map(|(i, v)| (v - ((i as f64 * h).exp() - 1.0)).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(41) / err(81);
        assert!(ratio > 14.0, "ratio {ratio}");
    }

    #[test]
    fn derivative4_exact_on_quartics() {
        let h = 0.25;
        let y: Vec<f64> = (0..9).map(|i| (i as f64 * h).powi(4) - 2.0 * (i as f64 * h)).collect();
        let d = derivative4(&y, h).unwrap();
        for (i, v) in d.iter().enumerate() {
            let x = i as f64 * h;
            assert!((v - (4.0 * x.powi(3) - 2.0)).abs() < 1e-11, "i={i}");
        }
        assert!(derivative4(&y[..4], h).is_err());
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let f = |x: f64| x * x * x - x;
        let df = |x: f64| 3.0 * x * x - 1.0;
        let knots: Vec<f64> = vec![0.0, 0.3, 0.7, 1.5];
        let s = HermiteSpline::new(
            knots.clone(),
            knots.iter().map(|&x| f(x)).collect(),
            knots.iter().map(|&x| df(x)).collect(),
        )
        .unwrap();
        for x in [0.0, 0.1, 0.5, 1.2, 1.5] {
            assert!((s.eval(x).unwrap() - f(x)).abs() < 1e-13);
            assert!((s.eval_derivative(x).unwrap() - df(x)).abs() < 1e-12);
        }
        assert!(matches!(s.eval(1.6), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn monotone_limiter_prevents_overshoot() {
        let s = HermiteSpline::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 1.01], vec![5.0, 5.0, 5.0])
            .unwrap()
            .monotone();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=200 {
            let v = s.eval(i as f64 / 100.0).unwrap();
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn pchip_preserves_monotone_data() {
        let x = vec![0.0, 0.5, 1.0, 3.0, 4.0];
        let y = vec![1.0, 1.1, 3.0, 3.05, 7.0];
        let d = pchip_slopes(&x, &y);
        assert!(d.iter().all(|&v| v >= 0.0));
        let s = HermiteSpline::new(x, y, d).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=400 {
            let v = s.eval(i as f64 / 100.0).unwrap();
            assert!(v >= prev - 1e-14);
            prev = v;
        }
    }

    #[test]
    fn lagrange_exact_on_cubics() {
        let f = |x: f64| 2.0 * x.powi(3) - x + 0.5;
        let (x0, h, n) = (-1.0, 0.2, 11);
        for x in [-1.0, -0.93, 0.0, 0.41, 1.0] {
            let v = lagrange_cubic(x0, h, n, |i| f(x0 + h * i as f64), x).unwrap();
            assert!((v - f(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
