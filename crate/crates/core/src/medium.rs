//! Stratified dielectric media: `ε = ε(x)`, constant `μ`.
//!
//! [`MediumTables`] holds every quantity of the one-dimensional reduction:
//! the wave speed `c = 1/√(εμ)`, refraction index `n = √(εμ)`, impedance
//! `Z = √(μ/ε)`, the antiderivative `N` of `n` (normalised by
//! `N(x_min) = 0`), the inverse change of variable `x(ξ)`, `C(ξ) = c(x(ξ))`
//! and `f = √C`.

use crate::numerics::{cumulative_simpson, derivative4, pchip_slopes, HermiteSpline};
use crate::{Error, Result};

/// Permittivity as a function of the stratification coordinate.
#[derive(Debug, Clone)]
pub enum Permittivity {
    Constant(f64),
    /// `scale · exp(rate · x)`
    Exp { scale: f64, rate: f64 },
    /// `scale · (x + shift)^power`
    Power { scale: f64, shift: f64, power: f64 },
    /// Tabulated samples, interpolated with shape-preserving cubics.
    Table(HermiteSpline),
}

impl Permittivity {
    pub fn table(x: Vec<f64>, eps: Vec<f64>) -> Result<Self> {
        if x.len() < 2 || x.len() != eps.len() {
            return Err(Error::InvalidInput(
                "permittivity table needs at least two (x, eps) pairs".into(),
            ));
        }
        if let Some((&xv, &ev)) = x.iter().zip(&eps).find(|(_, &e)| !(e > 0.0)) {
            return Err(Error::NonPositivePermittivity { x: xv, value: ev });
        }
        let slopes = pchip_slopes(&x, &eps);
        Ok(Permittivity::Table(HermiteSpline::new(x, eps, slopes)?))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match self {
            Permittivity::Constant(v) => *v,
            Permittivity::Exp { scale, rate } => scale * (rate * x).exp(),
            Permittivity::Power {
                scale,
                shift,
                power,
            } => scale * (x + shift).powf(*power),
            Permittivity::Table(s) => s.eval(x)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MediumProfile {
    pub x_range: (f64, f64),
    pub eps: Permittivity,
    pub mu: f64,
    /// Nodes of the quadrature grid in `x` (and of the uniform `ξ` grid).
    pub samples: usize,
}

impl MediumProfile {
    pub fn new(x_range: (f64, f64), eps: Permittivity, mu: f64, samples: usize) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::NonPositivePermeability(mu));
        }
        if !(x_range.1 > x_range.0) || !x_range.0.is_finite() || !x_range.1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "x range [{}, {}] is empty",
                x_range.0, x_range.1
            )));
        }
        if samples < 5 {
            return Err(Error::InvalidInput(format!(
                "medium needs at least 5 samples, got {samples}"
            )));
        }
        Ok(MediumProfile {
            x_range,
            eps,
            mu,
            samples,
        })
    }

    /// `ε ≡ 1`, `μ = 1`.
    pub fn vacuum(x_range: (f64, f64), samples: usize) -> Result<Self> {
        Self::new(x_range, Permittivity::Constant(1.0), 1.0, samples)
    }
}

#[derive(Debug, Clone)]
pub struct MediumTables {
    profile: MediumProfile,
    x: Vec<f64>,
    eps: Vec<f64>,
    c: Vec<f64>,
    n: Vec<f64>,
    z: Vec<f64>,
    big_n: Vec<f64>,
    xi_of_x: HermiteSpline,
    x_of_xi: HermiteSpline,
    c_spline: HermiteSpline,
    z_spline: HermiteSpline,
    xi_step: f64,
    f: Vec<f64>,
    f_prime: Vec<f64>,
    f_spline: HermiteSpline,
}

/// Sample the profile, integrate the refraction index and invert the change
/// of variable.
pub fn build_tables(profile: MediumProfile) -> Result<MediumTables> {
    let (a, b) = profile.x_range;
    let m = profile.samples;
    let hx = (b - a) / (m - 1) as f64;
    let x: Vec<f64> = (0..m).map(|i| if i + 1 == m { b } else { a + hx * i as f64 }).collect();
    let eps = x
        .iter()
        .map(|&xv| {
            let e = profile.eps.eval(xv)?;
            if !(e > 0.0) || !e.is_finite() {
                return Err(Error::NonPositivePermittivity { x: xv, value: e });
            }
            Ok(e)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mu = profile.mu;
    let n: Vec<f64> = eps.iter().map(|e| (e * mu).sqrt()).collect();
    let c: Vec<f64> = n.iter().map(|v| 1.0 / v).collect();
    let z: Vec<f64> = eps.iter().map(|e| (mu / e).sqrt()).collect();

    let big_n = cumulative_simpson(&n, hx);
    if let Some(k) = (1..m).find(|&k| !(big_n[k] > big_n[k - 1])) {
        return Err(Error::NonMonotone { x: x[k] });
    }

    let xi_of_x = HermiteSpline::uniform(a, hx, big_n.clone(), n.clone())?;
    // dx/dξ = 1/n = c
    let x_of_xi = HermiteSpline::new(big_n.clone(), x.clone(), c.clone())?.monotone();
    let c_spline = HermiteSpline::uniform(a, hx, c.clone(), derivative4(&c, hx)?)?;
    let z_spline = HermiteSpline::uniform(a, hx, z.clone(), derivative4(&z, hx)?)?;

    let xi_max = big_n[m - 1];
    let xi_step = xi_max / (m - 1) as f64;
    let f = (0..m)
        .map(|j| {
            let xi = if j + 1 == m { xi_max } else { xi_step * j as f64 };
            let xv = x_of_xi.eval(xi)?.clamp(a, b);
            Ok(1.0 / (profile.eps.eval(xv)? * mu).sqrt().sqrt())
        })
        .collect::<Result<Vec<f64>>>()?;
    let f_prime = derivative4(&f, xi_step)?;
    let f_spline = HermiteSpline::uniform(0.0, xi_step, f.clone(), f_prime.clone())?;

    Ok(MediumTables {
        profile,
        x,
        eps,
        c,
        n,
        z,
        big_n,
        xi_of_x,
        x_of_xi,
        c_spline,
        z_spline,
        xi_step,
        f,
        f_prime,
        f_spline,
    })
}

impl MediumTables {
    pub fn profile(&self) -> &MediumProfile {
        &self.profile
    }

    pub fn x_range(&self) -> (f64, f64) {
        self.profile.x_range
    }

    pub fn mu(&self) -> f64 {
        self.profile.mu
    }

    pub fn xi_max(&self) -> f64 {
        *self.big_n.last().unwrap()
    }

    /// Quadrature nodes and the sampled `ε, c, n, Z, N` on them.
    pub fn x_nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn eps_samples(&self) -> &[f64] {
        &self.eps
    }

    pub fn c_samples(&self) -> &[f64] {
        &self.c
    }

    pub fn n_samples(&self) -> &[f64] {
        &self.n
    }

    pub fn z_samples(&self) -> &[f64] {
        &self.z
    }

    pub fn antiderivative_samples(&self) -> &[f64] {
        &self.big_n
    }

    /// True when every sampled permittivity equals the first one.
    pub fn is_homogeneous(&self) -> bool {
        let e0 = self.eps[0];
        self.eps.iter().all(|e| (e - e0).abs() <= 1e-14 * e0)
    }

    fn check_x(&self, x: f64) -> Result<()> {
        let (a, b) = self.x_range();
        let slack = 1e-12 * (b - a);
        if !(x >= a - slack && x <= b + slack) {
            return Err(Error::OutOfDomain { value: x, lo: a, hi: b });
        }
        Ok(())
    }

    pub fn eps_at(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        self.profile.eps.eval(x)
    }

    pub fn c_at(&self, x: f64) -> Result<f64> {
        Ok(1.0 / (self.eps_at(x)? * self.mu()).sqrt())
    }

    pub fn n_at(&self, x: f64) -> Result<f64> {
        Ok((self.eps_at(x)? * self.mu()).sqrt())
    }

    pub fn z_at(&self, x: f64) -> Result<f64> {
        Ok((self.mu() / self.eps_at(x)?).sqrt())
    }

    /// `c′(x)` from the interpolant of the sampled wave speed.
    pub fn c_prime_at(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        self.c_spline.eval_derivative(x)
    }

    /// `c1(x) = c′(x) / (2 c(x))`, the only component of `grad√c / √c`.
    pub fn c_vector(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self.c_spline.eval_derivative(x)? / (2.0 * self.c_spline.eval(x)?))
    }

    /// `Z′(x) / (2 Z(x))`, the only component of `grad√Z / √Z`.
    pub fn z_vector(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self.z_spline.eval_derivative(x)? / (2.0 * self.z_spline.eval(x)?))
    }

    /// `ξ = N(x)`.
    pub fn xi_of_x(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        self.xi_of_x.eval(x)
    }

    /// Inverse change of variable `x(ξ)`.
    pub fn x_of_xi(&self, xi: f64) -> Result<f64> {
        self.x_of_xi.eval(xi)
    }

    /// `C(ξ) = c(x(ξ))`.
    pub fn big_c(&self, xi: f64) -> Result<f64> {
        let f = self.f(xi)?;
        Ok(f * f)
    }

    /// `f(ξ) = √C(ξ)`.
    pub fn f(&self, xi: f64) -> Result<f64> {
        self.f_spline.eval(xi)
    }

    /// `f′(ξ)`, by differentiating the interpolant.
    pub fn f_prime(&self, xi: f64) -> Result<f64> {
        self.f_spline.eval_derivative(xi)
    }

    /// Spacing of the uniform `ξ` grid carrying the `f` samples.
    pub fn xi_step(&self) -> f64 {
        self.xi_step
    }

    pub fn f_samples(&self) -> &[f64] {
        &self.f
    }

    pub fn f_prime_samples(&self) -> &[f64] {
        &self.f_prime
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_profile(samples: usize, x_max: f64) -> MediumTables {
        let p = MediumProfile::new(
            (0.0, x_max),
            Permittivity::Exp {
                scale: 1.0,
                rate: -2.0,
            },
            1.0,
            samples,
        )
        .unwrap();
        build_tables(p).unwrap()
    }

    #[test]
    fn vacuum_is_trivial() {
        let t = build_tables(MediumProfile::vacuum((0.0, 1.0), 101).unwrap()).unwrap();
        assert!(t.is_homogeneous());
        assert!((t.xi_max() - 1.0).abs() < 1e-14);
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((t.xi_of_x(x).unwrap() - x).abs() < 1e-14);
            assert!((t.x_of_xi(x).unwrap() - x).abs() < 1e-14);
            assert!((t.f(x).unwrap() - 1.0).abs() < 1e-14);
            assert!((t.big_c(x).unwrap() - 1.0).abs() < 1e-14);
            assert!(t.c_vector(x).unwrap().abs() < 1e-12);
            assert_eq!(t.c_at(x).unwrap(), 1.0);
            assert_eq!(t.n_at(x).unwrap(), 1.0);
        }
    }

    #[test]
    fn exponential_profile_closed_form() {
        // n = e^{-x}, N = 1 - e^{-x}, x(ξ) = -ln(1-ξ), C = 1/(1-ξ), f = (1-ξ)^{-1/2}
        let t = exp_profile(2001, 1.0);
        assert!((t.xi_max() - (1.0 - (-1.0f64).exp())).abs() < 1e-13);
        for i in 0..=37 {
            let x = i as f64 / 37.0;
            assert!((t.xi_of_x(x).unwrap() - (1.0 - (-x).exp())).abs() < 1e-13);
            assert!((t.c_vector(x).unwrap() - 0.5).abs() < 1e-9);
            let xi = t.xi_max() * i as f64 / 37.0;
            assert!((t.x_of_xi(xi).unwrap() + (1.0 - xi).ln()).abs() < 1e-12);
            assert!((t.big_c(xi).unwrap() - 1.0 / (1.0 - xi)).abs() < 1e-11);
            assert!((t.f(xi).unwrap() - (1.0 - xi).powf(-0.5)).abs() < 1e-12);
            assert!((t.f_prime(xi).unwrap() - 0.5 * (1.0 - xi).powf(-1.5)).abs() < 1e-9);
        }
    }

    #[test]
    fn power_profile_closed_form() {
        // ε = (x+1)^{-4}: c = (x+1)², ξ = 1 - 1/(x+1), f(ξ) = 1/(1-ξ), c1 = 1/(x+1)
        let p = MediumProfile::new(
            (0.0, 1.0),
            Permittivity::Power {
                scale: 1.0,
                shift: 1.0,
                power: -4.0,
            },
            1.0,
            2001,
        )
        .unwrap();
        let t = build_tables(p).unwrap();
        for i in 0..=29 {
            let x = i as f64 / 29.0;
            assert!((t.c_at(x).unwrap() - (x + 1.0).powi(2)).abs() < 1e-13);
            assert!((t.xi_of_x(x).unwrap() - (1.0 - 1.0 / (x + 1.0))).abs() < 1e-13);
            assert!((t.c_vector(x).unwrap() - 1.0 / (x + 1.0)).abs() < 1e-9);
            assert!((t.z_vector(x).unwrap() - 1.0 / (x + 1.0)).abs() < 1e-9);
            let xi = 0.5 * i as f64 / 29.0;
            assert!((t.f(xi).unwrap() - 1.0 / (1.0 - xi)).abs() < 1e-12);
        }
    }

    #[test]
    fn consistency_and_monotonicity() {
        let t = exp_profile(501, 0.9);
        let n = t.antiderivative_samples();
        assert!(n.windows(2).all(|w| w[1] > w[0]));
        assert!(t.f_samples().iter().all(|&v| v > 0.0));
        for i in 0..=300 {
            let x = 0.9 * i as f64 / 300.0;
            let f = t.f(t.xi_of_x(x).unwrap()).unwrap();
            let c = t.c_at(x).unwrap();
            assert!((f * f - c).abs() <= 1e-8 * c);
            assert!((t.x_of_xi(t.xi_of_x(x).unwrap()).unwrap() - x).abs() <= 1e-8 * 0.9);
        }
    }

    #[test]
    fn inverse_map_converges_at_fourth_order() {
        let err = |m: usize| {
            let t = exp_profile(m, 1.0);
            (0..997)
                .map(|k| {
                    let x = (k as f64 + 0.37) / 1000.0;
                    let xi = 1.0 - (-x).exp();
                    (t.x_of_xi(xi).unwrap() - x).abs()
                })
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(41), err(81));
        assert!(e1 / e2 >= 8.0, "{e1} {e2}");
    }

    #[test]
    fn tabulated_profile() {
        let xs: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let eps: Vec<f64> = xs.iter().map(|x| 1.0 + x * x).collect();
        let p = MediumProfile::new((0.0, 1.0), Permittivity::table(xs, eps).unwrap(), 2.0, 401).unwrap();
        let t = build_tables(p).unwrap();
        assert!(!t.is_homogeneous());
        assert!((t.eps_at(0.5).unwrap() - 1.25).abs() < 1e-4);
        assert!(t.antiderivative_samples().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn invalid_profiles() {
        assert!(matches!(
            MediumProfile::new((0.0, 1.0), Permittivity::Constant(1.0), 0.0, 11),
            Err(Error::NonPositivePermeability(_))
        ));
        let p = MediumProfile::new(
            (0.0, 1.0),
            Permittivity::Power {
                scale: 1.0,
                shift: -0.5,
                power: 1.0,
            },
            1.0,
            11,
        )
        .unwrap();
        assert!(matches!(build_tables(p), Err(Error::NonPositivePermittivity { .. })));
        assert!(matches!(
            Permittivity::table(vec![0.0, 1.0], vec![1.0, -1.0]),
            Err(Error::NonPositivePermittivity { .. })
        ));
        let t = exp_profile(101, 1.0);
        assert!(matches!(t.c_vector(1.5), Err(Error::OutOfDomain { .. })));
    }
}
