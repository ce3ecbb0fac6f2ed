//! Formal powers of the hyperbolic Vekua equation `∂_z̄w - (f′/2f) w̄ = 0`.
//!
//! The generating pair is `(f, j/f)` with `f = f(ξ) > 0`. The recursive
//! quadratures
//!
//! ```text
//! X(0) = X̃(0) = 1
//! X(n) = n ∫₀^ξ X(n-1) / f²     X̃(n) = n ∫₀^ξ X̃(n-1) f²     (n odd)
//! X(n) = n ∫₀^ξ X(n-1) f²       X̃(n) = n ∫₀^ξ X̃(n-1) / f²   (n even)
//! ```
//!
//! feed the binomial sums of `*Z(n)`, and `Z(n) = f Re *Z(n) + (j/f) Im *Z(n)`
//! is an exact solution for every degree and every hyperbolic coefficient.

use crate::algebra::Hyperbolic;
use crate::calculus::{dbar_hyperbolic, Field, Grid, ResidualReport};
use crate::medium::MediumTables;
use crate::numerics::{binomial, cumulative_simpson, derivative4, HermiteSpline};
use crate::{Error, Result};

pub const DEFAULT_N_MAX: usize = 6;
pub const DEFAULT_SAMPLES: usize = 2001;

/// Samples of `f` and `f′` on a uniform grid `ξ_j = j · step`, starting at 0.
#[derive(Debug, Clone)]
pub struct GeneratingFunction {
    step: f64,
    f: Vec<f64>,
    f_prime: Vec<f64>,
}

impl GeneratingFunction {
    pub fn with_derivative(step: f64, f: Vec<f64>, f_prime: Vec<f64>) -> Result<Self> {
        if !(step > 0.0) || f.len() < 5 || f.len() != f_prime.len() {
            return Err(Error::InvalidInput(
                "generating function needs a positive step and at least 5 paired samples".into(),
            ));
        }
        if let Some(k) = (0..f.len()).find(|&k| !(f[k] > 0.0) || !f[k].is_finite()) {
            return Err(Error::NonPositiveF {
                xi: step * k as f64,
                value: f[k],
            });
        }
        Ok(GeneratingFunction { step, f, f_prime })
    }

    /// `f′` by fourth-order differences of the samples.
    pub fn from_samples(step: f64, f: Vec<f64>) -> Result<Self> {
        let fp = derivative4(&f, step)?;
        Self::with_derivative(step, f, fp)
    }

    /// Sample closed forms of `f` and `f′` on `[0, xi_max]`.
    pub fn from_fn(
        xi_max: f64,
        samples: usize,
        f: impl Fn(f64) -> f64,
        f_prime: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if samples < 5 {
            return Err(Error::InvalidInput(format!(
                "generating function needs at least 5 samples, got {samples}"
            )));
        }
        let step = xi_max / (samples - 1) as f64;
        let xs = (0..samples).map(|j| if j + 1 == samples { xi_max } else { step * j as f64 });
        let (fv, fp) = xs.map(|x| (f(x), f_prime(x))).unzip();
        Self::with_derivative(step, fv, fp)
    }

    /// `f ≡ 1`: the formal powers collapse to `a (ξ + jt)ⁿ`.
    pub fn constant(xi_max: f64, samples: usize) -> Result<Self> {
        Self::from_fn(xi_max, samples, |_| 1.0, |_| 0.0)
    }

    /// `f = √C` of a stratified medium.
    pub fn from_medium(tables: &MediumTables) -> Result<Self> {
        Self::with_derivative(
            tables.xi_step(),
            tables.f_samples().to_vec(),
            tables.f_prime_samples().to_vec(),
        )
    }

    /// `f = 1/√C`: the generating function whose Vekua equation is the one
    /// satisfied by `W = √C Ψ*` in the one-dimensional Maxwell reduction.
    pub fn for_maxwell(tables: &MediumTables) -> Result<Self> {
        let f = tables.f_samples();
        let fp = tables.f_prime_samples();
        Self::with_derivative(
            tables.xi_step(),
            f.iter().map(|v| 1.0 / v).collect(),
            f.iter().zip(fp).map(|(v, d)| -d / (v * v)).collect(),
        )
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn xi_max(&self) -> f64 {
        self.step * (self.f.len() - 1) as f64
    }

    pub fn samples(&self) -> &[f64] {
        &self.f
    }

    pub fn derivative_samples(&self) -> &[f64] {
        &self.f_prime
    }
}

/// `z = ξ + jt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPoint {
    pub xi: f64,
    pub t: f64,
}

impl HyperbolicPoint {
    pub fn new(xi: f64, t: f64) -> Self {
        HyperbolicPoint { xi, t }
    }

    pub fn z(&self) -> Hyperbolic {
        Hyperbolic::new(self.xi, self.t)
    }
}

#[derive(Debug, Clone)]
pub struct FormalPowerTable {
    step: f64,
    n_max: usize,
    x: Vec<Vec<f64>>,
    x_tilde: Vec<Vec<f64>>,
    x_spline: Vec<HermiteSpline>,
    x_tilde_spline: Vec<HermiteSpline>,
    f_spline: HermiteSpline,
    scale: f64,
}

/// Run the recursion up to degree `n_max`. `f` is rescaled so that
/// `f(0) = 1`; the Vekua equation only sees `f′/f`, so the solutions are
/// unchanged.
pub fn build_x_tables(gen: &GeneratingFunction, n_max: usize) -> Result<FormalPowerTable> {
    let h = gen.step;
    let scale = 1.0 / gen.f[0];
    let f: Vec<f64> = gen.f.iter().map(|v| v * scale).collect();
    let fp: Vec<f64> = gen.f_prime.iter().map(|v| v * scale).collect();
    let sq: Vec<f64> = f.iter().map(|v| v * v).collect();
    let inv_sq: Vec<f64> = sq.iter().map(|v| 1.0 / v).collect();

    let ones = vec![1.0; f.len()];
    let mut x = vec![ones.clone()];
    let mut xt = vec![ones.clone()];
    let mut x_spline = vec![HermiteSpline::uniform(0.0, h, ones.clone(), vec![0.0; f.len()])?];
    let mut xt_spline = x_spline.clone();
    for n in 1..=n_max {
        let (w, wt) = if n % 2 == 1 { (&inv_sq, &sq) } else { (&sq, &inv_sq) };
        let nf = n as f64;
        // exact nodal derivatives of the antiderivatives, for cubic Hermite interpolation
        let dx: Vec<f64> = x[n - 1].iter().zip(w).map(|(a, b)| nf * a * b).collect();
        let dxt: Vec<f64> = xt[n - 1].iter().zip(wt).map(|(a, b)| nf * a * b).collect();
        let xn: Vec<f64> = cumulative_simpson(&dx, h);
        let xtn: Vec<f64> = cumulative_simpson(&dxt, h);
        if let Some(k) = xn.iter().chain(&xtn).position(|v| !v.is_finite()) {
            return Err(Error::NonPositiveF {
                xi: h * (k % f.len()) as f64,
                value: f[k % f.len()],
            });
        }
        x_spline.push(HermiteSpline::uniform(0.0, h, xn.clone(), dx)?);
        xt_spline.push(HermiteSpline::uniform(0.0, h, xtn.clone(), dxt)?);
        x.push(xn);
        xt.push(xtn);
    }
    Ok(FormalPowerTable {
        step: h,
        n_max,
        x,
        x_tilde: xt,
        x_spline,
        x_tilde_spline: xt_spline,
        f_spline: HermiteSpline::uniform(0.0, h, f, fp)?,
        scale,
    })
}

impl FormalPowerTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn xi_max(&self) -> f64 {
        self.f_spline.hi()
    }

    pub fn xi_nodes(&self) -> Vec<f64> {
        self.f_spline.knots().to_vec()
    }

    /// Factor applied to the input `f` so that `f(0) = 1`.
    pub fn normalisation(&self) -> f64 {
        self.scale
    }

    /// Sampled `X(n)` at the table nodes.
    pub fn x(&self, n: usize) -> Result<&[f64]> {
        self.check_degree(n)?;
        Ok(&self.x[n])
    }

    /// Sampled `X̃(n)` at the table nodes.
    pub fn x_tilde(&self, n: usize) -> Result<&[f64]> {
        self.check_degree(n)?;
        Ok(&self.x_tilde[n])
    }

    /// Interpolated `X(n)(ξ)`.
    pub fn x_at(&self, n: usize, xi: f64) -> Result<f64> {
        self.check_degree(n)?;
        self.x_spline[n].eval(xi)
    }

    /// Interpolated `X̃(n)(ξ)`.
    pub fn x_tilde_at(&self, n: usize, xi: f64) -> Result<f64> {
        self.check_degree(n)?;
        self.x_tilde_spline[n].eval(xi)
    }

    /// Normalised `f(ξ)`.
    pub fn f(&self, xi: f64) -> Result<f64> {
        self.f_spline.eval(xi)
    }

    /// Normalised `f′(ξ)`.
    pub fn f_prime(&self, xi: f64) -> Result<f64> {
        self.f_spline.eval_derivative(xi)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::DegreeOutOfRange { n, max: self.n_max });
        }
        Ok(())
    }

    /// `*Z(n)(a, 0, z)`.
    pub fn star_z(&self, n: usize, a: Hyperbolic, p: HyperbolicPoint) -> Result<Hyperbolic> {
        self.check_degree(n)?;
        let (first, second) = if n % 2 == 1 {
            (&self.x_spline, &self.x_tilde_spline)
        } else {
            (&self.x_tilde_spline, &self.x_spline)
        };
        let mut s1 = Hyperbolic::ZERO;
        let mut s2 = Hyperbolic::ZERO;
        // (jt)^m alternates between real and j-imaginary
        let mut jt = Hyperbolic::ONE;
        for m in 0..=n {
            let c = binomial(n, m);
            s1 = s1 + jt * (c * first[n - m].eval(p.xi)?);
            s2 = s2 + jt * (c * second[n - m].eval(p.xi)?);
            jt = jt * Hyperbolic::new(0.0, p.t);
        }
        Ok(s1 * a.u + Hyperbolic::J * s2 * a.v)
    }

    /// `Z(n)(a, 0, z) = f Re *Z(n) + (j/f) Im *Z(n)`.
    pub fn z_formal_power(&self, n: usize, a: Hyperbolic, p: HyperbolicPoint) -> Result<Hyperbolic> {
        let s = self.star_z(n, a, p)?;
        let f = self.f(p.xi)?;
        Ok(Hyperbolic::new(f * s.u, s.v / f))
    }

    /// `Z(n)` sampled on a grid with `ξ` on axis 0 and `t` on axis 1.
    pub fn sample_z(&self, n: usize, a: Hyperbolic, grid: Grid<2>) -> Result<Field<Hyperbolic, 2>> {
        self.check_degree(n)?;
        Field::try_from_fn(grid, |x| self.z_formal_power(n, a, HyperbolicPoint::new(x[0], x[1])))
    }

    /// Norms of `∂_z̄Z(n) - (f′/2f) conj(Z(n))` on a `(ξ, t)` grid.
    pub fn verify_formal_power(&self, n: usize, a: Hyperbolic, grid: Grid<2>) -> Result<ResidualReport> {
        let z = self.sample_z(n, a, grid)?;
        let dz = dbar_hyperbolic(&z);
        let mut r = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let xi = grid.node_coords(i)[0];
            let k = self.f_prime(xi)? / (2.0 * self.f(xi)?);
            r.push(dz[i] - z[i].conj() * k);
        }
        Ok(ResidualReport::from_field(
            format!("formal-power n={n}"),
            &Field::new(grid, r)?,
        ))
    }
}
