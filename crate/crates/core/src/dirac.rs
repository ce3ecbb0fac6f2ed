//! Fixed-energy Dirac system in biquaternionic form,
//! `DW + aW + Wb = 0` with `b = -i(φ + ω)e1 - m e2`.
//!
//! Spatial coordinates start at grid axis 0. For potentials that depend on
//! `x1` only, the reduced system `∂1W = e1 W b` is integrated with a classical
//! fourth-order one-step method from `W(0) = e_k`, giving four independent
//! solutions.

use crate::algebra::Biquaternion;
use crate::calculus::{moisil_theodoresco_on, quaternion_gradient, Field, Grid, ResidualReport};
use crate::forcefree::component_determinant;
use crate::{Error, Result};
use num_complex::Complex64;

/// Mass, energy and potentials on a grid.
#[derive(Debug, Clone)]
pub struct DiracData<const D: usize> {
    pub m: f64,
    pub omega: f64,
    /// Electric potential `φ`.
    pub phi: Field<f64, D>,
    /// Purely vectorial magnetic potential `a`.
    pub a: Field<Biquaternion, D>,
}

/// `b = -i(φ + ω)e1 - m e2`.
pub fn right_factor(m: f64, omega: f64, phi: f64) -> Biquaternion {
    Biquaternion::new(
        Complex64::default(),
        Complex64::new(0.0, -(phi + omega)),
        Complex64::new(-m, 0.0),
        Complex64::default(),
    )
}

impl<const D: usize> DiracData<D> {
    pub fn new(m: f64, omega: f64, phi: Field<f64, D>, a: Field<Biquaternion, D>) -> Result<Self> {
        phi.check_grid(a.grid())?;
        if !(m >= 0.0) || !m.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidInput(format!(
                "mass must be finite and non-negative and energy finite, got m={m}, omega={omega}"
            )));
        }
        if let Some(node) = a.values().iter().position(|q| q.scalar_part().norm() > 0.0) {
            return Err(Error::InvalidInput(format!(
                "magnetic potential must be purely vectorial (node {node})"
            )));
        }
        Ok(DiracData { m, omega, phi, a })
    }

    /// Constant electric potential and zero magnetic potential.
    pub fn constant(m: f64, omega: f64, phi: f64, grid: Grid<D>) -> Result<Self> {
        Self::new(m, omega, Field::constant(grid, phi), Field::constant(grid, Biquaternion::ZERO))
    }

    pub fn grid(&self) -> &Grid<D> {
        self.phi.grid()
    }

    /// `b` at a node, recomputed from `m, ω, φ`.
    pub fn b(&self, node: usize) -> Biquaternion {
        right_factor(self.m, self.omega, self.phi[node])
    }
}

fn dirac_field<const D: usize>(w: &Field<Biquaternion, D>, data: &DiracData<D>) -> Result<Field<Biquaternion, D>> {
    w.check_grid(data.grid())?;
    let dw = moisil_theodoresco_on(w, 0);
    let values = (0..w.grid().len())
        .map(|i| dw[i] + data.a[i] * w[i] + w[i] * data.b(i))
        .collect();
    Field::new(*w.grid(), values)
}

/// Norms of `DW + aW + Wb`.
pub fn dirac_residual<const D: usize>(w: &Field<Biquaternion, D>, data: &DiracData<D>) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field("dirac", &dirac_field(w, data)?))
}

/// Four solutions of the `x1`-reduced system, sampled at the integration
/// nodes `x = k · step`.
#[derive(Debug, Clone)]
pub struct OracleQuartet {
    step: f64,
    b: Biquaternion,
    trajectories: [Vec<Biquaternion>; 4],
}

fn rhs(w: Biquaternion, b: Biquaternion) -> Biquaternion {
    Biquaternion::unit(1) * w * b
}

fn rk4(w0: Biquaternion, b: Biquaternion, h: f64, steps: usize) -> Vec<Biquaternion> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut w = w0;
    out.push(w);
    for _ in 0..steps {
        let k1 = rhs(w, b);
        let k2 = rhs(w + k1 * (0.5 * h), b);
        let k3 = rhs(w + k2 * (0.5 * h), b);
        let k4 = rhs(w + k3 * h, b);
        w = w + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        out.push(w);
    }
    out
}

/// Integrate `∂1W = e1 W b` on `[0, x_end]` with `steps` steps from
/// `W(0) = 1, e1, e2, e3`, for constant `m, ω, φ` and `a = 0`. The local
/// error is estimated by step doubling over the whole interval; exceeding
/// `tol` is an error.
pub fn ode_oracle_solutions(
    m: f64,
    omega: f64,
    phi: f64,
    x_end: f64,
    steps: usize,
    tol: f64,
) -> Result<OracleQuartet> {
    if steps == 0 || !(x_end > 0.0) {
        return Err(Error::InvalidInput("oracle needs a positive interval and steps".into()));
    }
    let b = right_factor(m, omega, phi);
    let h = x_end / steps as f64;
    let trajectories: [Vec<Biquaternion>; 4] = std::array::from_fn(|k| rk4(Biquaternion::unit(k), b, h, steps));
    for (k, traj) in trajectories.iter().enumerate() {
        let coarse = rk4(Biquaternion::unit(k), b, 2.0 * h, steps / 2);
        let fine_at = traj[2 * (steps / 2)];
        // Richardson: the fine solution's error is about a fifteenth of the difference
        let estimate = coarse.last().unwrap().max_abs_diff(&fine_at) / 15.0;
        if estimate > tol {
            return Err(Error::StepTooLarge { x: x_end, estimate });
        }
    }
    Ok(OracleQuartet { step: h, b, trajectories })
}

impl OracleQuartet {
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn x_end(&self) -> f64 {
        self.step * (self.trajectories[0].len() - 1) as f64
    }

    pub fn trajectory(&self, k: usize) -> &[Biquaternion] {
        &self.trajectories[k]
    }

    /// `W_k(x)` by cubic Hermite interpolation, using `∂1W = e1 W b` for the
    /// nodal slopes.
    pub fn eval(&self, k: usize, x: f64) -> Result<Biquaternion> {
        let traj = &self.trajectories[k];
        let n = traj.len() - 1;
        let hi = self.x_end();
        if !(x >= -1e-12 * hi && x <= hi * (1.0 + 1e-12)) {
            return Err(Error::OutOfDomain { value: x, lo: 0.0, hi });
        }
        let s = (x / self.step).clamp(0.0, n as f64);
        let i = (s.floor() as usize).min(n - 1);
        let t = s - i as f64;
        let (p0, p1) = (traj[i], traj[i + 1]);
        let (m0, m1) = (rhs(p0, self.b) * self.step, rhs(p1, self.b) * self.step);
        let t2 = t * t;
        let t3 = t2 * t;
        Ok(p0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + m0 * (t3 - 2.0 * t2 + t)
            + p1 * (-2.0 * t3 + 3.0 * t2)
            + m1 * (t3 - t2))
    }

    /// `W_k` sampled on a grid whose axis 0 is `x1`.
    pub fn sample<const D: usize>(&self, k: usize, grid: Grid<D>) -> Result<Field<Biquaternion, D>> {
        Field::try_from_fn(grid, |x| self.eval(k, x[0]))
    }

    /// Minimum over the integration nodes of the independence determinant.
    pub fn min_abs_determinant(&self) -> f64 {
        (0..self.trajectories[0].len())
            .map(|i| component_determinant(std::array::from_fn(|k| self.trajectories[k][i])).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Observed order of the integrator from endpoint differences at
/// `steps`, `2·steps`, `4·steps`.
pub fn integrator_order(m: f64, omega: f64, phi: f64, x_end: f64, steps: usize) -> f64 {
    let b = right_factor(m, omega, phi);
    let end = |n: usize| {
        (0..4)
            .map(|k| *rk4(Biquaternion::unit(k), b, x_end / n as f64, n).last().unwrap())
            .collect::<Vec<_>>()
    };
    let (a, bb, c) = (end(steps), end(2 * steps), end(4 * steps));
    let diff = |u: &[Biquaternion], v: &[Biquaternion]| {
        u.iter().zip(v).map(|(p, q)| p.max_abs_diff(q)).fold(0.0, f64::max)
    };
    (diff(&a, &bb) / diff(&bb, &c)).log2()
}

/// Minimum over the grid of `|det|` of the 4×4 complex component matrix.
pub fn quartet_independence<const D: usize>(f: &[Field<Biquaternion, D>; 4]) -> Result<f64> {
    for q in &f[1..] {
        q.check_grid(f[0].grid())?;
    }
    Ok((0..f[0].grid().len())
        .map(|i| component_determinant(std::array::from_fn(|k| f[k][i])).norm())
        .fold(f64::INFINITY, f64::min))
}

/// Quartets are accepted when `min |det|` exceeds this.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

/// `Σ φ_k F_k`.
pub fn compose<const D: usize>(
    phi: &[Field<Complex64, D>; 4],
    quartet: &[Field<Biquaternion, D>; 4],
) -> Result<Field<Biquaternion, D>> {
    let mut out = Field::constant(*quartet[0].grid(), Biquaternion::ZERO);
    for (p, f) in phi.iter().zip(quartet) {
        out = out.add(&f.zip_with(p, |q, s| s * q)?)?;
    }
    Ok(out)
}

fn second_kind_field<const D: usize>(
    phi: &[Field<Complex64, D>; 4],
    quartet: &[Field<Biquaternion, D>; 4],
) -> Result<Field<Biquaternion, D>> {
    let det = quartet_independence(quartet)?;
    if !(det > INDEPENDENCE_TOL) {
        return Err(Error::DependentSet { node: 0, det });
    }
    let grid = *quartet[0].grid();
    let mut out = Field::constant(grid, Biquaternion::ZERO);
    for (p, f) in phi.iter().zip(quartet) {
        p.check_grid(&grid)?;
        let d = quaternion_gradient(p, 0);
        out = out.add(&d.zip_with(f, |dp, q| dp * q)?)?;
    }
    Ok(out)
}

/// Norms of `Σ_k (Dφ_k) F_k` for complex scalar `φ_k`.
pub fn second_kind_residual_dirac<const D: usize>(
    phi: &[Field<Complex64, D>; 4],
    quartet: &[Field<Biquaternion, D>; 4],
) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field("dirac-second-kind", &second_kind_field(phi, quartet)?))
}

/// Norms of the nodewise difference between the Dirac residual of
/// `Σ φ_k F_k` and the second-kind residual of `φ`; `O(h²)` when every
/// `F_k` is a solution, so the two residuals vanish together.
pub fn equivalence_gap<const D: usize>(
    phi: &[Field<Complex64, D>; 4],
    quartet: &[Field<Biquaternion, D>; 4],
    data: &DiracData<D>,
) -> Result<ResidualReport> {
    let a = dirac_field(&compose(phi, quartet)?, data)?;
    let b = second_kind_field(phi, quartet)?;
    Ok(ResidualReport::from_field("dirac-equivalence-gap", &a.sub(&b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn line(n: usize) -> Grid<1> {
        Grid::from_ranges([(0.0, 1.0)], [n]).unwrap()
    }

    fn oracle() -> OracleQuartet {
        ode_oracle_solutions(1.0, 0.5, 0.3, 1.0, 1024, 1e-10).unwrap()
    }

    #[test]
    fn residual_examples() {
        let g = line(9);
        let free = DiracData::constant(0.0, 0.0, 0.0, g).unwrap();
        let w = Field::constant(g, Biquaternion::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(0.5, 0.5)));
        assert_eq!(dirac_residual(&w, &free).unwrap().max_norm(), 0.0);
        let massive = DiracData::constant(1.0, 0.0, 0.0, g).unwrap();
        let one = Field::constant(g, Biquaternion::ONE);
        assert!((dirac_residual(&one, &massive).unwrap().max_norm() - 1.0).abs() < 1e-15);
        assert!(DiracData::constant(-1.0, 0.0, 0.0, g).is_err());
        let scalar_a = Field::constant(g, Biquaternion::ONE);
        assert!(DiracData::new(1.0, 0.0, Field::constant(g, 0.0), scalar_a).is_err());
    }

    #[test]
    fn oracle_examples() {
        let q = ode_oracle_solutions(0.0, 0.0, 0.0, 1.0, 64, 1e-12).unwrap();
        for k in 0..4 {
            assert!(q.trajectory(k).iter().all(|w| *w == Biquaternion::unit(k)));
        }
        assert!(matches!(
            ode_oracle_solutions(50.0, 40.0, 0.0, 1.0, 8, 1e-10),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn oracle_is_fourth_order() {
        assert!(integrator_order(1.0, 0.5, 0.3, 1.0, 16) >= 3.9);
    }

    #[test]
    fn oracle_solutions_pass_the_residual() {
        let q = oracle();
        let data = |g| DiracData::constant(1.0, 0.5, 0.3, g).unwrap();
        for k in 0..4 {
            let r = ResidualReport::refine("d", [17, 33, 65], |n| dirac_residual(&q.sample(k, line(n))?, &data(line(n))))
                .unwrap();
            assert!(r.converges(1.9, 1e-10), "k={k} {r:?}");
        }
        // the fundamental matrix has trace-free generator: det stays 1
        assert!((q.min_abs_determinant() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn independence_examples() {
        let g = line(5);
        let units: [Field<Biquaternion, 1>; 4] = std::array::from_fn(|k| Field::constant(g, Biquaternion::unit(k)));
        assert!((quartet_independence(&units).unwrap() - 1.0).abs() < 1e-15);
        let dep: [Field<Biquaternion, 1>; 4] =
            std::array::from_fn(|k| Field::constant(g, Biquaternion::unit(if k == 3 { 0 } else { k })));
        assert_eq!(quartet_independence(&dep).unwrap(), 0.0);
        let phi: [Field<Complex64, 1>; 4] = std::array::from_fn(|_| Field::constant(g, c(1.0, 0.0)));
        assert!(matches!(second_kind_residual_dirac(&phi, &dep), Err(Error::DependentSet { .. })));
    }

    #[test]
    fn second_kind_examples() {
        let g = line(9);
        let units: [Field<Biquaternion, 1>; 4] = std::array::from_fn(|k| Field::constant(g, Biquaternion::unit(k)));
        let consts: [Field<Complex64, 1>; 4] = std::array::from_fn(|k| Field::constant(g, c(k as f64, -1.0)));
        assert_eq!(second_kind_residual_dirac(&consts, &units).unwrap().max_norm(), 0.0);
        let mut phi = consts.clone();
        phi[0] = Field::from_fn(g, |x| c(x[0], 0.0));
        assert!((second_kind_residual_dirac(&phi, &units).unwrap().max_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn equivalence_with_the_oracle_quartet() {
        let q = oracle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let coef: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r = ResidualReport::refine("gap", [9usize, 17, 33], |n| {
                let g = Grid::from_ranges([(0.0, 1.0); 3], [n; 3])?;
                let quartet: [Field<Biquaternion, 3>; 4] = std::array::from_fn(|k| q.sample(k, g).unwrap());
                let phi: [Field<Complex64, 3>; 4] = std::array::from_fn(|k| {
                    let a = &coef[4 * k..4 * k + 4];
                    Field::from_fn(g, |x| c((a[0] * x[0] + a[1] * x[1]).cos(), a[2] * x[2] + a[3] * x[0] * x[1]))
                });
                let data = DiracData::constant(1.0, 0.5, 0.3, g)?;
                let a = dirac_residual(&compose(&phi, &quartet)?, &data)?;
                let b = second_kind_residual_dirac(&phi, &quartet)?;
                let gap = equivalence_gap(&phi, &quartet, &data)?;
                // each residual is bounded by the other plus the gap
                assert!(a.max_norm() <= b.max_norm() + gap.max_norm() + 1e-12);
                assert!(b.max_norm() <= a.max_norm() + gap.max_norm() + 1e-12);
                assert!(b.max_norm() > 1e-2);
                Ok(gap)
            })
            .unwrap();
            assert!(r.converges(1.9, 1e-12), "{r:?}");
        }
    }
}
