//! Force-free fields: `(D + α)B = 0` for biquaternion-valued `B` on a 3D
//! spatial grid, with `α` acting from the left.
//!
//! One everywhere-invertible solution `b` generates the quartet
//! `b, b e1, b e2, b e3`; then `B = bΦ` solves the equation exactly when
//! `Σ (DΦ_k)·b e_k = 0` for the complex components `Φ_k` of `Φ`.

use crate::algebra::Biquaternion;
use crate::calculus::{moisil_theodoresco, partial, quaternion_gradient, Field, Grid, ResidualReport};
use crate::{Error, Result};
use nalgebra::Matrix4;
use num_complex::Complex64;

/// Proportionality factor `α`.
#[derive(Debug, Clone)]
pub enum AlphaField {
    Constant(Complex64),
    Sampled(Field<Complex64, 3>),
    /// Biquaternion-valued `α`, still a left multiplier.
    Biquaternion(Field<Biquaternion, 3>),
}

impl AlphaField {
    fn check(&self, grid: &Grid<3>) -> Result<()> {
        match self {
            AlphaField::Constant(_) => Ok(()),
            AlphaField::Sampled(f) => f.check_grid(grid),
            AlphaField::Biquaternion(f) => f.check_grid(grid),
        }
    }

    fn left_mul(&self, node: usize, q: Biquaternion) -> Biquaternion {
        match self {
            AlphaField::Constant(a) => *a * q,
            AlphaField::Sampled(f) => f[node] * q,
            AlphaField::Biquaternion(f) => f[node] * q,
        }
    }
}

fn ff_field(b: &Field<Biquaternion, 3>, alpha: &AlphaField) -> Result<Field<Biquaternion, 3>> {
    alpha.check(b.grid())?;
    let db = moisil_theodoresco(b);
    let values = (0..b.grid().len()).map(|i| db[i] + alpha.left_mul(i, b[i])).collect();
    Field::new(*b.grid(), values)
}

/// Norms of `DB + αB`.
pub fn ff_residual(b: &Field<Biquaternion, 3>, alpha: &AlphaField) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field("force-free", &ff_field(b, alpha)?))
}

/// `cos(α x_k) + e_k sin(α x_k)` at a point, `k ∈ {1, 2, 3}`.
pub fn exp_value(alpha: Complex64, axis: usize, x: [f64; 3]) -> Biquaternion {
    let s = alpha * x[axis - 1];
    let mut q = Biquaternion::scalar(s.cos());
    q.q[axis] = s.sin();
    q
}

/// `exp(α x_k e_k)` sampled on a grid; solves `(D + α)b = 0` and satisfies
/// `b(x) b(-x) = 1`.
pub fn exp_solution(alpha: Complex64, axis: usize, grid: Grid<3>) -> Result<Field<Biquaternion, 3>> {
    if !(1..=3).contains(&axis) {
        return Err(Error::InvalidInput(format!("axis must be 1, 2 or 3, got {axis}")));
    }
    Ok(Field::from_fn(grid, |x| exp_value(alpha, axis, x)))
}

/// `b, b e1, b e2, b e3` for an everywhere-invertible `b`.
#[derive(Debug, Clone)]
pub struct GeneratingQuartet {
    members: [Field<Biquaternion, 3>; 4],
    min_abs_det: f64,
}

/// 4×4 complex determinant of the component columns of four biquaternions.
pub fn component_determinant(q: [Biquaternion; 4]) -> Complex64 {
    Matrix4::from_fn(|r, k| q[k].q[r]).determinant()
}

pub fn quartet_from_b(b: &Field<Biquaternion, 3>) -> Result<GeneratingQuartet> {
    if let Some(node) = b.values().iter().position(|q| q.is_zero_divisor()) {
        return Err(Error::NotInvertible { node });
    }
    let members: [Field<Biquaternion, 3>; 4] =
        std::array::from_fn(|k| b.map(|q| q * Biquaternion::unit(k)));
    let min_abs_det = (0..b.grid().len())
        .map(|i| component_determinant(std::array::from_fn(|k| members[k][i])).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(GeneratingQuartet { members, min_abs_det })
}

impl GeneratingQuartet {
    pub fn grid(&self) -> &Grid<3> {
        self.members[0].grid()
    }

    /// `b e_k`, `k = 0..=3` (`e_0 = 1`).
    pub fn member(&self, k: usize) -> &Field<Biquaternion, 3> {
        &self.members[k]
    }

    /// Minimum over the grid of the modulus of the independence determinant,
    /// `|(b b̄)²|`.
    pub fn min_abs_determinant(&self) -> f64 {
        self.min_abs_det
    }

    /// `bΦ = Σ Φ_k b e_k`.
    pub fn compose(&self, phi: &[Field<Complex64, 3>; 4]) -> Result<Field<Biquaternion, 3>> {
        let mut out = Field::constant(*self.grid(), Biquaternion::ZERO);
        for (p, m) in phi.iter().zip(&self.members) {
            out = out.add(&m.zip_with(p, |q, s| s * q)?)?;
        }
        Ok(out)
    }
}

fn second_kind_field(
    phi: &[Field<Complex64, 3>; 4],
    members: &[Field<Biquaternion, 3>; 4],
) -> Result<Field<Biquaternion, 3>> {
    let grid = *members[0].grid();
    let mut out = Field::constant(grid, Biquaternion::ZERO);
    for (p, m) in phi.iter().zip(members) {
        p.check_grid(&grid)?;
        let d = quaternion_gradient(p, 0);
        out = out.add(&d.zip_with(m, |dp, q| dp * q)?)?;
    }
    Ok(out)
}

/// Norms of `Σ_k (DΦ_k)·b e_k`.
pub fn second_kind_residual_ff(
    phi: &[Field<Complex64, 3>; 4],
    quartet: &GeneratingQuartet,
) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field(
        "force-free-second-kind",
        &second_kind_field(phi, &quartet.members)?,
    ))
}

/// Norms of the nodewise difference between the force-free residual of `bΦ`
/// and the second-kind residual of `Φ`; `O(h²)` when `b` is a solution.
pub fn equivalence_gap(
    phi: &[Field<Complex64, 3>; 4],
    quartet: &GeneratingQuartet,
    alpha: &AlphaField,
) -> Result<ResidualReport> {
    let a = ff_field(&quartet.compose(phi)?, alpha)?;
    let b = second_kind_field(phi, &quartet.members)?;
    Ok(ResidualReport::from_field("force-free-equivalence-gap", &a.sub(&b)?))
}

/// Complex components of a biquaternion field.
pub fn components(q: &Field<Biquaternion, 3>) -> [Field<Complex64, 3>; 4] {
    std::array::from_fn(|k| q.map(|v| v.q[k]))
}

/// For two solutions `f`, `g`: norms of `Σ DΦ_k·f e_k` with `Φ = f⁻¹g`, and of
/// `Σ DΨ_k·g e_k` with `Ψ = g⁻¹f`. Both vanish when `f` and `g` solve the
/// same force-free equation.
pub fn quotient_check(
    f: &Field<Biquaternion, 3>,
    g: &Field<Biquaternion, 3>,
) -> Result<(ResidualReport, ResidualReport)> {
    f.check_grid(g.grid())?;
    let quotient = |num: &Field<Biquaternion, 3>, den: &Field<Biquaternion, 3>| {
        let vals = (0..den.grid().len())
            .map(|i| {
                den[i]
                    .inverse()
                    .map(|inv| inv * num[i])
                    .map_err(|_| Error::NotInvertible { node: i })
            })
            .collect::<Result<Vec<_>>>()?;
        Field::new(*den.grid(), vals)
    };
    let fg = quartet_from_b(f)?;
    let phi = quotient(g, f)?;
    let r1 = ResidualReport::from_field(
        "force-free-quotient",
        &second_kind_field(&components(&phi), &fg.members)?,
    );
    let gq = quartet_from_b(g)?;
    let psi = quotient(f, g)?;
    let r2 = ResidualReport::from_field(
        "force-free-quotient-inverse",
        &second_kind_field(&components(&psi), &gq.members)?,
    );
    Ok((r1, r2))
}

/// Norms of `div` of the vector part, `Σ ∂_k B_k`.
pub fn div_residual(b: &Field<Biquaternion, 3>) -> ResidualReport {
    let mut div = Field::constant(*b.grid(), Complex64::default());
    for k in 1..=3 {
        let d = partial(&b.map(|q| q.q[k]), k - 1);
        div = div.add(&d).expect("same grid");
    }
    ResidualReport::from_field("divergence", &div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldValue;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cube(n: usize) -> Grid<3> {
        Grid::from_ranges([(0.0, 1.0); 3], [n; 3]).unwrap()
    }

    fn alphas() -> [Complex64; 3] {
        [c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)]
    }

    #[test]
    fn residual_examples() {
        let g = cube(5);
        let b = Field::constant(g, Biquaternion::new(c(1.0, 2.0), c(0.0, 1.0), c(3.0, 0.0), c(0.0, 0.0)));
        assert_eq!(ff_residual(&b, &AlphaField::Constant(c(0.0, 0.0))).unwrap().max_norm(), 0.0);
        let e1 = Field::constant(g, Biquaternion::unit(1));
        assert!((ff_residual(&e1, &AlphaField::Constant(c(1.0, 0.0))).unwrap().max_norm() - 1.0).abs() < 1e-15);
        let other = AlphaField::Sampled(Field::constant(cube(7), c(1.0, 0.0)));
        assert_eq!(ff_residual(&e1, &other), Err(Error::GridMismatch));
    }

    #[test]
    fn exp_solution_examples() {
        let g = cube(5);
        let b = exp_solution(c(0.0, 0.0), 2, g).unwrap();
        assert!(b.values().iter().all(|q| *q == Biquaternion::ONE));
        let v = exp_value(c(std::f64::consts::PI, 0.0), 1, [0.5, 0.0, 0.0]);
        assert!(v.max_abs_diff(&Biquaternion::unit(1)) < 1e-15);
        assert!(exp_solution(c(1.0, 0.0), 4, g).is_err());
    }

    #[test]
    fn exp_solutions_converge() {
        for alpha in alphas() {
            for axis in 1..=3 {
                let r = ResidualReport::refine("exp", [9, 17, 33], |n| {
                    ff_residual(&exp_solution(alpha, axis, cube(n))?, &AlphaField::Constant(alpha))
                })
                .unwrap();
                assert!(r.converges(1.9, 1e-12), "{alpha} {axis} {r:?}");
            }
        }
    }

    #[test]
    fn sampled_and_biquaternion_alpha_agree_with_constant() {
        let g = cube(9);
        let alpha = c(1.0, 1.0);
        let b = exp_solution(alpha, 1, g).unwrap();
        let r0 = ff_residual(&b, &AlphaField::Constant(alpha)).unwrap();
        let r1 = ff_residual(&b, &AlphaField::Sampled(Field::constant(g, alpha))).unwrap();
        let r2 = ff_residual(&b, &AlphaField::Biquaternion(Field::constant(g, Biquaternion::scalar(alpha)))).unwrap();
        assert_eq!(r0, r1);
        assert_eq!(r0, r2);
    }

    proptest! {
        #[test]
        fn exp_inverse_identity(
            re in -3.0f64..3.0, im in -1.0f64..1.0, axis in 1usize..=3,
            x in prop::array::uniform3(-2.0f64..2.0),
        ) {
            let a = c(re, im);
            let prod = exp_value(a, axis, x) * exp_value(a, axis, x.map(|v| -v));
            prop_assert!(prod.max_abs_diff(&Biquaternion::ONE) < 1e-12 * (1.0 + exp_value(a, axis, x).norm_sqr()));
        }
    }

    #[test]
    fn quartet_examples() {
        let g = cube(5);
        let q = quartet_from_b(&Field::constant(g, Biquaternion::ONE)).unwrap();
        assert!((q.min_abs_determinant() - 1.0).abs() < 1e-15);
        let q = quartet_from_b(&exp_solution(c(1.0, 1.0), 1, g).unwrap()).unwrap();
        assert!((q.min_abs_determinant() - 1.0).abs() < 1e-12);
        let zd = Biquaternion::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            quartet_from_b(&Field::constant(g, zd)),
            Err(Error::NotInvertible { node: 0 })
        ));
        // |det| = |b b̄|² for a generic constant b
        let b = Biquaternion::new(c(0.3, 1.0), c(2.0, -0.5), c(0.1, 0.0), c(-1.0, 0.7));
        let q = quartet_from_b(&Field::constant(g, b)).unwrap();
        assert!((q.min_abs_determinant() - b.quadratic_form().norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn second_kind_examples() {
        let g = cube(9);
        let one = quartet_from_b(&Field::constant(g, Biquaternion::ONE)).unwrap();
        let consts: [Field<Complex64, 3>; 4] = std::array::from_fn(|k| Field::constant(g, c(k as f64, 1.0)));
        assert_eq!(second_kind_residual_ff(&consts, &one).unwrap().max_norm(), 0.0);
        let mut phi: [Field<Complex64, 3>; 4] = std::array::from_fn(|_| Field::constant(g, c(0.0, 0.0)));
        phi[0] = Field::from_fn(g, |x| c(x[0], 0.0));
        assert!((second_kind_residual_ff(&phi, &one).unwrap().max_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quotients_of_exact_solutions() {
        let g = cube(9);
        let f = exp_solution(c(1.0, 0.0), 1, g).unwrap();
        let (a, b) = quotient_check(&f, &f).unwrap();
        assert!(a.max_norm() < 1e-14 && b.max_norm() < 1e-14);
        let one = Field::constant(g, Biquaternion::ONE);
        let e3 = Field::constant(g, Biquaternion::unit(3));
        let (a, b) = quotient_check(&one, &e3).unwrap();
        assert_eq!((a.max_norm(), b.max_norm()), (0.0, 0.0));
        for alpha in alphas() {
            let (mut r1, mut r2) = (ResidualReport::new("q"), ResidualReport::new("q"));
            for n in [9, 17, 33] {
                let f = exp_solution(alpha, 1, cube(n)).unwrap();
                let g = exp_solution(alpha, 2, cube(n)).unwrap();
                let (a, b) = quotient_check(&f, &g).unwrap();
                r1.levels.extend(a.levels);
                r2.levels.extend(b.levels);
            }
            assert!(r1.converges(1.9, 1e-12), "{alpha} {r1:?}");
            assert!(r2.converges(1.9, 1e-12), "{alpha} {r2:?}");
        }
    }

    #[test]
    fn product_with_b_matches_second_kind() {
        // ff_residual(bΦ) and the second-kind residual of Φ vanish together
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alpha = c(1.0, 0.5);
        for _ in 0..5 {
            let coef: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r = ResidualReport::refine("gap", [9usize, 17, 33], |n| {
                let g = cube(n);
                let q = quartet_from_b(&exp_solution(alpha, 1, g)?)?;
                let phi: [Field<Complex64, 3>; 4] = std::array::from_fn(|k| {
                    Field::from_fn(g, |x| {
                        c((coef[3 * k] * x[0] + coef[3 * k + 1] * x[1]).sin(), coef[3 * k + 2] * x[2] * x[0])
                    })
                });
                let alpha = AlphaField::Constant(alpha);
                let a = ff_residual(&q.compose(&phi)?, &alpha)?;
                let b = second_kind_residual_ff(&phi, &q)?;
                let gap = equivalence_gap(&phi, &q, &alpha)?;
                assert!(b.max_norm() > 1e-3);
                assert!((a.max_norm() - b.max_norm()).abs() <= gap.max_norm() + 1e-12);
                Ok(gap)
            })
            .unwrap();
            assert!(r.converges(1.9, 1e-12), "{r:?}");
        }
    }

    #[test]
    fn right_module_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let alpha = c(0.0, 1.0);
        for _ in 0..10 {
            let lam = Biquaternion::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
            let r = ResidualReport::refine("rm", [9, 17, 33], |n| {
                let b = exp_solution(alpha, 2, cube(n))?.map(|q| q * lam);
                ff_residual(&b, &AlphaField::Constant(alpha))
            })
            .unwrap();
            assert!(r.converges(1.9, 1e-12), "{r:?}");
        }
    }

    #[test]
    fn vector_solutions_are_divergence_free() {
        // b e2 = cos(x1) e2 + sin(x1) e3 is purely vectorial for real α
        let g = cube(17);
        let b = exp_solution(c(1.0, 0.0), 1, g).unwrap().map(|q| q * Biquaternion::unit(2));
        assert!(b.values().iter().all(|q| q.scalar_part().norm() < 1e-15));
        assert!(div_residual(&b).max_norm() < 1e-13);
        let r = ResidualReport::refine("div", [9, 17, 33], |n| {
            // rotated solution depending on x2: cos(x2) e3 + sin(x2) e1
            let b = exp_solution(c(1.0, 0.0), 2, cube(n))?.map(|q| q * Biquaternion::unit(3));
            Ok(div_residual(&b))
        })
        .unwrap();
        assert!(r.converges(1.9, 1e-12), "{r:?}");
        let x = Field::from_fn(g, |x| Biquaternion::unit(1) * x[0]);
        assert!((div_residual(&x).max_norm() - 1.0).abs() < 1e-13);
        assert!(x.all_finite() && b[0].norm() > 0.0);
    }
}
