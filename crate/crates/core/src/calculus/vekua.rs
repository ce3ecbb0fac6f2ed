//! Elliptic Vekua machinery for a generating pair `(F, G)`.

use super::{dbar_elliptic, Field, ResidualReport};
use crate::{Error, Result};
use num_complex::Complex64;

/// A pair is accepted at a node when `Im(F̄G) > PAIR_TOL · (|F|² + |G|²)`.
pub const PAIR_TOL: f64 = 1e-10;

/// Characteristic coefficients of a generating pair:
///
/// `a = -(F̄ ∂_z̄G - Ḡ ∂_z̄F) / (FḠ - F̄G)`, `b = (F ∂_z̄G - G ∂_z̄F) / (FḠ - F̄G)`.
pub fn characteristic_coefficients(
    f: &Field<Complex64, 2>,
    g: &Field<Complex64, 2>,
) -> Result<(Field<Complex64, 2>, Field<Complex64, 2>)> {
    f.check_grid(g.grid())?;
    for (node, (fv, gv)) in f.values().iter().zip(g.values()).enumerate() {
        let im = (fv.conj() * gv).im;
        if !(im > PAIR_TOL * (fv.norm_sqr() + gv.norm_sqr())) {
            return Err(Error::DegeneratePair { node, value: im });
        }
    }
    let df = dbar_elliptic(f);
    let dg = dbar_elliptic(g);
    let n = f.grid().len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let (fv, gv, dfv, dgv) = (f[i], g[i], df[i], dg[i]);
        let den = fv * gv.conj() - fv.conj() * gv;
        a.push(-(fv.conj() * dgv - gv.conj() * dfv) / den);
        b.push((fv * dgv - gv * dfv) / den);
    }
    Ok((Field::new(*f.grid(), a)?, Field::new(*f.grid(), b)?))
}

/// Norms of `∂_z̄W - aW - bW̄`.
pub fn vekua_residual(
    w: &Field<Complex64, 2>,
    a: &Field<Complex64, 2>,
    b: &Field<Complex64, 2>,
) -> Result<ResidualReport> {
    w.check_grid(a.grid())?;
    w.check_grid(b.grid())?;
    let dw = dbar_elliptic(w);
    let r = Field::new(
        *w.grid(),
        (0..w.grid().len())
            .map(|i| dw[i] - a[i] * w[i] - b[i] * w[i].conj())
            .collect(),
    )?;
    Ok(ResidualReport::from_field("vekua", &r))
}

/// Norms of `(∂_z̄ - a - bC)(φf) - f ∂_z̄φ` for a real `φ`; small for every
/// `φ` exactly when `f` solves the Vekua equation.
pub fn intertwine_residual_elliptic(
    f: &Field<Complex64, 2>,
    phi: &Field<f64, 2>,
    a: &Field<Complex64, 2>,
    b: &Field<Complex64, 2>,
) -> Result<ResidualReport> {
    f.check_grid(phi.grid())?;
    f.check_grid(a.grid())?;
    f.check_grid(b.grid())?;
    let prod = f.zip_with(phi, |fv, p| fv * p)?;
    let dprod = dbar_elliptic(&prod);
    let dphi = dbar_elliptic(&phi.map(|p| Complex64::new(p, 0.0)));
    let r = Field::new(
        *f.grid(),
        (0..f.grid().len())
            .map(|i| dprod[i] - a[i] * prod[i] - b[i] * prod[i].conj() - f[i] * dphi[i])
            .collect(),
    )?;
    Ok(ResidualReport::from_field("intertwine-elliptic", &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> Grid<2> {
        Grid::from_ranges([(0.5, 1.5), (-0.5, 0.5)], [n, n]).unwrap()
    }

    #[test]
    fn analytic_pair_has_zero_coefficients() {
        let g = grid(9);
        let (a, b) = characteristic_coefficients(
            &Field::constant(g, c(1.0, 0.0)),
            &Field::constant(g, c(0.0, 1.0)),
        )
        .unwrap();
        assert_eq!(a.max_norm(), 0.0);
        assert_eq!(b.max_norm(), 0.0);
    }

    #[test]
    fn exponential_pair_coefficients() {
        // F = e^x, G = i e^{-x}: a = 0, b = 1/2
        let err = |n: usize| {
            let g = grid(n);
            let f = Field::from_fn(g, |x| c(x[0].exp(), 0.0));
            let gg = Field::from_fn(g, |x| c(0.0, (-x[0]).exp()));
            let (a, b) = characteristic_coefficients(&f, &gg).unwrap();
            let ea = g.interior_indices().map(|i| a[i].norm()).fold(0.0, f64::max);
            let eb = g.interior_indices().map(|i| (b[i] - 0.5).norm()).fold(0.0, f64::max);
            ea.max(eb)
        };
        let (e1, e2) = (err(17), err(33));
        assert!(e2 < 1e-3, "{e2}");
        assert!((e1 / e2).log2() > 1.9);
    }

    #[test]
    fn degenerate_pair_rejected() {
        let g = grid(9);
        let one = Field::constant(g, c(1.0, 0.0));
        assert!(matches!(
            characteristic_coefficients(&one, &one),
            Err(Error::DegeneratePair { node: 0, .. })
        ));
        // negative orientation is not a generating pair either
        let minus_i = Field::constant(g, c(0.0, -1.0));
        assert!(characteristic_coefficients(&one, &minus_i).is_err());
    }

    #[test]
    fn generating_functions_solve_their_vekua_equation() {
        let pair = |g: Grid<2>| {
            let f = Field::from_fn(g, |x| c((x[0] * x[1]).cos() + 2.0, 0.3 * x[0]));
            let gg = Field::from_fn(g, |x| c(0.2 * x[1].sin(), 1.0 + x[0] * x[0]));
            (f, gg)
        };
        let report = ResidualReport::refine("vekua", [17, 33, 65], |n| {
            let g = grid(n);
            let (f, gg) = pair(g);
            let (a, b) = characteristic_coefficients(&f, &gg)?;
            let rf = vekua_residual(&f, &a, &b)?;
            let rg = vekua_residual(&gg, &a, &b)?;
            Ok(if rf.max_norm() > rg.max_norm() { rf } else { rg })
        })
        .unwrap();
        // by construction the coefficients annihilate F and G up to rounding
        assert!(report.max_norm() < 1e-12, "{report:?}");
    }

    #[test]
    fn vekua_residual_examples() {
        let g = grid(9);
        let zero = Field::constant(g, c(0.0, 0.0));
        let z = Field::from_fn(g, |x| c(x[0], x[1]));
        assert!(vekua_residual(&z, &zero, &zero).unwrap().max_norm() < 1e-13);
        let zb = Field::from_fn(g, |x| c(x[0], -x[1]));
        assert!((vekua_residual(&zb, &zero, &zero).unwrap().max_norm() - 1.0).abs() < 1e-13);
        let other = Grid::from_ranges([(0.0, 1.0), (0.0, 1.0)], [9, 9]).unwrap();
        assert_eq!(
            vekua_residual(&z, &Field::constant(other, c(0.0, 0.0)), &zero),
            Err(Error::GridMismatch)
        );
    }

    #[test]
    fn intertwining_examples() {
        let zero = |g| Field::constant(g, c(0.0, 0.0));
        let orders = |f: &dyn Fn([f64; 2]) -> Complex64, phi: &dyn Fn([f64; 2]) -> f64| {
            ResidualReport::refine("it", [17, 33, 65], |n| {
                let g = grid(n);
                intertwine_residual_elliptic(
                    &Field::from_fn(g, f),
                    &Field::from_fn(g, phi),
                    &zero(g),
                    &zero(g),
                )
            })
            .unwrap()
        };
        let r = orders(&|_| c(1.0, 0.0), &|x| (x[0] * x[1]).sin() + x[0].powi(3));
        assert!(r.converges(1.9, 1e-12), "{r:?}");
        let r = orders(&|x| c(x[0], x[1]).exp(), &|x| x[0] * x[1]);
        assert!(r.converges(1.9, 1e-12), "{r:?}");
        // f = x - iy is not analytic: the defect is φ ∂_z̄ f = x
        let r = orders(&|x| c(x[0], -x[1]), &|x| x[0]);
        for lv in &r.levels {
            assert!(lv.max_norm > 1.0, "{r:?}");
        }
    }
}
