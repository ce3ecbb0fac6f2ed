//! Sourceless Maxwell equations in a medium with permittivity `ε(x1)` and
//! constant permeability `μ`, in the biquaternionic form
//!
//! ```text
//! (1/c ∂t + iD) V - M^{ic} V - M^{iZ} V* = 0,    V = √ε E + i√μ H
//! ```
//!
//! Space-time fields put `t` on grid axis 0 and `x1, x2, x3` on the
//! following axes; the medium varies along `x1` only.
//!
//! The one-dimensional reduction (fields depending on `t, x`) splits into an
//! equation for `V1` and a bicomplex equation for `Φ = V2 + V3 e1`. After the
//! change of variable `ξ = N(x)` and `W = √C Ψ*`, the two hyperbolic halves
//! of `W = w1 + w2 e1` solve a Vekua equation whose formal powers are built by
//! [`crate::formal_powers`] with `f = 1/√C`.

use crate::algebra::{Bicomplex, Biquaternion, Hyperbolic};
use crate::calculus::{moisil_theodoresco_on, partial, quaternion_gradient, Field, Grid, ResidualReport};
use crate::formal_powers::{FormalPowerTable, HyperbolicPoint};
use crate::medium::MediumTables;
use crate::numerics::lagrange_cubic;
use crate::{Error, Result};
use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Nodes with `|det| ≤ DEPENDENCE_TOL` make a sextet dependent.
pub const DEPENDENCE_TOL: f64 = 1e-10;

fn require_space_time<const D: usize>() -> Result<()> {
    if D < 2 {
        return Err(Error::InvalidGrid(
            "space-time grids need a time axis and at least x1".into(),
        ));
    }
    Ok(())
}

fn x1_at<const D: usize>(grid: &Grid<D>, node: usize) -> f64 {
    grid.node_coords(node)[1]
}

fn e1() -> Biquaternion {
    Biquaternion::unit(1)
}

/// `V = √ε E + i√μ H` nodewise, with `ε` taken at the `x1` coordinate.
pub fn assemble_v<const D: usize>(
    e: &Field<[f64; 3], D>,
    h: &Field<[f64; 3], D>,
    tables: &MediumTables,
) -> Result<Field<Biquaternion, D>> {
    require_space_time::<D>()?;
    e.check_grid(h.grid())?;
    let sm = tables.mu().sqrt();
    let grid = *e.grid();
    let values = (0..grid.len())
        .map(|i| {
            let se = tables.eps_at(x1_at(&grid, i))?.sqrt();
            let (ev, hv) = (e[i], h[i]);
            Ok(Biquaternion::vector(std::array::from_fn(|k| {
                Complex64::new(se * ev[k], sm * hv[k])
            })))
        })
        .collect::<Result<Vec<_>>>()?;
    Field::new(grid, values)
}

/// Residual field of the sourceless equation.
pub fn maxmain_field<const D: usize>(
    v: &Field<Biquaternion, D>,
    tables: &MediumTables,
) -> Result<Field<Biquaternion, D>> {
    require_space_time::<D>()?;
    let grid = *v.grid();
    let dt = partial(v, 0);
    let dv = moisil_theodoresco_on(v, 1);
    let values = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            let c = tables.c_at(x)?;
            let ic = e1() * (I * tables.c_vector(x)?);
            let iz = e1() * (I * tables.z_vector(x)?);
            Ok(dt[i] * (1.0 / c) + I * dv[i] - v[i] * ic - v[i].complex_conj() * iz)
        })
        .collect::<Result<Vec<_>>>()?;
    Field::new(grid, values)
}

/// Norms of `(1/c ∂t + iD)V - M^{ic}V - M^{iZ}V*`.
pub fn maxmain_residual<const D: usize>(
    v: &Field<Biquaternion, D>,
    tables: &MediumTables,
) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field("maxwell", &maxmain_field(v, tables)?))
}

/// Norms of `(1/c ∂t + iD)V - i(V + V*)c`, the form taken when `μ` is
/// constant (then the impedance vector equals the speed vector).
pub fn max_non_magnetic_residual<const D: usize>(
    v: &Field<Biquaternion, D>,
    tables: &MediumTables,
) -> Result<ResidualReport> {
    require_space_time::<D>()?;
    let grid = *v.grid();
    let dt = partial(v, 0);
    let dv = moisil_theodoresco_on(v, 1);
    let values = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            let c = tables.c_at(x)?;
            let cv = e1() * tables.c_vector(x)?;
            Ok(dt[i] * (1.0 / c) + I * dv[i] - I * ((v[i] + v[i].complex_conj()) * cv))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_field("maxwell-nonmagnetic", &Field::new(grid, values)?))
}

/// `(1/c ∂t + iD)[φ]` for a real scalar `φ`.
pub fn scalar_operator<const D: usize>(
    phi: &Field<f64, D>,
    tables: &MediumTables,
) -> Result<Field<Biquaternion, D>> {
    require_space_time::<D>()?;
    let grid = *phi.grid();
    let dt = partial(phi, 0);
    let grad = quaternion_gradient(&phi.map(|p| Complex64::new(p, 0.0)), 1);
    let values = (0..grid.len())
        .map(|i| Ok(Biquaternion::real(dt[i] / tables.c_at(x1_at(&grid, i))?) + I * grad[i]))
        .collect::<Result<Vec<_>>>()?;
    Field::new(grid, values)
}

/// Norms of `(1/c ∂t + iD - M^{ic} - M^{iZ}C)[φV] - (1/c ∂t + iD)[φ]·V`,
/// which vanishes for every real `φ` exactly when `V` is a solution.
pub fn intertwine_residual_maxwell<const D: usize>(
    v: &Field<Biquaternion, D>,
    phi: &Field<f64, D>,
    tables: &MediumTables,
) -> Result<ResidualReport> {
    v.check_grid(phi.grid())?;
    let lhs = maxmain_field(&v.zip_with(phi, |q, p| q * p)?, tables)?;
    let rhs = scalar_operator(phi, tables)?.zip_with(v, |d, q| d * q)?;
    Ok(ResidualReport::from_field("maxwell-intertwine", &lhs.sub(&rhs)?))
}

/// Six solutions of the non-magnetic equation for a stratified medium:
/// `c e1, e2/c, e3/c` and the constant magnetic fields `i e1, i e2, i e3`.
#[derive(Debug, Clone)]
pub struct GeneratingSextet<const D: usize> {
    fields: Vec<Field<Biquaternion, D>>,
    determinant: Field<f64, D>,
}

fn real_columns(v: &[Biquaternion; 6]) -> Matrix6<f64> {
    Matrix6::from_fn(|r, k| {
        let comp = v[k].q[1 + r % 3];
        if r < 3 {
            comp.re
        } else {
            comp.im
        }
    })
}

/// Sample the sextet and check nodewise independence.
pub fn build_sextet<const D: usize>(tables: &MediumTables, grid: Grid<D>) -> Result<GeneratingSextet<D>> {
    require_space_time::<D>()?;
    let mut fields = vec![Vec::with_capacity(grid.len()); 6];
    let mut det = Vec::with_capacity(grid.len());
    for node in 0..grid.len() {
        let c = tables.c_at(x1_at(&grid, node))?;
        let v = [
            Biquaternion::unit(1) * c,
            Biquaternion::unit(2) * (1.0 / c),
            Biquaternion::unit(3) * (1.0 / c),
            I * Biquaternion::unit(1),
            I * Biquaternion::unit(2),
            I * Biquaternion::unit(3),
        ];
        let d = real_columns(&v).determinant();
        if !(d.abs() > DEPENDENCE_TOL) {
            return Err(Error::DependentSet { node, det: d });
        }
        det.push(d);
        for (k, vk) in v.into_iter().enumerate() {
            fields[k].push(vk);
        }
    }
    Ok(GeneratingSextet {
        fields: fields
            .into_iter()
            .map(|f| Field::new(grid, f))
            .collect::<Result<_>>()?,
        determinant: Field::new(grid, det)?,
    })
}

impl<const D: usize> GeneratingSextet<D> {
    pub fn grid(&self) -> &Grid<D> {
        self.fields[0].grid()
    }

    /// `V_k`, `k = 1..=6`.
    pub fn field(&self, k: usize) -> &Field<Biquaternion, D> {
        &self.fields[k - 1]
    }

    pub fn determinant(&self) -> &Field<f64, D> {
        &self.determinant
    }

    pub fn min_abs_determinant(&self) -> f64 {
        self.determinant.values().iter().fold(f64::INFINITY, |m, d| m.min(d.abs()))
    }

    /// `Σ φ_k V_k`.
    pub fn compose(&self, phi: &[Field<f64, D>; 6]) -> Result<Field<Biquaternion, D>> {
        let mut out = Field::constant(*self.grid(), Biquaternion::ZERO);
        for (p, v) in phi.iter().zip(&self.fields) {
            let term = v.zip_with(p, |q, s| q * s)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Real coefficients `φ_k` with `V = Σ φ_k V_k` (vector part of `V`).
    pub fn decompose(&self, v: &Field<Biquaternion, D>) -> Result<[Field<f64, D>; 6]> {
        v.check_grid(self.grid())?;
        let grid = *self.grid();
        let mut out: [Vec<f64>; 6] = std::array::from_fn(|_| Vec::with_capacity(grid.len()));
        for node in 0..grid.len() {
            let cols: [Biquaternion; 6] = std::array::from_fn(|k| self.fields[k][node]);
            let rhs = Vector6::from_fn(|r, _| {
                let comp = v[node].q[1 + r % 3];
                if r < 3 {
                    comp.re
                } else {
                    comp.im
                }
            });
            let sol = real_columns(&cols)
                .lu()
                .solve(&rhs)
                .ok_or(Error::DependentSet { node, det: 0.0 })?;
            for k in 0..6 {
                out[k].push(sol[k]);
            }
        }
        let mut it = out.into_iter().map(|vals| Field::new(grid, vals));
        Ok(std::array::from_fn(|_| it.next().unwrap().expect("same grid")))
    }
}

/// Residual field of `Σ_k (1/c ∂t + iD)[φ_k]·V_k`.
pub fn second_kind_field<const D: usize>(
    phi: &[Field<f64, D>; 6],
    sextet: &GeneratingSextet<D>,
    tables: &MediumTables,
) -> Result<Field<Biquaternion, D>> {
    let mut out = Field::constant(*sextet.grid(), Biquaternion::ZERO);
    for (p, v) in phi.iter().zip(&sextet.fields) {
        let term = scalar_operator(p, tables)?.zip_with(v, |d, q| d * q)?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Norms of `Σ_k (1/c ∂t + iD)[φ_k]·V_k`: small exactly when `Σ φ_k V_k`
/// solves the Maxwell equation.
pub fn second_kind_residual<const D: usize>(
    phi: &[Field<f64, D>; 6],
    sextet: &GeneratingSextet<D>,
    tables: &MediumTables,
) -> Result<ResidualReport> {
    Ok(ResidualReport::from_field(
        "maxwell-second-kind",
        &second_kind_field(phi, sextet, tables)?,
    ))
}

/// Norms of the nodewise difference between the Maxwell residual of
/// `Σ φ_k V_k` and the second-kind residual of `φ`. Both residuals vanish
/// together: each is bounded by the other plus this gap, which is `O(h²)`.
pub fn equivalence_gap<const D: usize>(
    phi: &[Field<f64, D>; 6],
    sextet: &GeneratingSextet<D>,
    tables: &MediumTables,
) -> Result<ResidualReport> {
    let a = maxmain_field(&sextet.compose(phi)?, tables)?;
    let b = second_kind_field(phi, sextet, tables)?;
    Ok(ResidualReport::from_field("maxwell-equivalence-gap", &a.sub(&b)?))
}

/// `V1 = a1 c(x) + i a2` on a `(t, x)` grid.
pub fn v1_closed_form(a1: f64, a2: f64, tables: &MediumTables, grid: Grid<2>) -> Result<Field<Complex64, 2>> {
    Field::try_from_fn(grid, |p| Ok(Complex64::new(a1 * tables.c_at(p[1])?, a2)))
}

/// Norms of `(1/c ∂t + i e1 ∂x)V1 - i(V1 + V1*)c1 e1` for a complex scalar
/// `V1` on a `(t, x)` grid.
pub fn max_one1_residual(v1: &Field<Complex64, 2>, tables: &MediumTables) -> Result<ResidualReport> {
    let grid = *v1.grid();
    let dt = partial(v1, 0);
    let dx = partial(v1, 1);
    let values = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            let scalar = dt[i] / tables.c_at(x)?;
            let e1_part = I * dx[i] - I * (2.0 * v1[i].re * tables.c_vector(x)?);
            Ok(Biquaternion::new(scalar, e1_part, Complex64::default(), Complex64::default()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_field("maxwell-1d-v1", &Field::new(grid, values)?))
}

// --- bicomplex chain ------------------------------------------------------

/// `Φ = V2 + V3 e1`.
pub fn phi_from_v(v2: Complex64, v3: Complex64) -> Bicomplex {
    Bicomplex::from_complex_pair(v2, v3)
}

/// Inverse of [`phi_from_v`].
pub fn v_from_phi(phi: Bicomplex) -> (Complex64, Complex64) {
    phi.complex_pair()
}

/// `W = √C Ψ*`, `Ψ(t, ξ) = Φ(t, x(ξ))` being the same value read at the
/// transformed coordinate.
pub fn w_from_psi(psi: Bicomplex, big_c: f64) -> Bicomplex {
    psi.conj_j() * big_c.sqrt()
}

/// Inverse of [`w_from_psi`].
pub fn psi_from_w(w: Bicomplex, big_c: f64) -> Bicomplex {
    w.conj_j() * (1.0 / big_c.sqrt())
}

/// Field components `[E2, E3, H2, H3]` → `(w1, w2)` at one node.
pub fn w_from_field_values(fields: [f64; 4], eps: f64, mu: f64, big_c: f64) -> (Hyperbolic, Hyperbolic) {
    let [e2, e3, h2, h3] = fields;
    let (se, sm) = (eps.sqrt(), mu.sqrt());
    let phi = phi_from_v(Complex64::new(se * e2, sm * h2), Complex64::new(se * e3, sm * h3));
    w_from_psi(phi, big_c).split()
}

/// `(w1, w2)` → `[E2, E3, H2, H3]` at one node.
pub fn field_values_from_w(w1: Hyperbolic, w2: Hyperbolic, eps: f64, mu: f64, big_c: f64) -> [f64; 4] {
    let (v2, v3) = v_from_phi(psi_from_w(Bicomplex::join(w1, w2), big_c));
    let (se, sm) = (eps.sqrt(), mu.sqrt());
    [v2.re / se, v3.re / se, v2.im / sm, v3.im / sm]
}

/// Transverse fields and `V1 = √ε E1 + i√μ H1` on a `(t, x)` grid.
#[derive(Debug, Clone)]
pub struct EMField1D {
    pub e2: Field<f64, 2>,
    pub e3: Field<f64, 2>,
    pub h2: Field<f64, 2>,
    pub h3: Field<f64, 2>,
    pub v1: Field<Complex64, 2>,
}

impl EMField1D {
    pub fn zeros(grid: Grid<2>) -> Self {
        let z = Field::constant(grid, 0.0);
        EMField1D {
            e2: z.clone(),
            e3: z.clone(),
            h2: z.clone(),
            h3: z,
            v1: Field::constant(grid, Complex64::default()),
        }
    }

    /// Build from closed forms of `[E2, E3, H2, H3]` in `(t, x)`.
    pub fn from_fn(grid: Grid<2>, f: impl Fn(f64, f64) -> [f64; 4]) -> Self {
        let vals: Vec<[f64; 4]> = (0..grid.len())
            .map(|i| {
                let p = grid.node_coords(i);
                f(p[0], p[1])
            })
            .collect();
        let comp = |k: usize| Field::new(grid, vals.iter().map(|v| v[k]).collect()).expect("same grid");
        EMField1D {
            e2: comp(0),
            e3: comp(1),
            h2: comp(2),
            h3: comp(3),
            v1: Field::constant(grid, Complex64::default()),
        }
    }

    pub fn grid(&self) -> &Grid<2> {
        self.e2.grid()
    }

    pub fn all_finite(&self) -> bool {
        self.e2.all_finite()
            && self.e3.all_finite()
            && self.h2.all_finite()
            && self.h3.all_finite()
            && self.v1.all_finite()
    }

    /// `V = V1 e1 + V2 e2 + V3 e3` nodewise.
    pub fn to_v(&self, tables: &MediumTables) -> Result<Field<Biquaternion, 2>> {
        let grid = *self.grid();
        let sm = tables.mu().sqrt();
        let values = (0..grid.len())
            .map(|i| {
                let se = tables.eps_at(x1_at(&grid, i))?.sqrt();
                Ok(Biquaternion::vector([
                    self.v1[i],
                    Complex64::new(se * self.e2[i], sm * self.h2[i]),
                    Complex64::new(se * self.e3[i], sm * self.h3[i]),
                ]))
            })
            .collect::<Result<Vec<_>>>()?;
        Field::new(grid, values)
    }
}

/// Fields on a `(t, x)` grid from an evaluator of `(w1, w2)` at `(t, ξ)`;
/// each node is read at `ξ = N(x)`.
pub fn fields_from_w_fn(
    grid: Grid<2>,
    tables: &MediumTables,
    w: impl Fn(f64, f64) -> Result<(Hyperbolic, Hyperbolic)>,
) -> Result<EMField1D> {
    let mu = tables.mu();
    let vals = (0..grid.len())
        .map(|i| {
            let [t, x] = grid.node_coords(i);
            let (w1, w2) = w(t, tables.xi_of_x(x)?)?;
            Ok(field_values_from_w(w1, w2, tables.eps_at(x)?, mu, tables.c_at(x)?))
        })
        .collect::<Result<Vec<[f64; 4]>>>()?;
    let comp = |k: usize| Field::new(grid, vals.iter().map(|v| v[k]).collect());
    Ok(EMField1D {
        e2: comp(0)?,
        e3: comp(1)?,
        h2: comp(2)?,
        h3: comp(3)?,
        v1: Field::constant(grid, Complex64::default()),
    })
}

/// Fields on a `(t, x)` grid from `(w1, w2)` sampled on a `(t, ξ)` grid with
/// the same time axis; values at `ξ = N(x)` use cubic interpolation in `ξ`.
pub fn fields_from_w(
    w1: &Field<Hyperbolic, 2>,
    w2: &Field<Hyperbolic, 2>,
    tables: &MediumTables,
    grid: Grid<2>,
) -> Result<EMField1D> {
    w1.check_grid(w2.grid())?;
    let wg = *w1.grid();
    if wg.counts()[0] != grid.counts()[0]
        || wg.origin()[0] != grid.origin()[0]
        || wg.spacing()[0] != grid.spacing()[0]
    {
        return Err(Error::GridMismatch);
    }
    let (xi0, hxi, nxi) = (wg.origin()[1], wg.spacing()[1], wg.counts()[1]);
    let nt = grid.counts()[0];
    fields_from_w_fn(grid, tables, |t, xi| {
        let it = (((t - grid.origin()[0]) / grid.spacing()[0]).round() as usize).min(nt - 1);
        let read = |f: &Field<Hyperbolic, 2>| lagrange_cubic(xi0, hxi, nxi, |k| f.at([it, k]), xi);
        Ok((read(w1)?, read(w2)?))
    })
}

/// `(w1, w2)` on the `(t, x)` grid of `em`, read back through the chain.
pub fn w_from_fields(em: &EMField1D, tables: &MediumTables) -> Result<(Field<Hyperbolic, 2>, Field<Hyperbolic, 2>)> {
    let grid = *em.grid();
    let mu = tables.mu();
    let pairs = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            Ok(w_from_field_values(
                [em.e2[i], em.e3[i], em.h2[i], em.h3[i]],
                tables.eps_at(x)?,
                mu,
                tables.c_at(x)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        Field::new(grid, pairs.iter().map(|p| p.0).collect())?,
        Field::new(grid, pairs.iter().map(|p| p.1).collect())?,
    ))
}

/// Norms of `(1/c ∂t + i e1 ∂x)(V2e2 + V3e3) - i((V2+V2*)e2 + (V3+V3*)e3)c1 e1`.
pub fn maxwell_1d_residual(em: &EMField1D, tables: &MediumTables) -> Result<ResidualReport> {
    let grid = *em.grid();
    let mut v = em.to_v(tables)?;
    v = v.map(|mut q| {
        q.q[1] = Complex64::default();
        q
    });
    let dt = partial(&v, 0);
    let dx = partial(&v, 1);
    let values = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            let c = tables.c_at(x)?;
            let c1e1 = e1() * tables.c_vector(x)?;
            Ok(dt[i] * (1.0 / c) + I * (e1() * dx[i]) - I * ((v[i] + v[i].complex_conj()) * c1e1))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_field("maxwell-1d", &Field::new(grid, values)?))
}

/// Norms of the bicomplex form `(1/c ∂t + i e1 ∂x)Φ + i c1 e1 (Φ + Φ*)` for
/// `Φ = V2 + V3 e1`; nodewise it has the same modulus as the
/// [`maxwell_1d_residual`] integrand.
pub fn bicomplex_1d_residual(em: &EMField1D, tables: &MediumTables) -> Result<ResidualReport> {
    let grid = *em.grid();
    let sm = tables.mu().sqrt();
    let phi = Field::try_from_fn(grid, |p| {
        let se = tables.eps_at(p[1])?.sqrt();
        let i = grid.linear_index([
            ((p[0] - grid.origin()[0]) / grid.spacing()[0]).round() as usize,
            ((p[1] - grid.origin()[1]) / grid.spacing()[1]).round() as usize,
        ]);
        Ok(phi_from_v(
            Complex64::new(se * em.e2[i], sm * em.h2[i]),
            Complex64::new(se * em.e3[i], sm * em.h3[i]),
        ))
    })?;
    let dt = partial(&phi, 0);
    let dx = partial(&phi, 1);
    let ie1 = Bicomplex::J;
    let values = (0..grid.len())
        .map(|i| {
            let x = x1_at(&grid, i);
            let c1 = tables.c_vector(x)?;
            Ok(dt[i] * (1.0 / tables.c_at(x)?) + ie1 * dx[i] + ie1 * (phi[i] + phi[i].conj_i()) * c1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_field("maxwell-1d-bicomplex", &Field::new(grid, values)?))
}

/// Electromagnetic field whose `(w1, w2)` are the formal powers
/// `Z(n)(a1)` and `Z(n)(a2)` of a table built with `f = 1/√C`.
pub fn formal_power_fields(
    table: &FormalPowerTable,
    n: usize,
    a1: Hyperbolic,
    a2: Hyperbolic,
    tables: &MediumTables,
    grid: Grid<2>,
) -> Result<EMField1D> {
    fields_from_w_fn(grid, tables, |t, xi| {
        let p = HyperbolicPoint::new(xi, t);
        Ok((table.z_formal_power(n, a1, p)?, table.z_formal_power(n, a2, p)?))
    })
}
