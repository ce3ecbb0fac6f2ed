//! `maxwell-verify`: the generating sextet, the closed-form first component,
//! the second-kind equivalence and the one-dimensional field reconstruction
//! from formal powers.

use super::{finest, levels, write_json, RunError};
use crate::config::Settings;
use crate::report::{fmt, Report};
use bers_core::calculus::partial;
use bers_core::formal_powers::{build_x_tables, GeneratingFunction};
use bers_core::maxwell::{
    build_sextet, equivalence_gap, formal_power_fields, max_one1_residual, maxmain_residual, maxwell_1d_residual,
    second_kind_residual, v1_closed_form, EMField1D, DEPENDENCE_TOL,
};
use bers_core::{Field, Grid, Hyperbolic, ResidualReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::Path;

/// Smooth random coefficient: `A sin(b t + c x + d) + e t x`.
fn random_coefficient(rng: &mut impl Rng) -> impl Fn(f64, f64) -> f64 {
    let [a, b, c, d, e]: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    move |t, x| a * (2.0 * b * t + 2.0 * c * x + d).sin() + e * t * x
}

pub fn run(s: &Settings, out: &Path) -> Result<Report, RunError> {
    let tables = s.medium()?;
    let tol = &s.config.tolerances;
    let mx = &s.config.maxwell;
    let tx = |m: usize| Grid::from_ranges([s.time, s.space], [m, m]);
    let mut report = Report::new();

    let sextet = build_sextet(&tables, tx(finest(s))?)?;
    report.above(
        "maxwell.sextet.min-det",
        "sextet-independence",
        Some(sextet.grid().max_spacing()),
        sextet.min_abs_determinant(),
        DEPENDENCE_TOL,
    );
    write_json(
        &out.join("sextet.json"),
        &json!({
            "nodes": finest(s),
            "min_abs_det": sextet.min_abs_determinant(),
        }),
    )?;
    drop(sextet);
    for k in 1..=6 {
        let r = ResidualReport::refine("sextet", levels(s), |m| {
            maxmain_residual(build_sextet(&tables, tx(m)?)?.field(k), &tables)
        })?;
        report.convergence(
            &format!("maxwell.sextet.v{k}"),
            "sextet-member-solves-maxwell",
            &r,
            tol.min_order,
            tol.floor,
        );
    }

    let [a1, a2] = mx.v1;
    let mut dt_max = 0.0f64;
    let r = ResidualReport::refine("v1", levels(s), |m| {
        let v = v1_closed_form(a1, a2, &tables, tx(m)?)?;
        dt_max = dt_max.max(partial(&v, 0).max_norm());
        max_one1_residual(&v, &tables)
    })?;
    report.convergence("maxwell.v1.closed-form", "closed-form-first-component", &r, tol.min_order, tol.floor);
    report.at_most("maxwell.v1.time-derivative", "first-component-is-static", None, dt_max, 0.0);

    // random coefficient tuples: the two residuals differ by O(h²) nodewise
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut gaps = Vec::new();
    for _ in 0..mx.random_cases {
        let coef: Vec<_> = (0..6).map(|_| random_coefficient(&mut rng)).collect();
        gaps.push(ResidualReport::refine("gap", levels(s), |m| {
            let g = tx(m)?;
            let phi: [Field<f64, 2>; 6] = std::array::from_fn(|k| Field::from_fn(g, |p| coef[k](p[0], p[1])));
            equivalence_gap(&phi, &build_sextet(&tables, g)?, &tables)
        })?);
    }
    if !gaps.is_empty() {
        report.convergence_all(
            "maxwell.equivalence.gap",
            "second-kind-equivalence",
            &gaps,
            tol.min_order,
            tol.floor,
        );
    }

    // exact solutions from formal powers: both residuals small together
    let n_max = mx.n_max;
    let table = build_x_tables(&GeneratingFunction::for_maxwell(&tables)?, n_max)?;
    let (mut main, mut second) = (Vec::new(), Vec::new());
    for _ in 0..mx.random_cases {
        let n = rng.gen_range(0..=n_max.min(3));
        let [u1, v1, u2, v2]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let (a1, a2) = (Hyperbolic::new(u1, v1), Hyperbolic::new(u2, v2));
        let mut second_levels = ResidualReport::new("second-kind");
        main.push(ResidualReport::refine("main", levels(s), |m| {
            let g = tx(m)?;
            let v = formal_power_fields(&table, n, a1, a2, &tables, g)?.to_v(&tables)?;
            let sextet = build_sextet(&tables, g)?;
            let phi = sextet.decompose(&v)?;
            second_levels.levels.extend(second_kind_residual(&phi, &sextet, &tables)?.levels);
            maxmain_residual(&v, &tables)
        })?);
        second.push(second_levels);
    }
    if !main.is_empty() {
        report.convergence_all(
            "maxwell.equivalence.solution-main",
            "solution-satisfies-maxwell",
            &main,
            tol.min_order,
            tol.floor,
        );
        report.convergence_all(
            "maxwell.equivalence.solution-second-kind",
            "solution-coefficients-satisfy-second-kind",
            &second,
            tol.min_order,
            tol.floor,
        );
    }

    for n in 0..=n_max {
        for (k, p) in mx.pipeline_pairs.iter().enumerate() {
            let (a1, a2) = (Hyperbolic::new(p[0], p[1]), Hyperbolic::new(p[2], p[3]));
            let r = ResidualReport::refine("pipeline", levels(s), |m| {
                maxwell_1d_residual(&formal_power_fields(&table, n, a1, a2, &tables, tx(m)?)?, &tables)
            })?;
            report.convergence(
                &format!("maxwell.pipeline.n{n}.p{k}"),
                "fields-from-formal-powers-solve-maxwell-1d",
                &r,
                tol.min_order,
                tol.floor,
            );
        }
    }

    if tables.is_homogeneous() {
        // E2 = √μ cos(x - ct), H3 = √ε cos(x - ct)
        let (x0, _) = tables.x_range();
        let (eps, mu, c) = (tables.eps_at(x0)?, tables.mu(), tables.c_at(x0)?);
        let r = ResidualReport::refine("plane-wave", levels(s), |m| {
            let em = EMField1D::from_fn(tx(m)?, |t, x| {
                let w = (x - c * t).cos();
                [mu.sqrt() * w, 0.0, 0.0, eps.sqrt() * w]
            });
            maxwell_1d_residual(&em, &tables)
        })?;
        report.convergence("maxwell.plane-wave", "plane-wave-in-homogeneous-medium", &r, tol.min_order, tol.floor);
    }

    if let Some(p) = mx.pipeline_pairs.first() {
        let em = formal_power_fields(
            &table,
            n_max.min(2),
            Hyperbolic::new(p[0], p[1]),
            Hyperbolic::new(p[2], p[3]),
            &tables,
            tx(s.levels[0])?,
        )?;
        dump_fields(&em, &out.join("fields.csv"))?;
    }
    Ok(report)
}

fn dump_fields(em: &EMField1D, path: &Path) -> Result<(), RunError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "x", "E2", "E3", "H2", "H3"])?;
    let g = em.grid();
    for i in 0..g.len() {
        let [t, x] = g.node_coords(i);
        w.write_record([t, x, em.e2[i], em.e3[i], em.h2[i], em.h3[i]].map(|v| fmt(Some(v))))?;
    }
    w.flush()?;
    Ok(())
}
