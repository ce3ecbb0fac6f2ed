//! `forcefree-verify`: exponential solutions, quotient checks and the
//! second-kind equivalence for `(D + α)B = 0`.

use super::{finest, levels, write_json, RunError};
use crate::config::Settings;
use crate::report::Report;
use bers_core::forcefree::{equivalence_gap, exp_solution, exp_value, ff_residual, quartet_from_b, quotient_check, AlphaField};
use bers_core::{Biquaternion, Complex64, Field, Grid, ResidualReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::Path;

/// Quartets count as independent above this `min |det|`.
const INDEPENDENCE_TOL: f64 = 1e-10;

pub fn run(s: &Settings, out: &Path) -> Result<Report, RunError> {
    let tol = &s.config.tolerances;
    let ff = &s.config.forcefree;
    let axis = ff.axis;
    let other = axis % 3 + 1;
    let cube = |m: usize| Grid::from_ranges([s.space; 3], [m; 3]);
    let alphas = s.alphas();
    let mut report = Report::new();
    let mut dets = Vec::new();

    for (k, &alpha) in alphas.iter().enumerate() {
        let a = AlphaField::Constant(alpha);
        let r = ResidualReport::refine("exp", levels(s), |m| ff_residual(&exp_solution(alpha, axis, cube(m)?)?, &a))?;
        report.convergence(
            &format!("forcefree.exp.alpha{k}"),
            "exponential-solves-force-free",
            &r,
            tol.min_order,
            tol.floor,
        );

        let (mut direct, mut inverse) = (ResidualReport::new("quotient"), ResidualReport::new("quotient-inverse"));
        for m in levels(s) {
            let g = cube(m)?;
            let (r1, r2) = quotient_check(&exp_solution(alpha, axis, g)?, &exp_solution(alpha, other, g)?)?;
            direct.levels.extend(r1.levels);
            inverse.levels.extend(r2.levels);
        }
        report.convergence(
            &format!("forcefree.quotient.alpha{k}"),
            "quotient-of-solutions-solves-second-kind",
            &direct,
            tol.min_order,
            tol.floor,
        );
        report.convergence(
            &format!("forcefree.quotient-inverse.alpha{k}"),
            "inverse-quotient-solves-second-kind",
            &inverse,
            tol.min_order,
            tol.floor,
        );

        let g = cube(finest(s))?;
        let err = (0..g.len())
            .map(|i| {
                let x = g.node_coords(i);
                let prod = exp_value(alpha, axis, x) * exp_value(alpha, axis, x.map(|v| -v));
                prod.max_abs_diff(&Biquaternion::ONE)
            })
            .fold(0.0, f64::max);
        report.at_most(
            &format!("forcefree.exp-inverse.alpha{k}"),
            "exponential-times-reflection-is-one",
            Some(g.max_spacing()),
            err,
            tol.algebra,
        );

        let det = quartet_from_b(&exp_solution(alpha, axis, g)?)?.min_abs_determinant();
        report.above(
            &format!("forcefree.quartet.min-det.alpha{k}"),
            "quartet-independence",
            Some(g.max_spacing()),
            det,
            INDEPENDENCE_TOL,
        );
        dets.push(json!({ "alpha": [alpha.re, alpha.im], "min_abs_det": det }));
    }
    write_json(
        &out.join("quartet.json"),
        &json!({ "axis": axis, "nodes": finest(s), "quartets": dets }),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let alpha = alphas[0];
    let a = AlphaField::Constant(alpha);
    let mut gaps = Vec::new();
    for _ in 0..ff.random_cases {
        let coef: [f64; 16] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        gaps.push(ResidualReport::refine("gap", levels(s), |m| {
            let g = cube(m)?;
            let q = quartet_from_b(&exp_solution(alpha, axis, g)?)?;
            let phi: [Field<Complex64, 3>; 4] = std::array::from_fn(|k| {
                let c = &coef[4 * k..4 * k + 4];
                Field::from_fn(g, |x| {
                    Complex64::new((c[0] * x[0] + c[1] * x[1] + c[2] * x[2]).sin(), c[3] * x[0] * x[2])
                })
            });
            equivalence_gap(&phi, &q, &a)
        })?);
    }
    if !gaps.is_empty() {
        report.convergence_all(
            "forcefree.equivalence.gap",
            "second-kind-equivalence",
            &gaps,
            tol.min_order,
            tol.floor,
        );
    }
    Ok(report)
}
