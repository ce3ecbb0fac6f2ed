//! `dirac-verify`: the ODE-oracle quartet for constant potentials and the
//! second-kind equivalence `D(Σ φ_k F_k) + … = Σ (Dφ_k) F_k`.

use super::{levels, write_json, RunError};
use crate::config::Settings;
use crate::report::Report;
use bers_core::dirac::{dirac_residual, equivalence_gap, integrator_order, ode_oracle_solutions, DiracData};
use bers_core::{Biquaternion, Complex64, Field, Grid, ResidualReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::Path;

/// Coarsest step count of the integrator-order measurement.
const ORDER_STEPS: usize = 16;

pub fn run(s: &Settings, out: &Path) -> Result<Report, RunError> {
    let tol = &s.config.tolerances;
    let d = &s.config.dirac;
    let x_end = s.space.1;
    let cube = |m: usize| Grid::from_ranges([s.space; 3], [m; 3]);
    let mut report = Report::new();

    report.order(
        "dirac.integrator.order",
        "fourth-order-oracle-integrator",
        Some(x_end / ORDER_STEPS as f64),
        integrator_order(d.m, d.omega, d.phi, x_end, ORDER_STEPS),
        tol.integrator_order,
    );

    let oracle = ode_oracle_solutions(d.m, d.omega, d.phi, x_end, d.steps, d.step_tol)?;
    report.above(
        "dirac.oracle.min-det",
        "oracle-quartet-independence",
        Some(oracle.step()),
        oracle.min_abs_determinant(),
        tol.min_det,
    );
    for k in 0..4 {
        let r = ResidualReport::refine("oracle", levels(s), |m| {
            let g = cube(m)?;
            dirac_residual(&oracle.sample(k, g)?, &DiracData::constant(d.m, d.omega, d.phi, g)?)
        })?;
        report.convergence(
            &format!("dirac.oracle.w{k}"),
            "oracle-solution-solves-dirac",
            &r,
            tol.min_order,
            tol.floor,
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut gaps = Vec::new();
    for _ in 0..d.random_cases {
        let coef: [f64; 16] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        gaps.push(ResidualReport::refine("gap", levels(s), |m| {
            let g = cube(m)?;
            let quartet = quartet_or_err([0, 1, 2, 3].map(|k| oracle.sample(k, g)))?;
            let phi: [Field<Complex64, 3>; 4] = std::array::from_fn(|k| {
                let c = &coef[4 * k..4 * k + 4];
                Field::from_fn(g, |x| {
                    Complex64::new((c[0] * x[0] + c[1] * x[1]).cos(), c[2] * x[2] + c[3] * x[0] * x[1])
                })
            });
            equivalence_gap(&phi, &quartet, &DiracData::constant(d.m, d.omega, d.phi, g)?)
        })?);
    }
    if !gaps.is_empty() {
        report.convergence_all(
            "dirac.equivalence.gap",
            "second-kind-equivalence",
            &gaps,
            tol.min_order,
            tol.floor,
        );
    }

    let trajectories: Vec<Vec<serde_json::Value>> = (0..4)
        .map(|k| {
            oracle
                .trajectory(k)
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    json!({
                        "x": oracle.step() * i as f64,
                        "re": w.q.map(|c| c.re),
                        "im": w.q.map(|c| c.im),
                    })
                })
                .collect()
        })
        .collect();
    write_json(
        &out.join("oracle.json"),
        &json!({
            "m": d.m,
            "omega": d.omega,
            "phi": d.phi,
            "step": oracle.step(),
            "min_abs_det": oracle.min_abs_determinant(),
            "trajectories": trajectories,
        }),
    )?;
    Ok(report)
}

fn quartet_or_err(
    q: [bers_core::Result<Field<Biquaternion, 3>>; 4],
) -> bers_core::Result<[Field<Biquaternion, 3>; 4]> {
    let [a, b, c, d] = q;
    Ok([a?, b?, c?, d?])
}
