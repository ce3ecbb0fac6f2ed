//! `formal-powers`: build the `X`, `X̃` tables, verify every `Z(n)` against
//! the hyperbolic Vekua equation, and dump the tables and samples.

use super::{finest, levels, RunError};
use crate::config::{GeneratorChoice, Settings};
use crate::report::{fmt, Report};
use bers_core::formal_powers::{build_x_tables, FormalPowerTable, GeneratingFunction};
use bers_core::medium::MediumTables;
use bers_core::{Grid, Hyperbolic, ResidualReport};
use std::io::Write;
use std::path::Path;

fn table(s: &Settings, tables: &MediumTables) -> Result<FormalPowerTable, RunError> {
    let gen = match s.config.formal_powers.generator {
        GeneratorChoice::SqrtC => GeneratingFunction::from_medium(tables)?,
        GeneratorChoice::InvSqrtC => GeneratingFunction::for_maxwell(tables)?,
    };
    Ok(build_x_tables(&gen, s.config.formal_powers.n_max)?)
}

/// `(ξ + jt)ⁿ` through the idempotent decomposition, independent of the
/// binomial sums used by the tables.
fn hyperbolic_power(xi: f64, t: f64, n: usize) -> Hyperbolic {
    let (p, m) = ((xi + t).powi(n as i32), (xi - t).powi(n as i32));
    Hyperbolic::new(0.5 * (p + m), 0.5 * (p - m))
}

pub fn run(s: &Settings, out: &Path) -> Result<Report, RunError> {
    let tables = s.medium()?;
    let fp = table(s, &tables)?;
    let n_max = fp.n_max();
    let coefficients = s.coefficients();
    let tol = &s.config.tolerances;
    let grid = |m: usize| Grid::from_ranges([s.space, s.time], [m, m]);
    let mut report = Report::new();

    for n in 0..=n_max {
        for (k, &a) in coefficients.iter().enumerate() {
            let r = ResidualReport::refine("formal-power", levels(s), |m| fp.verify_formal_power(n, a, grid(m)?))?;
            report.convergence(
                &format!("formal-powers.vekua.n{n}.a{k}"),
                "formal-power-solves-hyperbolic-vekua",
                &r,
                tol.min_order,
                tol.floor,
            );
        }
    }

    // Simpson refinement: each halving of the step shrinks the change of
    // X(n)(ξ_max) sixteenfold; rounding sets a floor for exact quadratures
    let samples = s.config.medium.samples;
    let mut ends = Vec::new();
    for m in [samples, 2 * samples - 1, 4 * samples - 3] {
        let t = table(s, &s.medium_with_samples(m)?)?;
        ends.push(
            (1..=n_max)
                .map(|n| Ok((t.x(n)?.last().copied().unwrap(), t.x_tilde(n)?.last().copied().unwrap())))
                .collect::<Result<Vec<_>, bers_core::Error>>()?,
        );
    }
    for n in 1..=n_max {
        let pick = |level: usize, tilde: bool| {
            let (x, xt) = ends[level][n - 1];
            if tilde {
                xt
            } else {
                x
            }
        };
        for tilde in [false, true] {
            let d1 = (pick(1, tilde) - pick(0, tilde)).abs();
            let d2 = (pick(2, tilde) - pick(1, tilde)).abs();
            let floor = 1e-12 * (1.0 + pick(2, tilde).abs());
            report.at_most(
                &format!("formal-powers.quadrature.{}{n}", if tilde { "x-tilde" } else { "x" }),
                "simpson-refinement-of-recursive-integrals",
                Some(fp.step() / 4.0),
                d2,
                (d1 / 15.0).max(floor),
            );
        }
    }

    if tables.is_homogeneous() {
        // f is constant: X(n) = X̃(n) = ξⁿ and Z(n) = a (ξ + jt)ⁿ
        let xi = fp.xi_nodes();
        for n in 0..=n_max {
            let (x, xt) = (fp.x(n)?, fp.x_tilde(n)?);
            let err = xi
                .iter()
                .zip(x.iter().zip(xt))
                .map(|(v, (a, b))| (a - v.powi(n as i32)).abs().max((b - v.powi(n as i32)).abs()))
                .fold(0.0, f64::max);
            report.at_most(&format!("formal-powers.vacuum.x{n}"), "vacuum-collapse-to-monomials", Some(fp.step()), err, tol.exact);
        }
        let g = grid(finest(s))?;
        for n in 0..=n_max {
            let mut err = 0.0f64;
            for &a in &coefficients {
                let z = fp.sample_z(n, a, g)?;
                for i in 0..g.len() {
                    let [xi, t] = g.node_coords(i);
                    let d = z[i] - a * hyperbolic_power(xi, t, n);
                    err = err.max(d.u.abs().max(d.v.abs()));
                }
            }
            report.at_most(
                &format!("formal-powers.vacuum.z{n}"),
                "vacuum-collapse-to-hyperbolic-powers",
                Some(g.max_spacing()),
                err,
                tol.exact,
            );
        }
    }

    dump_tables(&fp, &out.join("x_tables.csv"))?;
    dump_samples(&fp, &coefficients, grid(s.levels[0])?, &out.join("z_samples.csv"))?;
    Ok(report)
}

fn dump_tables(fp: &FormalPowerTable, path: &Path) -> Result<(), RunError> {
    let mut w = csv::Writer::from_path(path)?;
    let n_max = fp.n_max();
    let mut header = vec!["xi".to_string()];
    header.extend((0..=n_max).map(|n| format!("X{n}")));
    header.extend((0..=n_max).map(|n| format!("X_tilde{n}")));
    w.write_record(&header)?;
    let cols: Vec<&[f64]> = (0..=n_max)
        .map(|n| fp.x(n))
        .chain((0..=n_max).map(|n| fp.x_tilde(n)))
        .collect::<Result<_, _>>()?;
    for (j, xi) in fp.xi_nodes().iter().enumerate() {
        let mut row = vec![fmt(Some(*xi))];
        row.extend(cols.iter().map(|c| fmt(Some(c[j]))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn dump_samples(fp: &FormalPowerTable, coefficients: &[Hyperbolic], g: Grid<2>, path: &Path) -> Result<(), RunError> {
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(std::fs::File::create(path)?));
    w.write_record(["n", "coefficient", "xi", "t", "u", "v"])?;
    for n in 0..=fp.n_max() {
        for (k, &a) in coefficients.iter().enumerate() {
            let z = fp.sample_z(n, a, g)?;
            for i in 0..g.len() {
                let [xi, t] = g.node_coords(i);
                w.write_record([
                    n.to_string(),
                    k.to_string(),
                    fmt(Some(xi)),
                    fmt(Some(t)),
                    fmt(Some(z[i].u)),
                    fmt(Some(z[i].v)),
                ])?;
            }
        }
    }
    w.into_inner().map_err(|e| e.into_error())?.flush()?;
    Ok(())
}
