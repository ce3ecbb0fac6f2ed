//! One module per subcommand. Each returns the check rows and writes its
//! own dumps into the output directory.

pub mod algebra;
pub mod dirac;
pub mod forcefree;
pub mod formal;
pub mod maxwell;

use crate::config::{Command, ConfigError, Settings};
use crate::report::Report;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("computation failed: {0}")]
    Library(#[from] bers_core::Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("cannot write JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn dispatch(s: &Settings, out: &Path) -> Result<Report, RunError> {
    match s.command {
        Command::AlgebraSelftest => algebra::run(s, out),
        Command::FormalPowers => formal::run(s, out),
        Command::MaxwellVerify => maxwell::run(s, out),
        Command::ForcefreeVerify => forcefree::run(s, out),
        Command::DiracVerify => dirac::run(s, out),
    }
}

/// Pretty JSON with a trailing newline; `serde_json::Value` objects keep
/// their keys sorted, so the bytes depend only on the content.
fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), RunError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Node counts of the refinement levels.
fn levels(s: &Settings) -> impl Iterator<Item = usize> + '_ {
    s.levels.iter().copied()
}

fn finest(s: &Settings) -> usize {
    *s.levels.last().expect("at least three levels")
}
