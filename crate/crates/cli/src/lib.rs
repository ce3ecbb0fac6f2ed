//! Configuration-driven verification runs over `bers-core`.
//!
//! A run validates its JSON config, executes one subcommand, writes
//! `<command>.csv` (one row per check and refinement level) plus any dumps
//! into the output directory, and maps the outcome to an exit code:
//! 0 when every check passes, 1 when a check fails or the computation
//! errors, 2 when the config is invalid.

pub mod commands;
pub mod config;
pub mod report;

use commands::RunError;
use config::{Command, Overrides};
use serde_json::json;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Where a finished run left its report.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub csv: Option<PathBuf>,
}

pub fn run(command: Command, config_path: Option<&Path>, overrides: &Overrides) -> Outcome {
    let fail = |code, msg: String| {
        eprintln!("{msg}");
        Outcome { exit_code: code, csv: None }
    };
    let settings = match config::load(config_path).and_then(|c| config::validate(c, command, overrides)) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_CONFIG, format!("config error: {e}")),
    };
    let out = PathBuf::from(&settings.out_dir);
    if let Err(e) = std::fs::create_dir_all(&out) {
        return fail(EXIT_FAIL, format!("cannot create {}: {e}", out.display()));
    }
    let report = match commands::dispatch(&settings, &out) {
        Ok(r) => r,
        Err(RunError::Config(e)) => return fail(EXIT_CONFIG, format!("config error: {e}")),
        Err(e) => return fail(EXIT_FAIL, format!("{}: {e}", command.name())),
    };
    let csv = out.join(format!("{}.csv", command.name()));
    if let Err(e) = report.save(&csv) {
        return fail(EXIT_FAIL, format!("cannot write {}: {e}", csv.display()));
    }
    let manifest = out.join("failures.json");
    let failures = report.failures();
    let checks = report.rows().iter().filter(|r| r.status != report::Status::Level).count();
    if failures.is_empty() {
        // a stale manifest from an earlier run would be misleading
        let _ = std::fs::remove_file(&manifest);
        println!("{}: {checks} checks passed ({})", command.name(), csv.display());
        return Outcome { exit_code: EXIT_PASS, csv: Some(csv) };
    }
    let listed: Vec<_> = failures
        .iter()
        .map(|r| {
            json!({
                "check_id": r.check_id,
                "anchor": r.anchor,
                "max_norm": r.max_norm,
                "slope": r.slope,
                "threshold": r.threshold,
            })
        })
        .collect();
    let body = json!({ "command": command.name(), "failed": listed });
    if let Err(e) = std::fs::write(&manifest, format!("{}\n", serde_json::to_string_pretty(&body).unwrap_or_default())) {
        eprintln!("cannot write {}: {e}", manifest.display());
    }
    eprintln!("{}: {} of {checks} checks failed:", command.name(), failures.len());
    for r in failures {
        eprintln!(
            "  {} ({}): max_norm={} slope={} threshold={}",
            r.check_id,
            r.anchor,
            report::fmt(r.max_norm),
            report::fmt(r.slope),
            report::fmt(Some(r.threshold))
        );
    }
    Outcome { exit_code: EXIT_FAIL, csv: Some(csv) }
}
