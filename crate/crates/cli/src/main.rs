use bers_cli::config::{Command, Overrides};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Residual-based verification of generating sets, formal powers and
/// exact solutions for biquaternionic Maxwell, force-free and Dirac systems.
#[derive(Parser)]
#[command(name = "bers", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed of every randomised check.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory for the CSV report and dumps.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Number of dyadic grid levels (3 to 6).
    #[arg(long, global = true)]
    refinements: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Randomised identities of the biquaternion, hyperbolic and bicomplex algebras.
    AlgebraSelftest,
    /// Build formal-power tables, verify Z(n) and dump tables and samples.
    FormalPowers,
    /// Sextet, second-kind equivalence and one-dimensional field reconstruction.
    MaxwellVerify,
    /// Exponential solutions, quotient checks and second-kind equivalence.
    ForcefreeVerify,
    /// Oracle quartet of the Dirac system and second-kind equivalence.
    DiracVerify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::AlgebraSelftest => Command::AlgebraSelftest,
            Cmd::FormalPowers => Command::FormalPowers,
            Cmd::MaxwellVerify => Command::MaxwellVerify,
            Cmd::ForcefreeVerify => Command::ForcefreeVerify,
            Cmd::DiracVerify => Command::DiracVerify,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        out: cli.out,
        refinements: cli.refinements,
    };
    let outcome = bers_cli::run(cli.command.into(), cli.config.as_deref(), &overrides);
    ExitCode::from(outcome.exit_code as u8)
}
