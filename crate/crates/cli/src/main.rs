//! `cgakit`: algebra self-checks, skinning comparisons, interpolation error
//! sweeps, mesh cuts and network benchmarks.
//!
//! Exit status is 0 on success, 1 when a check fails, 2 on malformed input.

mod commands;
mod manifest;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
        }
    }
}

/// Result of a command: its primary output, and an optional check failure
/// reported after the output is written.
pub struct Outcome {
    pub output: String,
    pub failure: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "cgakit", version, about = "Conformal geometric algebra skinning, cutting and pose-sync tools")]
pub struct Cli {
    /// Seed for randomized steps; overrides any seed in the input.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Run data-parallel stages on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cayley table of Cl(p,q) as CSV, checked against a brute-force oracle.
    Cayley(CayleyArgs),
    /// Compare motor skinning against matrix skinning over a clip.
    Skin(SkinArgs),
    /// Error curves of keyframed reconstructions of the bundled turn.
    Interp(InterpArgs),
    /// Cut a scene's mesh with a plane.
    Cut(CutArgs),
    /// Bandwidth and fidelity report for a sync scenario.
    Netbench(NetbenchArgs),
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    /// Signature as `p,q`.
    #[arg(long, default_value = "4,1")]
    signature: String,
    /// Flip the sign of one table entry `a,b` (self-test of the oracle check).
    #[arg(long, hide = true)]
    inject_sign_flip: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("when").required(true).args(["time", "sweep"])))]
pub struct SkinArgs {
    /// Skinned-scene JSON with keyframes.
    scene: String,
    /// Single sample time in seconds.
    #[arg(long)]
    time: Option<f64>,
    /// Number of equal steps across the clip (rows at n + 1 times).
    #[arg(long)]
    sweep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    /// Keyframe spacing in degrees of turn.
    #[arg(long, default_value_t = 90.0)]
    keyframe_spacing: f64,
    /// motor, quatvec, matrix or all.
    #[arg(long, default_value = "all")]
    method: String,
    /// Samples along the trajectory.
    #[arg(long, default_value_t = 401)]
    samples: usize,
}

#[derive(Debug, Args)]
pub struct CutArgs {
    /// Skinned-scene JSON.
    scene: String,
    /// Plane normal `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    normal: String,
    /// Plane offset along the unit normal.
    #[arg(long, allow_hyphen_values = true)]
    offset: f64,
    /// Also write the topology report to this path.
    #[arg(long)]
    report: Option<String>,
}

#[derive(Debug, Args)]
pub struct NetbenchArgs {
    /// Scenario JSON.
    scenario: String,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let out = cli.out.as_deref();
    let exec = if cli.sequential { cgakit::par::Execution::Sequential } else { cgakit::par::Execution::Parallel };
    match &cli.command {
        Command::Cayley(a) => commands::cayley(a, cli.seed, out),
        Command::Skin(a) => commands::skin(a, cli.seed, out, exec),
        Command::Interp(a) => commands::interp(a, cli.seed, out),
        Command::Cut(a) => commands::cut(a, cli.seed, out),
        Command::Netbench(a) => commands::netbench(a, cli.seed, out, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        match &cli.out {
            Some(path) => fs::write(path, &o.output)?,
            None => std::io::stdout().write_all(o.output.as_bytes())?,
        }
        match o.failure {
            Some(msg) => Err(CliError::Check(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cgakit: {e}");
            ExitCode::from(e.code())
        }
    }
}
