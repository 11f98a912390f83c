use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use knotmodel::diagram::MatchMode;

mod config;
mod expand;
mod knots;
mod output;
mod verify;

use config::{CommonArgs, RunConfig};

/// Perturbative expansion, verification and knot export for the quartic
/// two-family matrix model.
///
/// Exit status: 0 on success, 1 when a verification check fails, 2 on usage
/// or resource errors.
#[derive(Debug, Parser)]
#[command(name = "knotmodel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Z and ln Z series, the F_{l,p} table and F(g) through order kmax
    Expand,
    /// Run one invariant suite against the oracles
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
    /// Gauss codes of the planar single-loop diagrams, one JSON line each
    Knots,
    /// Loop data for every pairing at one order
    Diagrams {
        /// Order in g
        #[arg(long)]
        k: usize,
        /// Which leg pairings to enumerate
        #[arg(long, value_enum, default_value = "ab_only")]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ModeArg {
    AbOnly,
    All,
}

impl From<ModeArg> for MatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AbOnly => MatchMode::AbOnly,
            ModeArg::All => MatchMode::All,
        }
    }
}

pub enum Outcome {
    Ok,
    Failed,
}

pub fn check_kmax(cfg: &RunConfig) -> knotmodel::Result<()> {
    if cfg.kmax > cfg.kmax_cap {
        return Err(knotmodel::Error::ResourceBound {
            what: "kmax",
            requested: cfg.kmax as u64,
            limit: cfg.kmax_cap as u64,
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = RunConfig::resolve(&cli.common)?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match &cli.command {
        Command::Expand => expand::run(&cfg),
        Command::Verify { suite } => verify::run(&cfg, *suite),
        Command::Knots => knots::run(&cfg),
        Command::Diagrams { k, mode } => knots::run_diagrams(&cfg, *k, (*mode).into()),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<knotmodel::Error>() {
        Some(knotmodel::Error::InvariantViolation(_) | knotmodel::Error::StructuralViolation(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
