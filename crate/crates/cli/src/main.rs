//! galq: exact quantum mechanics on the cyclic space Z_n, driven by JSON
//! configs. Exit status 0 when all requested checks pass, 1 on usage or
//! computation errors, 2 when a comparison command finds mismatches.

mod commands;
mod config;
mod examples;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use galq_core::galois_phys::EvolutionMode;
use galq_core::ExponentLift;
use render::OutputFormat;

#[derive(Parser)]
#[command(name = "galq", version, about = "Exact cyclotomic quantum mechanics on Z_n")]
struct Cli {
    /// JSON run configuration (required by classical, spectrum, evolve).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for result files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Decimal digits for numeric output; GALQ_PRECISION is the fallback.
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Evolution mode, overriding the config file.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Exponent lift convention for propagators and operator matrices.
    #[arg(long, global = true, value_enum, default_value_t = LiftArg::Symmetric)]
    lift: LiftArg,

    /// Table format for diagnostic reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    PotentialOnly,
}

impl From<ModeArg> for EvolutionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => EvolutionMode::Full,
            ModeArg::PotentialOnly => EvolutionMode::PotentialOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftArg {
    Integer,
    Symmetric,
}

impl From<LiftArg> for ExponentLift {
    fn from(l: LiftArg) -> Self {
        match l {
            LiftArg::Integer => ExponentLift::IntegerAction,
            LiftArg::Symmetric => ExponentLift::SymmetricResidue,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orbit census, trajectories, and EOM/energy diagnostics.
    Classical,
    /// Per-root spectra and the total-energy set.
    Spectrum,
    /// Evolve a wave family and track its invariants.
    Evolve,
    /// Recompute the recorded reference examples and compare.
    ReproduceExamples,
    /// Number-theory tables with built-in cross-checks.
    #[command(subcommand)]
    Numtheory(NumtheoryCmd),
}

#[derive(Subcommand)]
pub enum NumtheoryCmd {
    /// Gauss sums against closed forms, odd primes below the bound.
    GaussSum {
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// One discrete theta evaluation with exact coefficients.
    Theta {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "0")]
        z: String,
        #[arg(long, default_value = "1")]
        tau1: String,
        #[arg(long, default_value = "0")]
        tau2: String,
    },
    /// Totient table cross-checked by brute force.
    Totient {
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Legendre symbols mod an odd prime, cross-checked against squares.
    Legendre {
        #[arg(long)]
        p: u64,
    },
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let lift: ExponentLift = cli.lift.into();
    match &cli.command {
        Command::Classical | Command::Spectrum | Command::Evolve => {
            let Some(path) = &cli.config else {
                anyhow::bail!("--config <path> is required for this command");
            };
            let cfg = config::load(path, cli.precision, cli.mode.map(Into::into))?;
            match &cli.command {
                Command::Classical => commands::cmd_classical(&cfg, &cli.out, cli.format.into()),
                Command::Spectrum => commands::cmd_spectrum(&cfg, &cli.out, lift),
                Command::Evolve => commands::cmd_evolve(&cfg, &cli.out, cli.format.into(), lift),
                _ => unreachable!(),
            }
        }
        Command::ReproduceExamples => {
            let precision = config::resolve_precision(cli.precision, None)?;
            examples::cmd_reproduce_examples(&cli.out, precision)
        }
        Command::Numtheory(table) => {
            let precision = config::resolve_precision(cli.precision, None)?;
            commands::cmd_numtheory(table, &cli.out, precision)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
