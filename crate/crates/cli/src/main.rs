//! `fraczeta`: batch frontend emitting plot-ready CSV or JSON tables.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "fraczeta", version, about = "Cole-Cole relaxation and zeta-function numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the Cole-Cole transfer function.
    Transfer(TransferArgs),
    /// Integrate the fractional relaxation equation.
    Relax(RelaxArgs),
    /// Evaluate eta, zeta, or one of the series/product references at a point.
    Zeta(ZetaArgs),
    /// Find zeros of zeta on the critical line.
    Zeros(ZerosArgs),
    /// Evaluate the truncated prime product ϖ over a θ′ grid.
    Varpi(VarpiArgs),
    /// Partial sums of the four distance columns and the two eta values.
    Chart1(Chart1Args),
}

#[derive(Debug, Args)]
pub struct TransferArgs {
    #[arg(long, default_value_t = 1.0)]
    pub z0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub vc: f64,
    #[arg(long, default_value_t = 2.0)]
    pub d: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub vmin: f64,
    #[arg(long, default_value_t = 1e3)]
    pub vmax: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Logarithmic frequency spacing.
    #[arg(long = "log")]
    pub log_spacing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Drive {
    Step,
    Sin,
}

#[derive(Debug, Args)]
pub struct RelaxArgs {
    #[arg(long, default_value_t = 1.0)]
    pub z0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub vc: f64,
    #[arg(long, default_value_t = 2.0)]
    pub d: f64,
    #[arg(long, value_enum, default_value = "step")]
    pub drive: Drive,
    /// Angular frequency v of the drive sin(v t).
    #[arg(long, default_value_t = 1.0)]
    pub freq: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Number of samples; defaults to 10000 for a step and 12 cycles for a sine.
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMode {
    Eta,
    Zeta,
    Direct,
    Mobius,
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long, value_enum, default_value = "zeta")]
    pub mode: ZetaMode,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    /// Term count for direct/mobius, term budget for eta/zeta.
    #[arg(long, default_value_t = 1_000_000)]
    pub terms: u64,
    /// Absolute tolerance for eta/zeta.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Prime cutoff for the Euler product.
    #[arg(long, default_value_t = 100_000)]
    pub prime_limit: u64,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long = "from")]
    pub t_from: f64,
    #[arg(long = "to")]
    pub t_to: f64,
    #[arg(long = "step", default_value_t = 0.05)]
    pub grid_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    AsPrinted,
    BothMinus,
}

#[derive(Debug, Args)]
pub struct VarpiArgs {
    #[arg(long = "from", default_value_t = 0.1)]
    pub theta_from: f64,
    #[arg(long = "to", default_value_t = 5.0)]
    pub theta_to: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Prime cutoff.
    #[arg(long = "primes", default_value_t = 10_000)]
    pub prime_limit: u64,
    #[arg(long, value_enum, default_value = "as-printed")]
    pub convention: Convention,
}

#[derive(Debug, Args)]
pub struct Chart1Args {
    #[arg(long)]
    pub d: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 100)]
    pub terms: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table = match &cli.command {
        Command::Transfer(a) => commands::transfer(a),
        Command::Relax(a) => commands::relax(a),
        Command::Zeta(a) => commands::zeta(a),
        Command::Zeros(a) => commands::zeros(a),
        Command::Varpi(a) => commands::varpi(a),
        Command::Chart1(a) => commands::chart1(a),
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_numerical() { 3 } else { 2 });
        }
    };
    if let Err(e) = table.emit(cli.format, cli.out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
