use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bsf", version, about = "Bound-state spectra of exactly solvable wave equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the spectral value of one or more states.
    Solve(StateArgs),
    /// Run every applicable engine and compare them.
    Verify(StateArgs),
    /// Sample the eigenfunction on a radial grid.
    Wavefunction(WaveArgs),
    /// List models and their parameters.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub model: String,
    /// Parameter override, repeatable.
    #[arg(long = "param", value_name = "NAME=VAL")]
    pub params: Vec<String>,
    /// Radial quantum number: `3`, `0..3` (inclusive) or `0,2,5`.
    #[arg(long, default_value = "0")]
    pub n: String,
    /// Orbital quantum number, same syntax as `--n`.
    #[arg(long, default_value = "0")]
    pub l: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i32>,
    #[arg(long)]
    pub j: Option<f64>,
    /// Engines to run (`solve` only).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub engine: Vec<EngineArg>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance override, repeatable: formula_aim, formula_shooting, aim_shooting.
    #[arg(long = "tol", value_name = "NAME=VAL")]
    pub tol: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Number of radial samples.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Last sampled radius; chosen from the decay of the state when absent.
    #[arg(long)]
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Formula,
    Aim,
    Shooting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
