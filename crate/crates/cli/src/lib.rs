//! Command-line front end for the bound-state solver.
//!
//! `solve`, `verify`, `wavefunction` and `catalog` each build a report,
//! render it as JSON or CSV and write it atomically. Failures map to exit
//! codes through [`CliError::exit_code`].

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;

pub use args::Cli;
pub use error::{CliError, CliResult};

use args::{Command, Format};
use config::RunConfig;

fn render<J, C>(format: Format, report: &J, csv: C) -> CliResult<String>
where
    J: serde::Serialize,
    C: FnOnce() -> CliResult<String>,
{
    match format {
        Format::Json => report::to_json(report),
        Format::Csv => csv(),
    }
}

/// Runs one subcommand to completion.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(args) => {
            let cfg = RunConfig::from_args(&args, Format::Json)?;
            let r = commands::solve(&cfg)?;
            output::emit(&render(cfg.format, &r, || r.to_csv())?, cfg.out.as_deref())
        }
        Command::Verify(args) => {
            let cfg = RunConfig::from_args(&args, Format::Json)?;
            let r = commands::verify(&cfg)?;
            output::emit(&render(cfg.format, &r, || r.to_csv())?, cfg.out.as_deref())?;
            if r.pass {
                Ok(())
            } else {
                let failed: Vec<String> = r
                    .states
                    .iter()
                    .filter(|s| !s.pass)
                    .map(|s| format!("n={} l={}", s.n, s.l))
                    .collect();
                Err(CliError::Disagreement(format!("engines disagree for {}", failed.join(", "))))
            }
        }
        Command::Wavefunction(args) => {
            let cfg = RunConfig::from_args(&args.state, Format::Csv)?;
            let r = commands::wavefunction(&cfg, args.points, args.r_max)?;
            output::emit(&render(cfg.format, &r, || r.to_csv())?, cfg.out.as_deref())
        }
        Command::Catalog(args) => {
            let r = commands::catalog(args.model.as_deref())?;
            let text = render(args.format.unwrap_or(Format::Json), &r, || r.to_csv())?;
            output::emit(&text, args.out.as_deref())
        }
    }
}
