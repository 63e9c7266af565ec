//! Command-line front end: scenario parsing, check dispatch and report files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod output;
pub mod scenario;

use checks::{Family, RunOptions};
use clap::{Parser, Subcommand, ValueEnum};
use littlewood::potential::Quadrature;
use scenario::Format;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "littlewood",
    version,
    about = "Verify subordination inequalities for scenario files"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Quadrature nodes (power of two, at least 256).
    #[arg(long, global = true, default_value_t = 1024)]
    pub nodes: usize,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Report format; overrides the scenario's `output` line.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check in the scenario.
    Verify { scenario: PathBuf },
    /// Run the envelope and Green function checks.
    Green { scenario: PathBuf },
    /// Run the coefficient checks.
    Coeffs { scenario: PathBuf },
    /// Run the zero and preimage checks.
    Zeros { scenario: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

pub const EXIT_PARSE: i32 = 1;

/// Runs the parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let (family, path) = match &cli.command {
        Command::Verify { scenario } => (Family::Verify, scenario),
        Command::Green { scenario } => (Family::Green, scenario),
        Command::Coeffs { scenario } => (Family::Coeffs, scenario),
        Command::Zeros { scenario } => (Family::Zeros, scenario),
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let scenario = match scenario::parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let checks = match checks::prepare(&scenario) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let quadrature = match Quadrature::new(cli.nodes) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("error: --nodes: {e}");
            return EXIT_PARSE;
        }
    };
    let opts = RunOptions {
        seed: cli.seed,
        quadrature,
        grid: scenario.plot.unwrap_or_default(),
    };
    let records = checks::run_all(&scenario, &checks, family, &opts);
    let format = match cli.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
        None => scenario.format.unwrap_or_default(),
    };
    if let Err(e) = output::write_outputs(&cli.out, &records, format) {
        eprintln!("error: cannot write to {}: {e}", cli.out.display());
        return EXIT_PARSE;
    }
    for r in &records {
        println!(
            "{:<24} {:<20} margin {}",
            r.check,
            r.outcome.as_str(),
            checks::fmt_num(r.margin.0)
        );
    }
    checks::exit_code(&records)
}
