//! `wrlat`: searches, scans, analyses and simulations over well-rounded
//! lattice codes, with reproducible file output.

mod commands;
mod config;
mod failure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{AnalyzeOpts, Format, IdealScanOpts, RunConfig, SearchOpts, SimulateOpts};
use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "wrlat", version, about = "Well-rounded lattice codes: search, ideal scans, analysis and ECDP simulation")]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; a `<out>.meta.json` sidecar is written next to it. Stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML config, or a sidecar from an earlier run. Flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for well-rounded sublattices of Zⁿ of a given index.
    Search(SearchOpts),
    /// Scan real quadratic fields for well-rounded principal ideals.
    IdealScan(IdealScanOpts),
    /// Minima, well-roundedness, Hermite interval, analytic ECDP and product distance of lattices.
    Analyze(AnalyzeOpts),
    /// Monte Carlo ECDP curves of coset codes over a Rayleigh fading channel.
    Simulate(SimulateOpts),
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = match &cli.config {
        Some(p) => config::load(p)?,
        None => RunConfig::default(),
    };
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let (name, report, default_format) = match cli.command {
        Command::Search(o) => {
            let p = o.merge(file.search)?;
            let format = cli.format.or(file.format).unwrap_or(Format::Json);
            ("search", commands::search(&p, seed, format)?, format)
        }
        Command::IdealScan(o) => {
            let p = o.merge(file.ideal_scan)?;
            let format = cli.format.or(file.format).unwrap_or(Format::Csv);
            ("ideal-scan", commands::ideal_scan(&p, format)?, format)
        }
        Command::Analyze(o) => {
            let p = o.merge(file.analyze)?;
            let format = cli.format.or(file.format).unwrap_or(Format::Csv);
            ("analyze", commands::analyze(&p, format)?, format)
        }
        Command::Simulate(o) => {
            let p = o.merge(file.simulate)?;
            let format = cli.format.or(file.format).unwrap_or(Format::Csv);
            ("simulate", commands::simulate(&p, seed, format)?, format)
        }
    };
    output::emit(name, cli.out.as_deref(), seed, default_format, &report)?;
    if let Some(msg) = &report.diagnostic {
        eprintln!("{msg}");
    }
    Ok(report.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { failure::USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("wrlat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
