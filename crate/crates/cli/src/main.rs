//! `igflab` command-line front end. Reports go to stdout as CSV (or an
//! aligned table with `--pretty`), preceded by one `#` provenance line.

mod commands;
mod input;
mod reproduce;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use igflab::experiments::DEFAULT_SEED;
use igflab::parallel::with_jobs;
use igflab::{Error, Parallelism};
use sha2::{Digest, Sha256};
use thiserror::Error as ThisError;

use commands::Ctx;
use table::Table;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(Error::Config(_) | Error::InvalidParam(_) | Error::InvalidSample(_)) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "igflab", version, about = "Rényi information and divergence generating functions")]
struct Cli {
    /// Print an aligned table instead of CSV.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads (default: all logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Master seed for randomized commands.
    #[arg(long, global = true, env = "IGFLAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rényi information generating function `δ(α)(∫f^α)^{β-1}`.
    Rigf(commands::RigfArgs),
    /// Golomb's information generating function `∫f^γ`.
    Igf(commands::IgfArgs),
    /// Rényi divergence generating function `δ*(α)(∫f^α g^{1-α})^{β-1}`.
    Rdigf(commands::RdigfArgs),
    /// Rényi and Shannon entropies, informational energy and divergences.
    Entropy(commands::EntropyArgs),
    /// Kernel and maximum-likelihood RIGF estimates from a sample.
    Estimate(commands::EstimateArgs),
    /// Monte Carlo comparison of the estimators from a JSON study config.
    Simulate(commands::SimulateArgs),
    /// Coherent systems of iid components.
    System(commands::SystemArgs),
    /// Chaotic-map orbits, bifurcation sweeps and orbit RIGF estimates.
    Chaos(commands::ChaosArgs),
    /// Maximum-likelihood fits with AIC, AICc and BIC.
    Fit(commands::FitArgs),
    /// Divergence-based and simulation-based model selection.
    Modelselect {
        #[command(subcommand)]
        study: commands::ModelSelect,
    },
    /// Regenerate a reference table with pass/fail per row.
    Reproduce(reproduce::ReproduceArgs),
}

struct Report {
    table: Table,
    /// Tagged rows that failed in `reproduce --check`.
    check_failures: usize,
    /// Seed actually used, when a config file supplies its own.
    seed: Option<u64>,
    /// Resolved configuration text folded into the provenance digest.
    config: Option<String>,
}

impl Report {
    fn plain(table: Table) -> Self {
        Report { table, check_failures: 0, seed: None, config: None }
    }
}

fn run(cli: &Cli, ctx: Ctx) -> Result<Report, CliError> {
    let table = match &cli.command {
        Command::Rigf(a) => commands::rigf(a)?,
        Command::Igf(a) => commands::igf(a)?,
        Command::Rdigf(a) => commands::rdigf_cmd(a)?,
        Command::Entropy(a) => commands::entropy(a)?,
        Command::Estimate(a) => commands::estimate(a, ctx)?,
        Command::Simulate(a) => {
            let (table, config) = commands::simulate(a, ctx)?;
            let text = serde_json::to_string(&config).map_err(|e| CliError::Config(e.to_string()))?;
            return Ok(Report { table, check_failures: 0, seed: Some(config.seed), config: Some(text) });
        }
        Command::System(a) => commands::system(a)?,
        Command::Chaos(a) => commands::chaos(a, ctx)?,
        Command::Fit(a) => commands::fit(a)?,
        Command::Modelselect { study } => commands::modelselect(study, ctx)?,
        Command::Reproduce(a) => {
            let out = reproduce::run(a, ctx)?;
            let failures = if a.check { out.failures } else { 0 };
            return Ok(Report { check_failures: failures, ..Report::plain(out.table) });
        }
    };
    Ok(Report::plain(table))
}

/// Version, seed and a digest of the parsed invocation.
fn provenance(cli: &Cli, report: &Report) -> String {
    let seed = report.seed.unwrap_or(cli.seed);
    let config = report.config.as_deref().unwrap_or("");
    let digest = Sha256::digest(format!("{:?}|{seed}|{config}", cli.command).as_bytes());
    let hash: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("# igflab {} seed={seed} config={hash}\n", env!("CARGO_PKG_VERSION"))
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = if cli.pretty { report.table.to_pretty() } else { report.table.to_csv() };
    let text = provenance(cli, report) + &body;
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { seed: cli.seed, mode: Parallelism::Parallel };
    let result = with_jobs(cli.jobs, || run(&cli, ctx));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("igflab: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("igflab: {e}");
        return ExitCode::from(e.exit_code());
    }
    if report.check_failures > 0 {
        eprintln!("igflab: {} tagged row(s) outside tolerance", report.check_failures);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
