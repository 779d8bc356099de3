//! `crgroups`: construct groups, run the verifiers and the measure computations.

mod construct;
mod groups;
mod measure;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use crgroups::report::RunReport;
use crgroups::Error;

#[derive(Parser, Debug)]
#[command(name = "crgroups", version, about = "Commutator-rigid group workbench")]
struct Cli {
    /// Seed for every randomized path.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for counting (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build parameter lists, first-stage groups and G2 groups.
    #[command(subcommand)]
    Construct(construct::ConstructCmd),
    /// Run an exact verifier.
    #[command(subcommand)]
    Verify(verify::VerifyCmd),
    /// Cylinder, tail, profile, witness and cover computations.
    #[command(subcommand)]
    Measure(measure::MeasureCmd),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Core(e) => match e {
                Error::TooLarge { .. }
                | Error::ClosureExceeded { .. }
                | Error::ConstructionFailed(_)
                | Error::ClauseDViolation(_) => 3,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Resource(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Construct(c) => construct::run(c, cli.seed),
        Command::Verify(c) => verify::run(c, cli.seed),
        Command::Measure(c) => measure::run(c, cli.seed),
    };
    let elapsed = start.elapsed();
    match result {
        Ok(report) => {
            emit(&report, cli.json);
            eprintln!("wall-time-ms {}", elapsed.as_millis());
            ExitCode::from(if report.failed() { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

/// Comma-separated list of integers.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry `{s}`")))
        })
        .collect()
}
