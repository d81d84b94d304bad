//! Command-line front end: run scenario files or their full verification
//! suite. Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 guard violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use inertia::scenario::{execute, Format, Overrides};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliFormat {
    Json,
    Csv,
}

impl From<CliFormat> for Format {
    fn from(f: CliFormat) -> Format {
        match f {
            CliFormat::Json => Format::Json,
            CliFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Parser)]
#[command(name = "inertia", about = "Exact homology tables for linear group and circle actions on polynomial models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonOpts {
    /// Scenario file (JSON)
    scenario: PathBuf,
    /// Output directory for artifacts
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifact format override
    #[arg(long, value_enum)]
    format: Option<CliFormat>,
    /// Seed override for randomized structural checks
    #[arg(long)]
    seed: Option<u64>,
    /// Worker thread count (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the scenario's task list and write artifacts
    Run(CommonOpts),
    /// Run only the full cross-check suite for the scenario's action
    Verify(CommonOpts),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, verify_only) = match cli.command {
        Command::Run(o) => (o, false),
        Command::Verify(o) => (o, true),
    };
    if let Some(jobs) = opts.jobs {
        // Ignore failure: the global pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let ov = Overrides {
        out: opts.out,
        format: opts.format.map(Format::from),
        seed: opts.seed,
        verify_only,
    };
    ExitCode::from(execute(&opts.scenario, &ov) as u8)
}
