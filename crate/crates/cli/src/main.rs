//! `lisfm`: build and verify matroids derived from linearly independent set
//! families.
//!
//! Exit codes: 0 success (all checks passed), 1 suite failures, 2 input or
//! parameter error, 3 selection budget exceeded, 4 construction hypotheses
//! not met.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lisf_matroid_cli::commands::{
    self, CommandOutcome, ExampleName,
};
use lisf_matroid_cli::suite::{SuiteKind, SuiteOptions};
use lisf_matroid_cli::CliError;

#[derive(Parser)]
#[command(name = "lisfm", version, about = "Matroids from linearly independent set families")]
struct Cli {
    /// Write the machine readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    emit_report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the family in FILE is a linearly independent set family.
    CheckLisf {
        file: PathBuf,
        /// Also run a randomized dependence search with this many trials.
        #[arg(long, value_name = "TRIALS")]
        sampled: Option<u64>,
        /// Seed of the randomized search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the selection enumeration budget.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// List the label subsets whose subfamilies are LISFs.
    BuildMatroid {
        file: PathBuf,
        /// Check the independence axioms and print witnesses for failures.
        #[arg(long)]
        verify_axioms: bool,
        /// Print rank, bases, and circuits.
        #[arg(long)]
        summary: bool,
        /// Compare against the linear matroid of the per-set direction
        /// vectors (families of collinear finite sets only).
        #[arg(long)]
        oracle: bool,
        /// Override the selection enumeration budget.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Print a built-in counterexample family and its full pipeline report.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
    /// Run a randomized verification suite.
    RandomSuite {
        #[arg(value_enum)]
        kind: SuiteKind,
        /// Base seed; instance i uses a seed derived from (seed, i).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of instances (default 1000 for t3, 300 for t4, 500 for
        /// corollaries).
        #[arg(long)]
        count: Option<usize>,
        /// Size bound named after the construction parameter: maximum number
        /// of sets for t3 and corollaries, maximum summand dimension for t4.
        #[arg(long, visible_alias = "dim-n")]
        n: Option<usize>,
        /// Maximum ambient dimension.
        #[arg(long)]
        l: Option<usize>,
        /// Maximum number of summands (t4 only).
        #[arg(long)]
        k: Option<usize>,
        /// Fix the coefficient field instead of cycling the per-kind list.
        #[arg(long)]
        field: Option<String>,
        /// Directory for replayable dumps of failing instances.
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
    },
    /// Compare greedy and exhaustive maximum weight members.
    Greedy {
        file: PathBuf,
        /// Comma separated nonnegative rational weights, one per set.
        #[arg(long, value_name = "W1,...,WN")]
        weights: String,
    },
}

fn dispatch(command: Command) -> Result<CommandOutcome, CliError> {
    match command {
        Command::CheckLisf {
            file,
            sampled,
            seed,
            budget,
        } => commands::run_check_lisf(&file, sampled, seed, budget),
        Command::BuildMatroid {
            file,
            verify_axioms,
            summary,
            oracle,
            budget,
        } => commands::run_build_matroid(&file, verify_axioms, summary, oracle, budget),
        Command::Example { name } => commands::run_example(name),
        Command::RandomSuite {
            kind,
            seed,
            count,
            n,
            l,
            k,
            field,
            dump_dir,
        } => commands::run_random_suite(
            kind,
            &SuiteOptions {
                seed,
                count,
                n,
                l,
                k,
                field,
                dump_dir,
            },
        ),
        Command::Greedy { file, weights } => commands::run_greedy(&file, &weights),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emit_report = cli.emit_report;
    match dispatch(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.report.render_text());
            if let Some(path) = emit_report {
                if let Err(e) = std::fs::write(&path, outcome.report.to_json()) {
                    eprintln!("error: cannot write report to {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).expect("small exit codes"))
        }
    }
}
