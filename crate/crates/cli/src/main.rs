//! `ratpow`: analyze the distinct rational-power factors of words, verify
//! the inequality chain behind the quadratic upper bound, generate the
//! extremal constructions, and search for maximizing words.
//!
//! Machine-readable JSON goes to stdout, human summaries to stderr. Exit
//! codes: 0 success, 1 a verified inequality or cross-check failed, 2
//! usage or input error.

mod commands;
mod stable_json;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ratpow", version, about = "Distinct rational-power analysis of finite words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline per word: counts, class statistics, circuit profile,
    /// and every word-level inequality check.
    Analyze(AnalyzeArgs),
    /// Grid checks of the continuous optimization facts.
    Verify(VerifyArgs),
    /// Generate a construction and report its predicted count.
    Construct(ConstructArgs),
    /// Maximize the count over words of a fixed length.
    Search(SearchArgs),
    /// Render a coefficient table from a search ledger.
    Table(TableArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Word to analyze (lowercase ASCII letters).
    word: Option<String>,
    /// Read words from a file instead: one word per line, '#' comments.
    #[arg(long, conflicts_with = "word")]
    file: Option<PathBuf>,
    /// Cross-check totals against the brute-force oracle (words up to
    /// length 400).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Steps per half-unit axis of the (a, s, y) grid; minimum 50.
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    /// Side of the packing (s, B) grid.
    #[arg(long, default_value_t = 50)]
    packing_resolution: usize,
    /// Random packing samples per grid cell.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    family: ConstructFamily,
}

#[derive(Subcommand)]
enum ConstructFamily {
    /// The runs family (a^n b a^{n-1} b)^4 a^{n-1}.
    Wn {
        #[arg(long)]
        n: usize,
    },
    /// The Fibonacci-morphic family Q^4 P a^d.
    Fib {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        d: usize,
        /// Fibonacci prefix length: 13, 21, 34, or 55.
        #[arg(long, default_value_t = 55)]
        prefix: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[command(subcommand)]
    mode: SearchModeArgs,
}

#[derive(Subcommand)]
enum SearchModeArgs {
    /// Exact maximum by exhaustive enumeration with symmetry pruning.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        /// Word-count budget; defaults to the binary space of length 22.
        #[arg(long)]
        budget: Option<u128>,
        /// CSV ledger to append the result row to.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Hill climbing with restarts.
    Heuristic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        #[arg(long, value_enum, default_value_t = InitArg::Random)]
        init: InitArg,
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Random,
    Wn,
    Fib,
}

#[derive(Args)]
struct TableArgs {
    /// CSV ledger produced by `search ... --ledger`.
    #[arg(long)]
    ledger: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Verify(args) => commands::verify(args),
        Command::Construct(args) => commands::construct(args),
        Command::Search(args) => commands::search(args),
        Command::Table(args) => commands::table(args),
    };
    match outcome {
        Ok(checks_passed) => {
            if checks_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
