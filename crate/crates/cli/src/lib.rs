//! `gridrk` command-line front end: corpus generation, search, cross-engine
//! verification and benchmarking.
//!
//! Exit codes: 0 success (or at least one match for `search`), 1 no match /
//! verification failure, 2 any error.

pub mod args;
mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use args::{parse_size, EngineArgs, EngineKind, PatternArgs};
pub use commands::{compare_engines, run_engine, Discrepancy};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO_MATCH: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gridrk",
    version,
    about = "Shift-add Rabin-Karp search with a grid/block/thread parallel engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random DNA corpus as raw bytes
    Gen(GenArgs),
    /// List every match as `MATCH <pattern-index> <offset>`
    Search(SearchArgs),
    /// Run the naive, sequential and parallel engines and compare their results
    Verify(VerifyArgs),
    /// Time sequential against parallel search across a parameter sweep
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Byte count, with optional KB/MB/GB suffix
    #[arg(long, value_parser = parse_size)]
    pub size: usize,
    /// Symbols to draw from, in order
    #[arg(long, default_value = "ACGT")]
    pub alphabet: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Text file, read as raw bytes
    pub text: PathBuf,
    #[command(flatten)]
    pub patterns: PatternArgs,
    #[arg(long, value_enum, default_value_t = EngineKind::Seq)]
    pub engine: EngineKind,
    #[command(flatten)]
    pub engine_args: EngineArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub text: PathBuf,
    #[command(flatten)]
    pub patterns: PatternArgs,
    #[command(flatten)]
    pub engine_args: EngineArgs,
    /// Also print the agreed match listing
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternSourceArg {
    Sampled,
    Generated,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// workers | pattern_length | file_size | block_dim
    #[arg(long)]
    pub axis: String,
    /// Comma-separated axis values [default: the axis' reference values]
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<String>,
    /// Corpus size for axes other than file_size
    #[arg(long, value_parser = parse_size, default_value = "20MB")]
    pub size: usize,
    #[arg(long, default_value_t = 7)]
    pub pattern_len: usize,
    #[arg(long, value_enum, default_value_t = PatternSourceArg::Sampled)]
    pub pattern_source: PatternSourceArg,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[command(flatten)]
    pub engine_args: EngineArgs,
    /// Report path. Without --format, writes both <out>.csv and <out>.json
    #[arg(long, default_value = "bench_report")]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
}

/// Runs a parsed command, writing listings to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a, out),
        Command::Search(a) => commands::search(&a, out),
        Command::Verify(a) => commands::verify(&a, out),
        Command::Bench(a) => commands::bench(&a, out),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    };
    if out.flush().is_err() {
        return EXIT_ERROR;
    }
    code
}
