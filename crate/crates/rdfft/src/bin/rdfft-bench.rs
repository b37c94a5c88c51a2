//! Thin CLI over [`rdfft::bench`]: times the kernels, verifies them against
//! the reference transforms and audits allocations.
//!
//! Exit codes: 0 ok, 1 config error, 2 threshold violation (with
//! `--strict`).

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;

use rdfft::bench::{emit_report, run_bench, BenchConfig, BenchError, BenchOp, OutputFormat};
use rdfft::Precision;

// Allocation columns are measured, not assumed: the counting allocator has
// to be the process-global allocator.
#[global_allocator]
static ALLOC: rdfft::CountingAllocator = rdfft::CountingAllocator;

#[derive(Parser, Debug)]
#[command(
    name = "rdfft-bench",
    about = "Benchmark and verify the in-place real-domain FFT kernels",
    disable_help_subcommand = true
)]
struct Cli {
    /// Operations to measure (comma list of fft, ifft, roundtrip,
    /// circulant-fwd, circulant-bwd); all of them when omitted.
    #[arg(long, value_delimiter = ',')]
    op: Vec<String>,

    /// Transform sizes / circulant block sizes, comma list of powers of two.
    #[arg(long, value_delimiter = ',', default_values_t = [512usize, 1024, 4096])]
    sizes: Vec<usize>,

    /// Working precisions (f32, f64, or both); both when omitted.
    #[arg(long, value_delimiter = ',')]
    precision: Vec<String>,

    /// Timed repetitions per cell.
    #[arg(long, default_value_t = 1000)]
    reps: usize,

    /// Untimed warmup calls per cell.
    #[arg(long, default_value_t = 5)]
    warmup: usize,

    /// RNG seed for input generation (RDFFT_BENCH_SEED overrides this).
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output format: human, json or csv.
    #[arg(long, default_value = "human")]
    format: String,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Compute error columns against the 64-bit reference transforms.
    #[arg(long)]
    verify: bool,

    /// Let accuracy/allocation thresholds gate the exit status.
    #[arg(long)]
    strict: bool,
}

fn parse_list<T: FromStr<Err = String>>(
    items: &[String],
    default: Vec<T>,
) -> Result<Vec<T>, String> {
    if items.is_empty() {
        return Ok(default);
    }
    items.iter().map(|s| T::from_str(s)).collect()
}

fn build_config(cli: &Cli) -> Result<BenchConfig, String> {
    let mut seed = cli.seed;
    if let Ok(env_seed) = std::env::var("RDFFT_BENCH_SEED") {
        seed = env_seed
            .parse()
            .map_err(|e| format!("RDFFT_BENCH_SEED: {e}"))?;
    }
    Ok(BenchConfig {
        ops: parse_list(&cli.op, BenchOp::ALL.to_vec())?,
        sizes: cli.sizes.clone(),
        precisions: parse_list(&cli.precision, vec![Precision::F32, Precision::F64])?,
        reps: cli.reps,
        warmup: cli.warmup,
        seed,
        verify: cli.verify,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    let format = match OutputFormat::from_str(&cli.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let report = match run_bench(&config) {
        Ok(r) => r,
        Err(BenchError::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(BenchError::Kernel(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let rendered = emit_report(&report, format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{rendered}"),
    }

    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }

    let violations = report.violations();
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("threshold violation: {v}");
        }
        if cli.strict {
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}
