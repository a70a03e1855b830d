//! Command-line front end: fit one dataset, compare every method, rebuild
//! the built-in report tables and figures, emit the built-in sample, or
//! time the estimators. Every failure exits nonzero after exactly one
//! diagnostic line on the error stream.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use legfit::{
    compare_report, default_table_precision, figure_data, fit_method, fit_pipeline_at,
    render_compare, render_figure, render_fit_report, render_table, reproduce_table,
    sample_test_function, Dataset, MethodTag, OutputFormat, COMPARED_METHODS,
};

#[derive(Parser)]
#[command(
    name = "legfit",
    version,
    about = "Polynomial least-squares fitting of equidistant samples"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a polynomial to a dataset of equidistant samples
    Fit(FitArgs),
    /// Fit with every comparison method and print coefficients side by side
    Compare(CompareArgs),
    /// Rebuild one of the built-in report tables or figure datasets
    Reproduce(ReproduceArgs),
    /// Write an equidistant sample of the built-in test function
    Sample(SampleArgs),
    /// Time the comparison methods on the built-in sample
    Bench(BenchArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Dataset file with one "x,y" pair per row
    #[arg(long)]
    input: Option<PathBuf>,
    /// Polynomial degree
    #[arg(long, default_value_t = 30, allow_negative_numbers = true)]
    degree: i64,
    /// rectangle-simple | rectangle-orthonormal | trapezoid-simple |
    /// trapezoid-orthonormal | ols-orthonormal
    #[arg(long, default_value = "trapezoid-orthonormal")]
    method: String,
    /// Working precision in decimal digits (16 or 32)
    #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
    precision: i64,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// text | csv | structured
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct CompareArgs {
    /// Dataset file with one "x,y" pair per row
    #[arg(long)]
    input: Option<PathBuf>,
    /// Polynomial degree
    #[arg(long, default_value_t = 30, allow_negative_numbers = true)]
    degree: i64,
    /// Working precision in decimal digits (16 or 32)
    #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
    precision: i64,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// text | csv | structured
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Report table to rebuild (1..=4)
    #[arg(long, allow_negative_numbers = true)]
    table: Option<i64>,
    /// Figure dataset to rebuild (1 or 2)
    #[arg(long, allow_negative_numbers = true)]
    figure: Option<i64>,
    /// Override the table's native precision (16 or 32)
    #[arg(long, allow_negative_numbers = true)]
    precision: Option<i64>,
    /// Write the artifact here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// text | csv | structured
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of sample points
    #[arg(long, default_value_t = 629, allow_negative_numbers = true)]
    n: i64,
    /// Write the dataset here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Repetitions per method
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    repeat: i64,
    /// Polynomial degree
    #[arg(long, default_value_t = 30, allow_negative_numbers = true)]
    degree: i64,
    /// Number of sample points
    #[arg(long, default_value_t = 629, allow_negative_numbers = true)]
    n: i64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let line = e.to_string();
            let line = line
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("bad arguments");
            eprintln!("{}", line.trim());
            return ExitCode::FAILURE;
        }
    };
    let Some(command) = cli.command else {
        eprintln!("error: expected a subcommand: fit, compare, reproduce, sample, or bench");
        return ExitCode::FAILURE;
    };
    match run(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Fit(args) => cmd_fit(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn cmd_fit(args: FitArgs) -> Result<()> {
    let degree = parse_degree(args.degree)?;
    let method = parse_method(&args.method)?;
    let precision = parse_precision(args.precision)?;
    let format: OutputFormat = args.format.parse()?;
    let ds = load_dataset(args.input.as_deref(), "fit")?;
    let report = fit_pipeline_at(&ds, degree, method, precision)?;
    emit(args.output.as_deref(), &render_fit_report(&report, format))
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let degree = parse_degree(args.degree)?;
    let precision = parse_precision(args.precision)?;
    let format: OutputFormat = args.format.parse()?;
    let ds = load_dataset(args.input.as_deref(), "compare")?;
    let report = compare_report(&ds, degree, precision)?;
    emit(args.output.as_deref(), &render_compare(&report, format))
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<()> {
    let format: OutputFormat = args.format.parse()?;
    let rendered = match (args.table, args.figure) {
        (Some(id), None) => {
            let id = parse_small_id(id)?;
            let precision = match args.precision {
                Some(p) => parse_precision(p)?,
                None => default_table_precision(id)?,
            };
            render_table(&reproduce_table(id, precision)?, format)
        }
        (None, Some(id)) => render_figure(&figure_data(parse_small_id(id)?)?, format),
        _ => bail!("reproduce requires exactly one of --table or --figure"),
    };
    emit(args.output.as_deref(), &rendered)
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let n = usize::try_from(args.n)
        .ok()
        .filter(|&n| n >= 2)
        .ok_or_else(|| anyhow!("sample needs --n of at least 2, got {}", args.n))?;
    let ds = sample_test_function::<f64>(n)?;
    match args.output.as_deref() {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            ds.save(file)?;
        }
        None => ds.save(io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let repeat = usize::try_from(args.repeat)
        .ok()
        .filter(|&r| r >= 1)
        .ok_or_else(|| anyhow!("bench needs --repeat of at least 1, got {}", args.repeat))?;
    let degree = parse_degree(args.degree)?;
    let n = usize::try_from(args.n)
        .ok()
        .filter(|&n| n >= 2)
        .ok_or_else(|| anyhow!("bench needs --n of at least 2, got {}", args.n))?;
    let ds = sample_test_function::<f64>(n)?.normalize()?;

    let mut fastest: Option<(MethodTag, f64)> = None;
    let mut out = String::new();
    for method in COMPARED_METHODS {
        let mut times = Vec::with_capacity(repeat);
        for _ in 0..repeat {
            let start = Instant::now();
            fit_method(&ds, degree, method)?;
            times.push(start.elapsed().as_secs_f64());
        }
        let mean = times.iter().sum::<f64>() / repeat as f64;
        let min = times.iter().cloned().fold(f64::INFINITY, f64::min);
        out.push_str(&format!(
            "{}: mean = {mean:.6} s, min = {min:.6} s over {repeat} runs\n",
            method.name()
        ));
        if fastest.is_none_or(|(_, best)| mean < best) {
            fastest = Some((method, mean));
        }
    }
    let (winner, _) = fastest.expect("at least one method timed");
    out.push_str(&format!("fastest by mean: {}\n", winner.name()));
    print!("{out}");
    Ok(())
}

fn load_dataset(input: Option<&Path>, command: &str) -> Result<Dataset<f64>> {
    let path = input.ok_or_else(|| anyhow!("{command} requires --input"))?;
    let file = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(Dataset::load(BufReader::new(file))?)
}

fn parse_degree(degree: i64) -> Result<usize> {
    usize::try_from(degree).map_err(|_| anyhow!("degree must be nonnegative, got {degree}"))
}

fn parse_precision(precision: i64) -> Result<u32> {
    match precision {
        16 => Ok(16),
        32 => Ok(32),
        other => bail!("precision must be 16 or 32, got {other}"),
    }
}

fn parse_method(name: &str) -> Result<MethodTag> {
    MethodTag::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = MethodTag::ALL.iter().map(|m| m.name()).collect();
        anyhow!(
            "unknown method '{name}' (expected one of: {})",
            names.join(", ")
        )
    })
}

fn parse_small_id(id: i64) -> Result<u8> {
    u8::try_from(id).map_err(|_| anyhow!("id must be a small positive integer, got {id}"))
}

fn emit(output: Option<&Path>, rendered: &str) -> Result<()> {
    match output {
        Some(path) => {
            let mut file =
                File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            file.write_all(rendered.as_bytes())?;
        }
        None => io::stdout().lock().write_all(rendered.as_bytes())?,
    }
    Ok(())
}
