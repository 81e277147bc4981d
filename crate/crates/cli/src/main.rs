use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zm_core::matching::sample_matchings;
use zm_core::scalar::{parse_rational, to_decimal_string};
use zm_core::verify::{run_suite, Suite, VerifyOptions};
use zm_core::zmeasure::{
    classify_parameters, plancherel_table, sample_partitions, zmeasure_table, DegenerateReading, MeasureTable,
    PartitionLaw, Series, ZMeasureParams,
};
use zm_core::{Error, ExactScalar};

/// Exact z-measures, Ewens-type measures on matchings and zonal spherical
/// functions. Parameters are exact strings: "3/2", "1+2i", "-i", "0.25".
#[derive(Parser)]
#[command(name = "zm", version)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full weight table over partitions of n.
    Table(TableArgs),
    /// Print the series of (z, z', θ).
    Classify(ClassifyArgs),
    /// Run a suite of exact identity checks and print a JSON report.
    Verify(VerifyArgs),
    /// Draw samples.
    #[command(subcommand)]
    Sample(SampleCommand),
}

#[derive(Args)]
struct LawArgs {
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zp: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    theta: String,
    /// Use the Plancherel weights n! θ^n / (H H') instead of (z, z').
    #[arg(long)]
    plancherel: bool,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    law: LawArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Symmetric,
    AsPrinted,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    zp: String,
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    /// Reading of the degenerate-series condition.
    #[arg(long, value_enum, default_value = "symmetric")]
    reading: Reading,
}

#[derive(Args)]
struct VerifyArgs {
    /// normalization, transposition, pushforward, cocycle, quasi-invariance,
    /// orthogonality, decomposition, explicit-formula, embedding,
    /// generating-identity or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Check this level only.
    #[arg(long)]
    n: Option<usize>,
    /// Check levels 1..=max-n (ignored with --n).
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Replace the default z grid of the spherical suites.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SampleCommand {
    /// Matchings from μ_t on X(n).
    Matching(SampleMatchingArgs),
    /// Partitions from a z-measure or the Plancherel measure.
    Partition(SamplePartitionArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SampleMatchingArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: SampleFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SamplePartitionArgs {
    #[command(flatten)]
    law: LawArgs,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: SampleFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Domain(Error),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => 2,
        Error::Capacity { .. } | Error::Pole { .. } | Error::NotAdmissible(_) | Error::LevelMismatch { .. } => 3,
        Error::Internal(_) => 1,
    }
}

fn scalar(s: &str) -> Result<ExactScalar, Error> {
    s.parse()
}

fn law(args: &LawArgs) -> Result<PartitionLaw, Error> {
    let theta = parse_rational(&args.theta)?;
    if args.plancherel {
        return Ok(PartitionLaw::Plancherel { theta, n: args.n });
    }
    let (Some(z), Some(zp)) = (&args.z, &args.zp) else {
        return Err(Error::InvalidParameter("--z and --zp are required unless --plancherel is given".into()));
    };
    Ok(PartitionLaw::ZMeasure(ZMeasureParams::new(scalar(z)?, scalar(zp)?, theta, args.n)?))
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn render_text(table: &MeasureTable) -> String {
    let mut s = String::new();
    for (lambda, w) in &table.entries {
        let decimal = match w.as_real() {
            Some(r) => to_decimal_string(r, 12),
            None => format!("{}{:+}i", to_decimal_string(w.re(), 12), to_decimal_string(w.im(), 12)),
        };
        s.push_str(&format!("{lambda}\t{w}\t{decimal}\n"));
    }
    s
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let table = match law(&args.law)? {
        PartitionLaw::ZMeasure(params) => zmeasure_table(&params)?,
        PartitionLaw::Plancherel { theta, n } => plancherel_table(&theta, n)?,
    };
    let text = match args.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&table.to_json()).expect("json")),
        Format::Text => render_text(&table),
    };
    emit(&args.out, &text)?;
    Ok(())
}

fn cmd_classify(args: &ClassifyArgs) -> Result<(), Failure> {
    let params = ZMeasureParams::new(scalar(&args.z)?, scalar(&args.zp)?, parse_rational(&args.theta)?, 1)?;
    let reading = match args.reading {
        Reading::Symmetric => DegenerateReading::Symmetric,
        Reading::AsPrinted => DegenerateReading::AsPrinted,
    };
    let class = classify_parameters(params.z(), params.z_prime(), params.theta(), reading);
    let name = match class.series {
        Series::Principal => "principal",
        Series::Complementary => "complementary",
        Series::Degenerate => "degenerate",
        Series::NonAdmissible => "non-admissible",
    };
    println!("{name}");
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let opts = VerifyOptions {
        n: args.n,
        max_n: args.max_n,
        z: args.z.as_deref().map(scalar).transpose()?,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let report = run_suite(suite, &opts)?;
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("json"));
    emit(&args.out, &text)?;
    for case in report.cases.iter().filter(|c| !c.passed()) {
        eprintln!("{case}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn lines<T>(items: &[T], format: SampleFormat, text: impl Fn(&T) -> String, json: impl Fn(&T) -> String) -> String {
    let mut s = String::new();
    for item in items {
        s.push_str(&match format {
            SampleFormat::Text => text(item),
            SampleFormat::Json => json(item),
        });
        s.push('\n');
    }
    s
}

fn cmd_sample(cmd: &SampleCommand) -> Result<(), Failure> {
    match cmd {
        SampleCommand::Matching(a) => {
            let t = parse_rational(&a.t)?;
            let draws = sample_matchings(&t, a.n, a.count, a.seed)?;
            let text = lines(&draws, a.format, |x| x.to_string(), |x| serde_json::to_string(x).expect("json"));
            emit(&a.out, &text)?;
        }
        SampleCommand::Partition(a) => {
            let draws = sample_partitions(&law(&a.law)?, a.count, a.seed)?;
            let text = lines(&draws, a.format, |p| p.to_string(), |p| serde_json::to_string(p).expect("json"));
            emit(&a.out, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sample(c) => cmd_sample(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Verification) => ExitCode::from(4),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
