//! `bfei`: analysis, constructions, sweeps and the reproduction suite from
//! the command line.
//!
//! Machine-readable documents go to standard output; progress and errors
//! go to standard error. Exit status: 0 success, 1 a check failed or the
//! computation errored, 2 invalid usage or input.

use std::path::PathBuf;
use std::process::ExitCode;

use bfei_core::construct::{
    gb_construction_report, ot_recursion_metrics, palindromic_extend, AnalyticReport,
};
use bfei_core::report::{emit_metrics, emit_spectrum_csv, to_versioned_json, Format};
use bfei_core::search::{
    checkpoint, sweep_with_progress, Filter, FunctionClass, Metric, SearchJob,
};
use bfei_core::verify::{run_verification_suite, Scope, Status};
use bfei_core::{analyze, walsh_transform, AnfExpression, Error, ExactValue, TruthTable};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default directory for sweep checkpoints.
const CHECKPOINT_DIR_ENV: &str = "BFEI_CHECKPOINT_DIR";

/// Longest truth table accepted inline; larger tables come from files.
const INLINE_MAX_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "bfei",
    version,
    about = "Exact entropy/influence analysis of Boolean functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metrics of one function.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
        /// Emit the Walsh spectrum as CSV instead of the metrics.
        #[arg(long)]
        spectrum: bool,
    },
    /// Analytic reports for the recursive constructions.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Exhaustive sweeps.
    Search(SearchArgs),
    /// Recompute the published values and report pass/fail per claim.
    Verify {
        #[arg(long, default_value = "fast")]
        scope: ScopeArg,
        /// Run only these claim ids.
        #[arg(long = "only")]
        only: Vec<String>,
    },
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Number of variables; required for ANF input and for one-digit tables.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Truth table in hex; bit x of the table is f(x), X1 is the low bit of x.
    #[arg(long)]
    tt: Option<String>,
    /// File holding a hex truth table.
    #[arg(long)]
    tt_file: Option<PathBuf>,
    /// Algebraic normal form, e.g. "X1X2 + X3".
    #[arg(long)]
    anf: Option<String>,
}

#[derive(Args)]
struct Base {
    #[command(flatten)]
    source: BaseSource,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BaseSource {
    /// Base function as a hex truth table.
    #[arg(long)]
    g: Option<String>,
    /// Base function as an ANF expression.
    #[arg(long)]
    g_anf: Option<String>,
}

#[derive(Subcommand)]
enum Construction {
    /// Order-m recursion f_m = g ◇ f_{m-1}, f_0 = g.
    Ot {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        m: u32,
    },
    /// Palindromic extension g_b; with --big, the report for g_b ◇ g.
    Palindrome {
        #[command(flatten)]
        base: Base,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        b: u8,
        #[arg(long)]
        big: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    General,
    Symmetric,
    #[value(alias = "rotation-symmetric")]
    Rotsym,
}

#[derive(Args)]
struct SearchArgs {
    class: ClassArg,
    #[arg(long)]
    n: usize,
    /// mei, ei or ot-mei:M
    #[arg(long, value_parser = parse_metric)]
    metric: Metric,
    /// balanced, plateaued, resilient:T or weight1-max-walsh; repeatable.
    #[arg(long = "filter", value_parser = parse_filter)]
    filters: Vec<Filter>,
    /// Also count the functions whose ratio equals this value, e.g. 512/225.
    #[arg(long)]
    count_achieving: Option<String>,
    /// Chunking: the class splits into 2^P work units.
    #[arg(long)]
    prefix_bits: Option<u32>,
    #[arg(long, default_value_t = bfei_core::search::DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
    /// Checkpoint file; resumed when it exists.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Directory for an automatically named checkpoint.
    #[arg(long, env = CHECKPOINT_DIR_ENV)]
    checkpoint_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Allow symmetric sweeps up to 16 variables.
    #[arg(long)]
    extended: bool,
    /// Suppress progress on standard error.
    #[arg(long)]
    quiet: bool,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    match s {
        "mei" => Ok(Metric::Mei),
        "ei" => Ok(Metric::Ei),
        _ => s
            .strip_prefix("ot-mei:")
            .and_then(|m| m.parse().ok())
            .map(|m| Metric::OtMei { m })
            .ok_or_else(|| format!("unknown metric {s:?} (mei, ei, ot-mei:M)")),
    }
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    match s {
        "balanced" => Ok(Filter::Balanced),
        "plateaued" => Ok(Filter::Plateaued),
        "weight1-max-walsh" => Ok(Filter::Weight1MaxWalsh),
        _ => s
            .strip_prefix("resilient:")
            .and_then(|t| t.parse().ok())
            .map(Filter::Resilient)
            .ok_or_else(|| format!("unknown filter {s:?}")),
    }
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::CorruptCheckpoint { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Arity of a hex table with `digits` digits, when determined.
fn arity_from_hex(digits: usize) -> Option<usize> {
    match digits {
        0 | 1 => None,
        d if d.is_power_of_two() => Some(d.trailing_zeros() as usize + 2),
        _ => None,
    }
}

fn table_from_hex(hex: &str, n: Option<usize>, max_n: usize) -> Result<TruthTable, Failure> {
    let digits = hex.trim().trim_start_matches("0x");
    let n = match n.or_else(|| arity_from_hex(digits.len())) {
        Some(n) => n,
        None => {
            return Err(usage(
                "cannot infer the arity from the table length; pass --n",
            ))
        }
    };
    if n > max_n {
        return Err(usage(format!(
            "inline tables are limited to {max_n} variables; use --tt-file"
        )));
    }
    Ok(TruthTable::from_hex(n, digits)?)
}

fn table_from_anf(expr: &str, n: Option<usize>) -> Result<TruthTable, Failure> {
    let n = n.ok_or_else(|| usage("--n is required with ANF input"))?;
    Ok(AnfExpression::parse(expr, n)?.to_truth_table())
}

fn read_input(input: &Input) -> Result<TruthTable, Failure> {
    let src = &input.source;
    if let Some(hex) = &src.tt {
        table_from_hex(hex, input.n, INLINE_MAX_N)
    } else if let Some(path) = &src.tt_file {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        table_from_hex(text.trim(), input.n, bfei_core::truth_table::N_MAX)
    } else {
        table_from_anf(src.anf.as_deref().unwrap_or_default(), input.n)
    }
}

fn read_base(base: &Base) -> Result<TruthTable, Failure> {
    match (&base.source.g, &base.source.g_anf) {
        (Some(hex), _) => table_from_hex(hex, base.n, INLINE_MAX_N),
        (None, Some(anf)) => table_from_anf(anf, base.n),
        (None, None) => Err(usage("a base function is required")),
    }
}

/// Exit status 1 when a consistency check inside the report failed.
fn emit_analytic(r: &AnalyticReport) -> Result<u8, Failure> {
    println!("{}", to_versioned_json(r)?);
    Ok(u8::from(r.checks.values().any(|ok| !ok)))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            input,
            format,
            spectrum,
        } => {
            let f = read_input(&input)?;
            if spectrum {
                print!("{}", emit_spectrum_csv(&walsh_transform(&f)?));
            } else {
                let format = match format {
                    OutputFormat::Json => Format::Json,
                    OutputFormat::Csv => Format::Csv,
                };
                let doc = emit_metrics(&analyze(&f)?, format)?;
                println!("{}", doc.trim_end());
            }
            Ok(0)
        }
        Command::Construct { which } => match which {
            Construction::Ot { base, m } => {
                emit_analytic(&ot_recursion_metrics(&read_base(&base)?, m)?)
            }
            Construction::Palindrome { base, b, big } => {
                let g = read_base(&base)?;
                if big {
                    return emit_analytic(&gb_construction_report(&g, b == 1)?);
                }
                let (gb, spec) = palindromic_extend(&g, b == 1)?;
                let doc = serde_json::json!({
                    "construction": "palindromic-extension",
                    "b": b,
                    "n": gb.n(),
                    "truth_table": gb.to_hex(),
                    "epsilon_b": spec.epsilon_b,
                    "metrics": analyze(&gb)?,
                });
                println!("{}", to_versioned_json(&doc)?);
                Ok(0)
            }
        },
        Command::Search(args) => search(args),
        Command::Verify { scope, only } => {
            let scope = if !only.is_empty() {
                Scope::Only(only)
            } else {
                match scope {
                    ScopeArg::Fast => Scope::Fast,
                    ScopeArg::Full => Scope::Full,
                }
            };
            let ledger = run_verification_suite(&scope);
            for e in &ledger.entries {
                let tag = match e.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                eprintln!(
                    "{tag} {} expected {} computed {}",
                    e.claim_id, e.expected, e.computed
                );
            }
            println!("{}", to_versioned_json(&ledger)?);
            Ok(ledger.exit_code() as u8)
        }
    }
}

fn search(args: SearchArgs) -> Result<u8, Failure> {
    let class = match args.class {
        ClassArg::General => FunctionClass::General,
        ClassArg::Symmetric => FunctionClass::Symmetric,
        ClassArg::Rotsym => FunctionClass::RotationSymmetric,
    };
    let mut job = SearchJob::new(class, args.n, args.metric)
        .allow_extended(args.extended)
        .witness_cap(args.witness_cap)
        .threads(args.threads);
    for f in args.filters {
        job = job.filter(f);
    }
    if let Some(t) = &args.count_achieving {
        job = job.count_achieving(ExactValue::parse(t)?);
    }
    if let Some(p) = args.prefix_bits {
        job = job.prefix_bits(p);
    }
    job.validate()?;
    if let Some(path) = args.resume {
        job = job.checkpoint(path);
    } else if let Some(dir) = args.checkpoint_dir {
        std::fs::create_dir_all(&dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        let path = checkpoint::default_path(&dir, job.fingerprint());
        job = job.checkpoint(path);
    }
    let quiet = args.quiet;
    let last = std::sync::atomic::AtomicU64::new(u64::MAX);
    let progress = move |done: u64, total: u64| {
        if quiet {
            return;
        }
        let pct = done * 100 / total;
        if last.swap(pct, std::sync::atomic::Ordering::Relaxed) != pct {
            eprintln!("search: {done}/{total} chunks ({pct}%)");
        }
    };
    let result = sweep_with_progress(&job, &progress)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&result).map_err(Error::from)?
    );
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("bfei: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
