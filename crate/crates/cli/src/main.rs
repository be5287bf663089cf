//! Command-line surface for the partial multiple L-value engine: truncated
//! evaluation, exact closed forms, generating-function coefficients, the
//! verification suites, and grid tabulation.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (the failing
//! identities are named on stderr), 2 on usage errors.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plmv::lvalues::{
    closed_s_k_n, closed_s_k_n1, genfun_p_exact, genfun_p_numeric, oracle_eval, LValueSpec,
};
use plmv::symbolic::{normalize_even_zetas, SymbolicValue};
use plmv::verify::{check_names, check_suite, run_check, CheckOutcome, Suite, VerifyConfig};

const TRUNCATION_MIN: u64 = 10;
const TRUNCATION_MAX: u64 = 100_000_000;

#[derive(Parser)]
#[command(
    name = "plmv",
    version,
    about = "Partial multiple L-values: evaluation, closed forms, generating functions, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S^(N,M)(n_1,...,n_k) by truncated summation
    Eval(EvalArgs),
    /// Exact closed form of S_k(n) in the alternating family
    Closed(ClosedArgs),
    /// Generating-function coefficients through depth k
    Genfun(GenfunArgs),
    /// Run the named verification checks
    Verify(VerifyArgs),
    /// Tabulate S_k(n) numerically over an (n, k) grid
    Table(TableArgs),
}

#[derive(Args)]
struct NumericOpts {
    /// Working precision in decimal digits (10..=100)
    #[arg(long, env = "PLMV_PRECISION", default_value_t = 30)]
    precision: u32,
    /// Truncation point for oracle sums (10..=100000000)
    #[arg(long = "T", env = "PLMV_TRUNCATION", default_value_t = 1_000_000)]
    truncation: u64,
}

#[derive(Args)]
struct EvalArgs {
    /// Repeat modulus N: equal adjacent indices only at multiples of N
    #[arg(long = "N")]
    repeat_modulus: u32,
    /// Root order M: numerator root of unity omega_M
    #[arg(long = "M")]
    root_order: u32,
    /// Comma-separated weights n_1,...,n_k (n_1 sits on the smallest index)
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    weights: Vec<u32>,
    #[command(flatten)]
    numeric: NumericOpts,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct ClosedArgs {
    /// Weight n of S_k(n)
    #[arg(long)]
    n: u32,
    /// Depth k of S_k(n)
    #[arg(long)]
    k: u32,
    /// Rewrite even zeta factors as rational multiples of pi powers
    #[arg(long)]
    normalize: bool,
    /// Digits for the companion numeric value (10..=100)
    #[arg(long, env = "PLMV_PRECISION", default_value_t = 30)]
    precision: u32,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct GenfunArgs {
    /// Repeat modulus N
    #[arg(long = "N")]
    repeat_modulus: u32,
    /// Root order M
    #[arg(long = "M")]
    root_order: u32,
    /// Weight n; the coefficient of x^(n k) is S_k(n)
    #[arg(long)]
    n: u32,
    /// Extract coefficients for depths 1..=k
    #[arg(long)]
    k: u32,
    /// Exact cyclotomic expansion or numeric Hurwitz-zeta expansion
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Digits for numeric mode (10..=100)
    #[arg(long, env = "PLMV_PRECISION", default_value_t = 30)]
    precision: u32,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which checks to run
    #[arg(long, value_enum, default_value = "all", conflicts_with = "check")]
    suite: SuiteFilter,
    /// Run a single named check
    #[arg(long)]
    check: Option<String>,
    /// Depth cap for the oracle-bound sweeps
    #[arg(long = "max-k", default_value_t = 3)]
    max_k: u32,
    #[command(flatten)]
    numeric: NumericOpts,
    /// Worker threads for the check grid
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Largest weight column
    #[arg(long = "n-max", default_value_t = 3)]
    n_max: u32,
    /// Largest depth row
    #[arg(long = "k-max", default_value_t = 3)]
    k_max: u32,
    /// Digits per table entry (10..=100)
    #[arg(long, env = "PLMV_PRECISION", default_value_t = 30)]
    precision: u32,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    output: OutputFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteFilter {
    All,
    Exact,
    Numeric,
}

impl SuiteFilter {
    fn as_filter(self) -> Option<Suite> {
        match self {
            SuiteFilter::All => None,
            SuiteFilter::Exact => Some(Suite::Exact),
            SuiteFilter::Numeric => Some(Suite::Numeric),
        }
    }

    fn label(self) -> &'static str {
        match self {
            SuiteFilter::All => "all",
            SuiteFilter::Exact => "exact",
            SuiteFilter::Numeric => "numeric",
        }
    }
}

enum CliError {
    /// Bad flags or an impossible request; exit 2.
    Usage(String),
    /// A verification check failed or errored; exit 1.
    Failure(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Closed(args) => run_closed(args),
        Command::Genfun(args) => run_genfun(args),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn gate(precision: u32, truncation: Option<u64>) -> Result<(), CliError> {
    if !(10..=100).contains(&precision) {
        return Err(CliError::Usage(format!(
            "--precision must be in 10..=100, got {precision}"
        )));
    }
    if let Some(t) = truncation {
        if !(TRUNCATION_MIN..=TRUNCATION_MAX).contains(&t) {
            return Err(CliError::Usage(format!(
                "--T must be in {TRUNCATION_MIN}..={TRUNCATION_MAX}, got {t}"
            )));
        }
    }
    Ok(())
}

fn emit_json(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable document"));
}

fn run_eval(args: EvalArgs) -> Result<(), CliError> {
    gate(args.numeric.precision, Some(args.numeric.truncation))?;
    let start = Instant::now();
    let spec = LValueSpec::new(args.repeat_modulus, args.root_order, args.weights.clone())
        .map_err(usage)?;
    let out = oracle_eval(&spec, args.numeric.truncation, args.numeric.precision).map_err(usage)?;
    let digits = args.numeric.precision;
    let re = out.value.re.to_decimal(digits);
    let im = out.value.im.to_decimal(digits);
    let estimate = format!("{:e}", out.error_estimate.to_f64());

    match args.output {
        OutputFormat::Json => {
            let doc = json!({
                "command": "eval",
                "inputs": {
                    "N": args.repeat_modulus,
                    "M": args.root_order,
                    "weights": args.weights,
                    "T": args.numeric.truncation,
                    "precision": digits,
                },
                "result": {"re": re, "im": im, "averaged": out.averaged},
                "error_estimate": estimate,
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            emit_json(&doc);
        }
        OutputFormat::Csv => {
            println!("re,im,error_estimate,averaged");
            println!("{re},{im},{estimate},{}", out.averaged);
        }
        OutputFormat::Text => {
            if out.value.im.is_zero() {
                println!("{re}");
            } else {
                println!("{re} + ({im})i");
            }
            println!(
                "error estimate {estimate}{}",
                if out.averaged { " (window-averaged)" } else { "" }
            );
        }
    }
    Ok(())
}

fn closed_form(n: u32, k: u32) -> Result<SymbolicValue, CliError> {
    if n == 1 {
        closed_s_k_n1(k).map_err(usage)
    } else {
        closed_s_k_n(n, k).map_err(usage)
    }
}

fn run_closed(args: ClosedArgs) -> Result<(), CliError> {
    gate(args.precision, None)?;
    let start = Instant::now();
    let mut sym = closed_form(args.n, args.k)?;
    if args.normalize {
        sym = normalize_even_zetas(&sym).map_err(usage)?;
    }
    let numeric = sym.numeric_eval(args.precision).map_err(usage)?;

    match args.output {
        OutputFormat::Json => {
            let mut result = sym.to_json();
            result["numeric"] = Value::String(numeric.to_decimal(args.precision));
            let doc = json!({
                "command": "closed",
                "inputs": {
                    "n": args.n,
                    "k": args.k,
                    "normalize": args.normalize,
                    "precision": args.precision,
                },
                "result": result,
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            emit_json(&doc);
        }
        OutputFormat::Csv => {
            println!("n,k,closed_form,numeric");
            println!(
                "{},{},{},{}",
                args.n,
                args.k,
                sym.render(),
                numeric.to_decimal(args.precision)
            );
        }
        OutputFormat::Text => {
            println!("{}", sym.render());
        }
    }
    Ok(())
}

fn run_genfun(args: GenfunArgs) -> Result<(), CliError> {
    gate(args.precision, None)?;
    if args.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let start = Instant::now();
    let order = (args.n as usize) * (args.k as usize);
    let mut entries = Vec::with_capacity(args.k as usize);
    match args.mode {
        Mode::Exact => {
            let series = genfun_p_exact(args.repeat_modulus, args.root_order, args.n, order)
                .map_err(usage)?;
            for j in 1..=args.k {
                let degree = (args.n * j) as usize;
                entries.push((j, degree, Entry::Exact(series.coeff(degree).clone())));
            }
        }
        Mode::Numeric => {
            let series = genfun_p_numeric(
                args.repeat_modulus,
                args.root_order,
                args.n,
                order,
                args.precision,
            )
            .map_err(usage)?;
            for j in 1..=args.k {
                let degree = (args.n * j) as usize;
                let c = series.coeff(degree);
                entries.push((
                    j,
                    degree,
                    Entry::Numeric(
                        c.re.to_decimal(args.precision),
                        c.im.to_decimal(args.precision),
                    ),
                ));
            }
        }
    }

    match args.output {
        OutputFormat::Json => {
            let series: Vec<Value> = entries
                .iter()
                .map(|(j, degree, entry)| {
                    let coefficient = match entry {
                        Entry::Exact(sym) => sym.to_json(),
                        Entry::Numeric(re, im) => json!({"re": re, "im": im}),
                    };
                    json!({"k": j, "degree": degree, "coefficient": coefficient})
                })
                .collect();
            let doc = json!({
                "command": "genfun",
                "inputs": {
                    "N": args.repeat_modulus,
                    "M": args.root_order,
                    "n": args.n,
                    "k": args.k,
                    "mode": match args.mode { Mode::Exact => "exact", Mode::Numeric => "numeric" },
                    "precision": args.precision,
                },
                "result": {"series": series},
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            emit_json(&doc);
        }
        OutputFormat::Csv => {
            match args.mode {
                Mode::Exact => println!("k,degree,coefficient"),
                Mode::Numeric => println!("k,degree,re,im"),
            }
            for (j, degree, entry) in &entries {
                match entry {
                    Entry::Exact(sym) => println!("{j},{degree},{}", sym.render()),
                    Entry::Numeric(re, im) => println!("{j},{degree},{re},{im}"),
                }
            }
        }
        OutputFormat::Text => {
            for (_, degree, entry) in &entries {
                match entry {
                    Entry::Exact(sym) => println!("x^{degree}: {}", sym.render()),
                    Entry::Numeric(re, im) => println!("x^{degree}: {re} + ({im})i"),
                }
            }
        }
    }
    Ok(())
}

enum Entry {
    Exact(SymbolicValue),
    Numeric(String, String),
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    gate(args.numeric.precision, Some(args.numeric.truncation))?;
    if args.max_k == 0 {
        return Err(CliError::Usage("--max-k must be at least 1".into()));
    }
    let start = Instant::now();
    let names: Vec<&'static str> = match &args.check {
        Some(name) => {
            let known = check_names()
                .into_iter()
                .find(|n| n == name)
                .ok_or_else(|| CliError::Usage(format!("unknown check: {name}")))?;
            vec![known]
        }
        None => {
            let filter = args.suite.as_filter();
            check_names()
                .into_iter()
                .filter(|n| filter.map_or(true, |s| check_suite(n) == Some(s)))
                .collect()
        }
    };
    let cfg = VerifyConfig {
        truncation: args.numeric.truncation,
        precision: args.numeric.precision,
        max_k: args.max_k,
    };
    let outcomes = run_checks_parallel(&names, cfg, args.jobs);

    let mut failed = Vec::new();
    let mut rows = Vec::with_capacity(outcomes.len());
    for (name, outcome) in names.iter().zip(outcomes) {
        match outcome {
            Ok(out) => {
                if !out.passed {
                    failed.push(out.name);
                }
                rows.push(out);
            }
            Err(msg) => {
                failed.push(name);
                rows.push(CheckOutcome {
                    name,
                    suite: check_suite(name).unwrap_or(Suite::Numeric),
                    passed: false,
                    detail: format!("error: {msg}"),
                    runtime_ms: 0,
                });
            }
        }
    }

    match args.output {
        OutputFormat::Json => {
            let result: Vec<Value> = rows
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "suite": o.suite.label(),
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect();
            let doc = json!({
                "command": "verify",
                "inputs": {
                    "suite": args.check.clone().unwrap_or_else(|| args.suite.label().into()),
                    "max_k": args.max_k,
                    "T": args.numeric.truncation,
                    "precision": args.numeric.precision,
                    "jobs": args.jobs,
                },
                "result": result,
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            emit_json(&doc);
        }
        OutputFormat::Csv => {
            println!("name,suite,passed,detail");
            for o in &rows {
                println!("{},{},{},\"{}\"", o.name, o.suite.label(), o.passed, o.detail);
            }
        }
        OutputFormat::Text => {
            for o in &rows {
                println!(
                    "[{}] {} ({}, {} ms): {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.suite.label(),
                    o.runtime_ms,
                    o.detail
                );
            }
        }
    }

    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "verification failed: {}",
            failed.join(", ")
        )))
    }
}

/// Run the named checks over a small worker pool, preserving input order.
fn run_checks_parallel(
    names: &[&'static str],
    cfg: VerifyConfig,
    jobs: usize,
) -> Vec<Result<CheckOutcome, String>> {
    let jobs = jobs.clamp(1, names.len().max(1));
    if jobs == 1 {
        return names
            .iter()
            .map(|n| run_check(n, &cfg).map_err(|e| e.to_string()))
            .collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<CheckOutcome, String>>>> =
        Mutex::new((0..names.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= names.len() {
                    break;
                }
                let outcome = run_check(names[i], &cfg).map_err(|e| e.to_string());
                slots.lock().expect("result slots")[i] = Some(outcome);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots")
        .into_iter()
        .map(|o| o.expect("every slot filled"))
        .collect()
}

fn run_table(args: TableArgs) -> Result<(), CliError> {
    gate(args.precision, None)?;
    if args.n_max == 0 || args.k_max == 0 {
        return Err(CliError::Usage("--n-max and --k-max must be at least 1".into()));
    }
    let start = Instant::now();
    let mut rows = Vec::with_capacity(args.k_max as usize);
    for k in 1..=args.k_max {
        let mut cells = Vec::with_capacity(args.n_max as usize);
        for n in 1..=args.n_max {
            let value = closed_form(n, k)?
                .numeric_eval(args.precision)
                .map_err(usage)?;
            cells.push(value.to_decimal(args.precision));
        }
        rows.push((k, cells));
    }

    match args.output {
        OutputFormat::Json => {
            let columns: Vec<String> = (1..=args.n_max).map(|n| format!("n={n}")).collect();
            let result: Vec<Value> = rows
                .iter()
                .map(|(k, cells)| json!({"k": k, "values": cells}))
                .collect();
            let doc = json!({
                "command": "table",
                "inputs": {
                    "n_max": args.n_max,
                    "k_max": args.k_max,
                    "precision": args.precision,
                },
                "result": {"columns": columns, "rows": result},
                "runtime_ms": start.elapsed().as_millis() as u64,
            });
            emit_json(&doc);
        }
        OutputFormat::Csv => {
            let header: Vec<String> = (1..=args.n_max).map(|n| format!("n={n}")).collect();
            println!("k,{}", header.join(","));
            for (k, cells) in &rows {
                println!("{k},{}", cells.join(","));
            }
        }
        OutputFormat::Text => {
            for (k, cells) in &rows {
                for (n, cell) in cells.iter().enumerate() {
                    println!("S_{k}({}) = {cell}", n + 1);
                }
            }
        }
    }
    Ok(())
}
