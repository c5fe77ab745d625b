//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for input errors, 3 when methods disagree or a
//! verification sweep fails.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bench::{bench_pair, BenchRow};
use crate::error::Error;
use crate::numeric::{parse_scalar, NumericError, Scalar};
use crate::semigroup::{frobenius_number, gap_set, CoprimePair};
use crate::special::{apostol_bernoulli, bernoulli};
use crate::sums::{sylvester_sum, Method, SumRequest, DEFAULT_ORACLE_CAP};
use crate::verify::{run_sweep, SweepConfig, SweepReport, DEFAULT_LAMBDAS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sylvester",
    version,
    about = "Exact weighted Sylvester sums over NR(a, b)"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ab for which brute-force summation is attempted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List NR(a, b), its size and the Frobenius number.
    Gaps { a: u64, b: u64 },
    /// Compute S_m(lambda; a, b).
    Sum(SumArgs),
    /// Apostol-Bernoulli numbers B_0(lambda) .. B_N(lambda).
    Apostol {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Bernoulli numbers B_0 .. B_N.
    Bernoulli {
        #[arg(long)]
        n: usize,
    },
    /// Cross-validate every method on a grid of inputs.
    Verify {
        #[arg(long, default_value_t = 25)]
        amax: u64,
        #[arg(long, default_value_t = 25)]
        bmax: u64,
        #[arg(long, default_value_t = 6)]
        mmax: u32,
        /// Comma-separated lambda values.
        #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_LAMBDAS.join(","))]
        lambdas: String,
    },
    /// Time closed form, derivative and oracle on the given pairs.
    Bench {
        /// Comma-separated pairs such as "101x103,1009x1013".
        #[arg(long)]
        pairs: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        lambda: String,
    },
}

#[derive(Debug, Args)]
struct SumArgs {
    a: u64,
    b: u64,
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: Method,
    /// Also print a rounded decimal approximation with this many places.
    #[arg(long)]
    decimal: Option<usize>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// Output record of `sum`.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub a: u64,
    pub b: u64,
    pub m: u32,
    pub lambda: String,
    pub value: String,
    pub method_used: Method,
    pub elapsed_microseconds: u128,
    pub cross_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximate: Option<String>,
}

enum Failure {
    Input(String),
    Verify(String),
    // the reader went away; nothing left to report
    ClosedOutput,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement { .. } => Failure::Verify(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedOutput;
        }
        Failure::Input(format!("write failed: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::ClosedOutput) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Gaps { a, b } => cmd_gaps(*a, *b, cli.json, out),
        Command::Sum(args) => cmd_sum(args, cli, out),
        Command::Apostol { n, lambda } => cmd_apostol(*n, lambda, cli.json, out),
        Command::Bernoulli { n } => cmd_bernoulli(*n, cli.json, out),
        Command::Verify {
            amax,
            bmax,
            mmax,
            lambdas,
        } => cmd_verify(*amax, *bmax, *mmax, lambdas, cli, out),
        Command::Bench { pairs, m, lambda } => cmd_bench(pairs, *m, lambda, cli, out),
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_gaps(a: u64, b: u64, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let pair = CoprimePair::new(a, b)?;
    let gaps = gap_set(&pair);
    let frobenius = frobenius_number(&pair);
    if json {
        write_json(
            out,
            &json!({
                "command": "gaps",
                "a": a,
                "b": b,
                "gaps": gaps.as_slice(),
                "count": gaps.len(),
                "frobenius": frobenius,
            }),
        )?;
    } else {
        let list: Vec<String> = gaps.iter().map(|n| n.to_string()).collect();
        writeln!(out, "gaps: {}", list.join(" "))?;
        writeln!(out, "count: {}", gaps.len())?;
        writeln!(out, "frobenius: {frobenius}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_sum(args: &SumArgs, cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let lambda = parse_scalar(&args.lambda)?;
    let pair = CoprimePair::new(args.a, args.b)?;
    let req = SumRequest::new(pair, args.m, lambda.clone())?
        .with_method(args.method)
        .with_oracle_cap(cli.oracle_cap);
    let result = sylvester_sum(&req)?;
    let record = OutputRecord {
        command: "sum".into(),
        a: args.a,
        b: args.b,
        m: args.m,
        lambda: lambda.to_string(),
        value: result.value.to_string(),
        method_used: result.method_used,
        elapsed_microseconds: result.elapsed.as_micros(),
        cross_checked: result.cross_checked,
        approximate: args.decimal.map(|d| result.value.to_decimal(d)),
    };
    if cli.json {
        write_json(out, &record)?;
    } else {
        writeln!(out, "{}", record.value)?;
        if let Some(approx) = &record.approximate {
            writeln!(out, "approximately {approx}")?;
        }
        let methods: Vec<String> = result
            .evaluations
            .iter()
            .map(|(m, _)| m.to_string())
            .collect();
        writeln!(
            out,
            "method: {} ({})  elapsed: {} us  cross_checked: {}",
            record.method_used,
            methods.join(", "),
            record.elapsed_microseconds,
            record.cross_checked
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_apostol(n: usize, lambda: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let lambda = parse_scalar(lambda)?;
    let table = apostol_bernoulli(n, &lambda)?;
    let values: Vec<String> = table.values().iter().map(Scalar::to_string).collect();
    if json {
        write_json(
            out,
            &json!({ "command": "apostol", "lambda": lambda.to_string(), "values": values }),
        )?;
    } else {
        for (i, v) in values.iter().enumerate() {
            writeln!(out, "{i}\t{v}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bernoulli(n: usize, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let values: Vec<String> = bernoulli(n)
        .values()
        .iter()
        .map(|v| v.to_string())
        .collect();
    if json {
        write_json(
            out,
            &json!({ "command": "bernoulli", "n": n, "values": values }),
        )?;
    } else {
        for (i, v) in values.iter().enumerate() {
            writeln!(out, "{i}\t{v}")?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_lambda_list(text: &str) -> Result<Vec<Scalar>, Failure> {
    let lambdas = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_scalar)
        .collect::<Result<Vec<_>, _>>()?;
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(Error::ZeroLambda.into());
    }
    if lambdas.is_empty() {
        return Err(Failure::Input("no lambda values given".into()));
    }
    Ok(lambdas)
}

fn cmd_verify(
    amax: u64,
    bmax: u64,
    mmax: u32,
    lambdas: &str,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if amax == 0 || bmax == 0 {
        return Err(Failure::Input("bounds must be positive".into()));
    }
    let config = SweepConfig {
        amax,
        bmax,
        mmax,
        lambdas: parse_lambda_list(lambdas)?,
        oracle_cap: cli.oracle_cap,
    };
    let report = run_sweep(&config);
    if cli.json {
        write_json(
            out,
            &json!({ "command": "verify", "passed": report.passed, "families": report.families }),
        )?;
    } else {
        print_report(&report, out)?;
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
}

fn print_report(report: &SweepReport, out: &mut dyn Write) -> io::Result<()> {
    for family in &report.families {
        let status = if family.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status}  {} ({} cells)", family.name, family.checked)?;
        for f in &family.failures {
            writeln!(
                out,
                "  (a={}, b={}, m={}, lambda={}): {}",
                f.a, f.b, f.m, f.lambda, f.detail
            )?;
            for (method, value) in &f.values {
                writeln!(out, "    {method} = {value}")?;
            }
        }
    }
    writeln!(out, "{}", if report.passed { "PASS" } else { "FAIL" })
}

fn parse_pairs(text: &str) -> Result<Vec<CoprimePair>, Failure> {
    text.split(',')
        .map(|item| {
            let (a, b) = item
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| Failure::Input(format!("pair {item:?} is not of the form AxB")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Input(format!("bad modulus {s:?} in {item:?}")))
            };
            Ok(CoprimePair::new(parse(a)?, parse(b)?)?)
        })
        .collect()
}

fn micros(v: Option<u128>) -> String {
    v.map(|t| t.to_string()).unwrap_or_else(|| "skipped".into())
}

fn cmd_bench(
    pairs: &str,
    m: u32,
    lambda: &str,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let lambda = parse_scalar(lambda)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda.into());
    }
    let pairs = parse_pairs(pairs)?;
    let rows = pairs
        .iter()
        .map(|p| bench_pair(p, m, &lambda, cli.oracle_cap))
        .collect::<Result<Vec<BenchRow>, Error>>()?;
    if cli.json {
        write_json(out, &rows)?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "{:<14} {:<18} {:>12} {:>14} {:>12} {:>9}",
        "pair", "closed", "closed_us", "derivative_us", "oracle_us", "speedup"
    )?;
    for row in &rows {
        let closed = row
            .closed_method
            .map(|m| m.to_string())
            .unwrap_or_else(|| "none".into());
        let speedup = row
            .speedup()
            .map(|s| format!("{s:.1}x"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:<14} {:<18} {:>12} {:>14} {:>12} {:>9}",
            format!("{}x{}", row.a, row.b),
            closed,
            micros(row.closed_microseconds),
            row.derivative_microseconds,
            micros(row.oracle_microseconds),
            speedup
        )?;
    }
    Ok(EXIT_OK)
}
