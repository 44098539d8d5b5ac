//! The `bernint` command line.
//!
//! Exit codes: 0 on success, 1 when a verification sweep fails or benchmarked
//! methods disagree, 2 on usage and parse errors.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bernoulli::BernoulliCache;
use crate::exact::{format_rational, parse_rational, MultiIndex, Rational};
use crate::integrals::{
    closed_form_integral_poly, evaluate, oracle_integral_poly, IntegralSpec, Method,
};
use crate::verify::{run_suite, Suite, SweepBounds, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bernint",
    version,
    about = "Exact integrals of products of Bernoulli polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Closed,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BernoulliKind {
    Number,
    Poly,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral of B_{k_1}(z)···B_{k_r}(z) over [0, upper].
    Integral {
        #[arg(long, allow_hyphen_values = true)]
        ks: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        upper: String,
        /// closed, recurrence:<mu>, oracle or auto
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the evaluation time in JSON output.
        #[arg(long)]
        timing: bool,
    },
    /// Coefficients of the integral as a polynomial in its upper limit,
    /// lowest degree first.
    Poly {
        #[arg(long, allow_hyphen_values = true)]
        ks: String,
        #[arg(long, value_enum, default_value_t = PolyMethod::Closed)]
        method: PolyMethod,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 12)]
        max_sum: u32,
        #[arg(long, default_value_t = 4)]
        max_r: u32,
        /// Largest single index; defaults depend on the suite.
        #[arg(long)]
        max_entry: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time several methods on one integral after checking they agree.
    Bench {
        #[arg(long, allow_hyphen_values = true)]
        ks: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        upper: String,
        #[arg(long, value_delimiter = ',', default_value = "closed,oracle")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bernoulli numbers and polynomials.
    Bernoulli {
        #[arg(value_enum)]
        kind: BernoulliKind,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Timing of one method in a `bench` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodTiming {
    pub method: String,
    pub median_us: u128,
}

/// One JSON record per invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u128>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<MethodTiming>,
}

impl OutputRecord {
    /// The value parsed back into a rational.
    pub fn parsed_value(&self) -> Option<crate::Result<Rational>> {
        self.value.as_deref().map(parse_rational)
    }
}

enum Outcome {
    Ok,
    Failed,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let cache = BernoulliCache::new();
    match dispatch(cli.command, &cache, out, err) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_FAILURE,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn parse_ks(text: &str) -> Result<MultiIndex, UsageError> {
    let ks = MultiIndex::parse(text)?;
    // validates emptiness and signs
    IntegralSpec::at_one(ks.clone())?;
    Ok(ks)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), UsageError> {
    let line = serde_json::to_string(value)?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn dispatch(
    command: Command,
    cache: &BernoulliCache,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, UsageError> {
    match command {
        Command::Integral {
            ks,
            upper,
            method,
            format,
            timing,
        } => {
            let ks = parse_ks(&ks)?;
            let upper = parse_rational(&upper)?;
            let method: Method = method.parse()?;
            let spec = IntegralSpec::new(ks.clone(), upper.clone())?;
            let started = Instant::now();
            let value = evaluate(&spec, method, cache)?;
            let elapsed = started.elapsed().as_micros();
            match format {
                Format::Text => writeln!(out, "{}", format_rational(&value))?,
                Format::Json => emit_json(
                    out,
                    &OutputRecord {
                        command: "integral".into(),
                        ks: Some(ks.into_vec()),
                        upper: Some(format_rational(&upper)),
                        method: Some(method.to_string()),
                        value: Some(format_rational(&value)),
                        timing_us: timing.then_some(elapsed),
                        ..OutputRecord::default()
                    },
                )?,
            }
            Ok(Outcome::Ok)
        }
        Command::Poly { ks, method, format } => {
            let ks = parse_ks(&ks)?;
            let poly = match method {
                PolyMethod::Closed => closed_form_integral_poly(&ks, cache),
                PolyMethod::Oracle => oracle_integral_poly(&ks, cache),
            };
            match format {
                Format::Text => writeln!(out, "{poly}")?,
                Format::Json => emit_json(
                    out,
                    &OutputRecord {
                        command: "poly".into(),
                        ks: Some(ks.into_vec()),
                        method: Some(format!("{method:?}").to_lowercase()),
                        coefficients: Some(poly.coefficient_strings()),
                        ..OutputRecord::default()
                    },
                )?,
            }
            Ok(Outcome::Ok)
        }
        Command::Verify {
            suite,
            max_sum,
            max_r,
            max_entry,
            format,
        } => {
            let bounds = SweepBounds {
                max_sum: max_sum.into(),
                max_r: max_r as usize,
                max_entry: max_entry.map(i64::from),
            };
            let report = run_suite(suite, bounds, cache);
            match format {
                Format::Text => write_report(out, &report)?,
                Format::Json => emit_json(out, &report)?,
            }
            Ok(if report.all_passed() {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Command::Bench {
            ks,
            upper,
            methods,
            reps,
            format,
        } => {
            let ks = parse_ks(&ks)?;
            let upper = parse_rational(&upper)?;
            let methods = methods
                .iter()
                .map(|m| m.trim().parse::<Method>())
                .collect::<Result<Vec<_>, _>>()?;
            if methods.is_empty() {
                return Err(UsageError("no methods given".into()));
            }
            let spec = IntegralSpec::new(ks.clone(), upper.clone())?;
            let mut values = Vec::with_capacity(methods.len());
            let mut timings = Vec::with_capacity(methods.len());
            for &method in &methods {
                let mut samples = Vec::with_capacity(reps as usize);
                let mut value = None;
                for _ in 0..reps {
                    let started = Instant::now();
                    let v = evaluate(&spec, method, cache)?;
                    samples.push(started.elapsed().as_micros());
                    value = Some(v);
                }
                samples.sort_unstable();
                values.push(value.expect("reps >= 1"));
                timings.push(MethodTiming {
                    method: method.to_string(),
                    median_us: samples[samples.len() / 2],
                });
            }
            for (i, v) in values.iter().enumerate().skip(1) {
                if *v != values[0] {
                    writeln!(
                        err,
                        "methods disagree: {} gives {}, {} gives {}",
                        methods[0],
                        format_rational(&values[0]),
                        methods[i],
                        format_rational(v)
                    )?;
                    return Ok(Outcome::Failed);
                }
            }
            let value = format_rational(&values[0]);
            match format {
                Format::Text => {
                    writeln!(out, "value {value}")?;
                    for t in &timings {
                        writeln!(out, "{:<16} {:>12} us", t.method, t.median_us)?;
                    }
                }
                Format::Json => emit_json(
                    out,
                    &OutputRecord {
                        command: "bench".into(),
                        ks: Some(ks.into_vec()),
                        upper: Some(format_rational(&upper)),
                        value: Some(value),
                        timings,
                        ..OutputRecord::default()
                    },
                )?,
            }
            Ok(Outcome::Ok)
        }
        Command::Bernoulli { kind, k, format } => {
            if k < 0 {
                return Err(crate::Error::NegativeArgument(k).into());
            }
            let k = k as usize;
            let (value, coefficients) = match kind {
                BernoulliKind::Number => (Some(cache.number(k)), None),
                BernoulliKind::Poly => (None, Some(cache.polynomial(k))),
            };
            match format {
                Format::Text => match (&value, &coefficients) {
                    (Some(v), _) => writeln!(out, "{}", format_rational(v))?,
                    (_, Some(p)) => writeln!(out, "{p}")?,
                    _ => unreachable!(),
                },
                Format::Json => emit_json(
                    out,
                    &OutputRecord {
                        command: format!(
                            "bernoulli {}",
                            if value.is_some() { "number" } else { "poly" }
                        ),
                        ks: Some(vec![k as i64]),
                        value: value.as_ref().map(format_rational),
                        coefficients: coefficients.map(|p| p.coefficient_strings()),
                        ..OutputRecord::default()
                    },
                )?,
            }
            Ok(Outcome::Ok)
        }
    }
}

fn write_report(out: &mut dyn Write, report: &VerificationReport) -> std::io::Result<()> {
    let status = if report.all_passed() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{status} {}: {}/{} passed in {:.3} s",
        report.suite,
        report.passed,
        report.attempted,
        report.wall_time_us as f64 / 1e6
    )?;
    if let Some(f) = &report.first_failure {
        let ks: Vec<String> = f.ks.iter().map(i64::to_string).collect();
        writeln!(
            out,
            "first failure [{}] ks={} upper={}: expected {}, got {}",
            f.check,
            ks.join(","),
            f.upper,
            f.expected,
            f.got
        )?;
    }
    for note in &report.notes {
        writeln!(out, "  {note}")?;
    }
    Ok(())
}
