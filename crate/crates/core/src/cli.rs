//! Command-line front end: `number`, `series`, `lehn` and `verify`.
//!
//! Values are printed as exact `p/q` strings (just `p` for integers). CSV
//! output has the header `d,pi,kappa,e,k,route,value`; JSON output is a flat
//! array of the same records.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::k3::closed_segre;
use crate::kernel::{format_rational, parse_rational, ExactRational, TruncatedPowerSeries};
use crate::lehn::LehnOracle;
use crate::universal::{Engine, Route, SegreTable, SurfaceInvariants};
use crate::verify::{self, VerifyConfig};

pub const DEFAULT_ORDER: usize = 8;
pub const ORDER_ENV: &str = "SEGRE_DEFAULT_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "segre", version, about = "Exact top Segre numbers of tautological bundles on Hilbert schemes of surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// s_k(d, pi, kappa, e) through the universal-series engine.
    Number {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long)]
        k: usize,
        /// Also print the closed K3 value (when applicable) and the Lehn value.
        #[arg(long)]
        all_routes: bool,
    },
    /// Coefficients 0..=order of A, B, C, D, the Segre series s, or the Lehn series.
    Series {
        #[arg(long, value_enum)]
        which: SeriesName,
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Lehn-function coefficients side by side with the engine; exits 1 on disagreement.
    Lehn {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Compare a single coefficient instead of 0..=order.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run every cross-route check; exits 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TupleArgs {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub pi: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub kappa: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub e: i64,
}

impl TupleArgs {
    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::new(self.d, self.pi, self.kappa, self.e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    #[value(name = "s")]
    S,
    #[value(name = "lehn")]
    Lehn,
}

/// One printed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub d: i64,
    pub pi: i64,
    pub kappa: i64,
    pub e: i64,
    pub k: usize,
    pub route: Route,
    pub value: String,
}

impl OutputRecord {
    pub fn new(inv: SurfaceInvariants, k: usize, route: Route, value: &ExactRational) -> Self {
        Self {
            d: inv.d,
            pi: inv.pi,
            kappa: inv.kappa,
            e: inv.e,
            k,
            route,
            value: format_rational(value),
        }
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::new(self.d, self.pi, self.kappa, self.e)
    }

    pub fn exact_value(&self) -> crate::Result<ExactRational> {
        parse_rational(&self.value)
    }
}

/// A coefficient of one of the universal series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub series: String,
    pub k: usize,
    pub value: String,
}

/// What a command produced: the text to emit and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
    /// Remarks for stderr.
    pub notes: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {name}: {value:?} is not a non-negative integer")]
    BadEnv { name: &'static str, value: String },
    #[error(transparent)]
    Segre(#[from] crate::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Default truncation order, honoring `SEGRE_DEFAULT_ORDER`.
pub fn default_order() -> Result<usize, CliError> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::BadEnv { name: ORDER_ENV, value: v }),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let engine = Engine::new();
    match &cli.command {
        Command::Number { tuple, k, all_routes } => {
            cmd_number(&engine, tuple.invariants(), *k, *all_routes, cli.format)
        }
        Command::Series { which, order, tuple } => {
            let order = order.map_or_else(default_order, Ok)?;
            cmd_series(&engine, *which, order, tuple.invariants(), cli.format)
        }
        Command::Lehn { tuple, k, order } => {
            let range = match (k, order) {
                (Some(k), _) => (*k, *k),
                (None, Some(n)) => (0, *n),
                (None, None) => (0, default_order()?),
            };
            cmd_lehn(&engine, tuple.invariants(), range, cli.format)
        }
        Command::Verify {
            max_k,
            max_order,
            inject_fault,
        } => {
            let config = VerifyConfig {
                max_k: *max_k,
                max_order: max_order.map_or_else(default_order, Ok)?,
                inject_fault: *inject_fault,
            };
            Ok(cmd_verify(&config))
        }
    }
}

fn formal_note(inv: &SurfaceInvariants) -> Vec<String> {
    if inv.passes_numerical_checks() {
        Vec::new()
    } else {
        vec![format!(
            "note: {inv} is formal (fails Noether's 12 | kappa + e or parity of d + pi); values are still exact"
        )]
    }
}

pub fn cmd_number(
    engine: &Engine,
    inv: SurfaceInvariants,
    k: usize,
    all_routes: bool,
    format: Format,
) -> Result<Outcome, CliError> {
    let mut table = SegreTable::new();
    engine.segre_number_into(&inv, k, &mut table);
    if all_routes {
        if inv.pi == 0 && inv.kappa == 0 && inv.e == 24 && inv.d % 2 == 0 {
            table.insert(inv, k, Route::Closed, closed_segre(k, inv.d / 2 + 1));
        }
        let lehn = LehnOracle::new(k).coefficient(&inv, k)?;
        table.insert(inv, k, Route::Lehn, lehn);
    }
    let records: Vec<OutputRecord> = table
        .records()
        .map(|(inv, k, route, v)| OutputRecord::new(inv, k, route, v))
        .collect();
    let text = match format {
        Format::Table if !all_routes => format!("{}\n", records[0].value),
        Format::Table => render_record_table(&records),
        Format::Csv => records_to_csv(&records)?,
        Format::Json => records_to_json(&records)?,
    };
    let status = if table.conflicts().is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome {
        text,
        status,
        notes: formal_note(&inv),
    })
}

pub fn cmd_series(
    engine: &Engine,
    which: SeriesName,
    order: usize,
    inv: SurfaceInvariants,
    format: Format,
) -> Result<Outcome, CliError> {
    let (label, series, route): (&str, TruncatedPowerSeries, Option<Route>) = match which {
        SeriesName::S => ("s", engine.segre_series(&inv, order), Some(Route::Engine)),
        SeriesName::Lehn => ("lehn", LehnOracle::new(order).series(&inv)?, Some(Route::Lehn)),
        other => {
            let name = format!("{other:?}");
            let u = engine.universal(order);
            let s = u.by_name(&name).expect("A..D").clone();
            return Ok(Outcome {
                text: render_coefficients(&name, &s, format)?,
                status: EXIT_OK,
                notes: Vec::new(),
            });
        }
    };
    let route = route.unwrap();
    let text = match format {
        Format::Table => render_coefficients(label, &series, format)?,
        _ => {
            let records: Vec<OutputRecord> = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, v)| OutputRecord::new(inv, k, route, v))
                .collect();
            if format == Format::Csv {
                records_to_csv(&records)?
            } else {
                records_to_json(&records)?
            }
        }
    };
    Ok(Outcome {
        text,
        status: EXIT_OK,
        notes: formal_note(&inv),
    })
}

pub fn cmd_lehn(
    engine: &Engine,
    inv: SurfaceInvariants,
    (from, to): (usize, usize),
    format: Format,
) -> Result<Outcome, CliError> {
    let lehn = LehnOracle::new(to).series(&inv)?;
    let ours = engine.segre_series(&inv, to);
    let mut table = SegreTable::new();
    for k in from..=to {
        table.insert(inv, k, Route::Engine, ours.coeffs()[k].clone());
        table.insert(inv, k, Route::Lehn, lehn.coeffs()[k].clone());
    }
    let records: Vec<OutputRecord> = table
        .records()
        .map(|(inv, k, route, v)| OutputRecord::new(inv, k, route, v))
        .collect();
    let text = match format {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "{:>3}  {:>24}  {:>24}", "k", "engine", "lehn").unwrap();
            for k in from..=to {
                let e = format_rational(&ours.coeffs()[k]);
                let l = format_rational(&lehn.coeffs()[k]);
                let mark = if e == l { "" } else { "  MISMATCH" };
                writeln!(out, "{k:>3}  {e:>24}  {l:>24}{mark}").unwrap();
            }
            out
        }
        Format::Csv => records_to_csv(&records)?,
        Format::Json => records_to_json(&records)?,
    };
    let status = if table.conflicts().is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome {
        text,
        status,
        notes: formal_note(&inv),
    })
}

pub fn cmd_verify(config: &VerifyConfig) -> Outcome {
    let report = verify::run(config);
    Outcome {
        text: report.to_string(),
        status: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
        notes: Vec::new(),
    }
}

fn render_record_table(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    for r in records {
        writeln!(out, "{:<7} {}", r.route.as_str(), r.value).unwrap();
    }
    out
}

fn render_coefficients(name: &str, s: &TruncatedPowerSeries, format: Format) -> Result<String, CliError> {
    let records: Vec<CoefficientRecord> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, v)| CoefficientRecord {
            series: name.to_string(),
            k,
            value: format_rational(v),
        })
        .collect();
    Ok(match format {
        Format::Table => records.iter().map(|r| format!("{}\n", r.value)).collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &records {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&records)?),
    })
}

pub fn records_to_csv(records: &[OutputRecord]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}

pub fn records_to_json(records: &[OutputRecord]) -> Result<String, CliError> {
    Ok(format!("{}\n", serde_json::to_string_pretty(records)?))
}

pub fn records_from_csv(text: &str) -> Result<Vec<OutputRecord>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn records_from_json(text: &str) -> Result<Vec<OutputRecord>, CliError> {
    Ok(serde_json::from_str(text)?)
}
