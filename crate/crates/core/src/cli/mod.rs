//! Command-line front end: JSON run configuration, CSV traces, JSON reports.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exponents::{dual_exponent, sharp_constant};
use crate::functionals::FunctionalTrace;
use crate::grid::Grid;
use crate::heat::TimeGrid;
use crate::verification::{standard_suites, NamedSuite, SuiteContext, SuiteOutcome, Tolerances, VerificationReport};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(rename = "L")]
    pub half_width: f64,
    #[serde(rename = "N")]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TimeGridSpec {
    Log { start: f64, end: f64, count: usize },
    Uniform { start: f64, end: f64, count: usize },
    Explicit { times: Vec<f64> },
}

impl TimeGridSpec {
    pub fn build(&self) -> Result<TimeGrid> {
        match self {
            &TimeGridSpec::Log { start, end, count } => TimeGrid::log_spaced(start, end, count),
            &TimeGridSpec::Uniform { start, end, count } => TimeGrid::uniform(start, end, count),
            TimeGridSpec::Explicit { times } => TimeGrid::new(times.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub time_grid: TimeGridSpec,
    /// Times for the rescaled limit evaluation; only the last one gates.
    pub limit_times: Vec<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub suites: Vec<NamedSuite>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig {
                half_width: 16.0,
                count: 2048,
            },
            time_grid: TimeGridSpec::Log {
                start: 1e-3,
                end: 10.0,
                count: 25,
            },
            limit_times: vec![1e2, 1e3],
            tolerances: Tolerances::default(),
            seed: 20_240_917,
            output_dir: PathBuf::from("out"),
            suites: standard_suites(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.context()?;
        let mut names = HashSet::new();
        for suite in &self.suites {
            if !names.insert(suite.name.as_str()) {
                return Err(Error::Config(format!("duplicate suite name `{}`", suite.name)));
            }
            suite
                .spec
                .validate()
                .map_err(|e| Error::Config(format!("suite `{}`: {e}", suite.name)))?;
        }
        let tol = serde_json::to_value(&self.tolerances)?;
        for (name, v) in tol.as_object().expect("struct") {
            if !v.as_f64().is_some_and(|v| v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!("tolerance `{name}` must be a non-negative number")));
            }
        }
        Ok(())
    }

    pub fn context(&self) -> Result<SuiteContext> {
        if self.limit_times.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Config("limit times must be positive".into()));
        }
        Ok(SuiteContext {
            grid: Grid::new(self.grid.half_width, self.grid.count)?,
            times: self.time_grid.build()?,
            limit_times: self.limit_times.clone(),
            seed: self.seed,
            tol: self.tolerances.clone(),
        })
    }

    pub fn suite(&self, name: &str) -> Result<&NamedSuite> {
        self.suites.iter().find(|s| s.name == name).ok_or_else(|| {
            let known: Vec<&str> = self.suites.iter().map(|s| s.name.as_str()).collect();
            Error::Config(format!("unknown suite `{name}` (known: {})", known.join(", ")))
        })
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn trace_csv(trace: &FunctionalTrace) -> String {
    let limit = trace.analytic_limit.map(format_f64).unwrap_or_default();
    let mut out = String::from("t,value,analytic_limit\n");
    for (t, v) in trace.times.times().iter().zip(&trace.values) {
        writeln!(out, "{},{},{limit}", format_f64(*t), format_f64(*v)).expect("string write");
    }
    out
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<VerificationReport>,
}

pub fn run_suites(ctx: &SuiteContext, suites: &[NamedSuite]) -> Result<Vec<SuiteOutcome>> {
    #[cfg(feature = "parallel")]
    let iter = suites.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = suites.iter();
    iter.map(|s| s.run(ctx)).collect()
}

pub fn summary(report: &VerificationReport) -> String {
    let mut out = format!(
        "{} {} max_violation={:.3e}",
        if report.passed { "PASS" } else { "FAIL" },
        report.suite,
        report.max_violation
    );
    if let Some(gap) = report.limit_gap {
        write!(out, " limit_gap={gap:.3e}").expect("string write");
    }
    for c in report.failures() {
        write!(out, "\n    failed {}: {:.6e} (tol {:.1e})", c.name, c.value, c.tolerance).expect("string write");
    }
    out
}

fn trace_file_name(suite: &str, k: usize, total: usize) -> String {
    if total == 1 {
        format!("{suite}_trace.csv")
    } else {
        format!("{suite}_trace_{k}.csv")
    }
}

#[derive(Debug, Parser)]
#[command(name = "heatconv", version, about = "Heat-flow monotonicity checks for sharp convolution functionals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration; the built-in standard set when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, overriding the configuration.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the seeded densities, overriding the configuration.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p, p', kappa = 1/(p|p'|) and C_p^d.
    Constants {
        /// Exponents, e.g. `2 4 1 0.5`.
        #[arg(allow_negative_numbers = true)]
        p: Vec<f64>,
        #[arg(long, short, default_value_t = 1)]
        dimension: u32,
    },
    /// Write the CSV trace(s) of one suite.
    Trace {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every configured suite and write a JSON report.
    Verify {
        /// Restrict to one suite.
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the default configuration as JSON.
    DefaultConfig,
}

fn load_config(run: &RunArgs) -> Result<RunConfig> {
    let mut config = match &run.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &run.out {
        config.output_dir = out.clone();
    }
    if let Some(seed) = run.seed {
        config.seed = seed;
    }
    Ok(config)
}

pub fn constants_table(ps: &[f64], d: u32) -> Result<String> {
    let mut out = format!("{:>12} {:>12} {:>12} {:>14}\n", "p", "p'", "kappa", "C_p^d");
    for &p in ps {
        let dual = dual_exponent(p)?;
        let c = sharp_constant(p, d)?;
        let kappa = if dual.is_infinite() {
            "degenerate".to_string()
        } else {
            format!("{:.8}", (p * dual.abs()).recip())
        };
        let dual = if dual.is_infinite() { "inf".to_string() } else { format!("{dual:.8}") };
        writeln!(out, "{p:>12.8} {dual:>12} {kappa:>12} {c:>14.10}").expect("string write");
    }
    Ok(out)
}

fn cmd_trace(run: &RunArgs, name: &str) -> Result<u8> {
    let config = load_config(run)?;
    let suite = config.suite(name)?;
    let ctx = config.context()?;
    let outcome = suite.run(&ctx)?;
    let dir = &config.output_dir;
    let total = outcome.traces.len();
    for (k, trace) in outcome.traces.iter().enumerate() {
        let path = dir.join(trace_file_name(name, k, total));
        write_atomic(&path, trace_csv(trace).as_bytes())?;
        println!("wrote {} ({} rows) {}", path.display(), trace.values.len(), trace.label);
    }
    if total == 0 {
        println!("suite `{name}` has no time trace");
    }
    let text = summary(&outcome.report);
    write_atomic(&dir.join(format!("{name}_summary.txt")), format!("{text}\n").as_bytes())?;
    println!("{text}");
    Ok(EXIT_PASS)
}

fn cmd_verify(run: &RunArgs, only: Option<&str>) -> Result<u8> {
    let config = load_config(run)?;
    let ctx = config.context()?;
    let suites = match only {
        Some(name) => vec![config.suite(name)?.clone()],
        None => config.suites.clone(),
    };
    let outcomes = run_suites(&ctx, &suites)?;
    let reports: Vec<VerificationReport> = outcomes.into_iter().map(|o| o.report).collect();
    for r in &reports {
        println!("{}", summary(r));
    }
    let report = RunReport {
        seed: config.seed,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    };
    let path = config.output_dir.join("report.json");
    let json = serde_json::to_string_pretty(&report)?;
    write_atomic(&path, format!("{json}\n").as_bytes())?;
    println!("wrote {}", path.display());
    Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
}

pub fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Constants { p, dimension } => {
            let ps = if p.is_empty() {
                vec![0.5, 2.0 / 3.0, 1.0, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0]
            } else {
                p
            };
            print!("{}", constants_table(&ps, dimension)?);
            Ok(EXIT_PASS)
        }
        Command::Trace { suite, run } => cmd_trace(&run, &suite),
        Command::Verify { suite, run } => cmd_verify(&run, suite.as_deref()),
        Command::DefaultConfig => {
            println!("{}", RunConfig::default().to_json());
            Ok(EXIT_PASS)
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("heatconv: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
