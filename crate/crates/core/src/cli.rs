//! Command-line front end: argument parsing, dispatch and report emission.
//!
//! Exit status: 0 on success (or a passing verification), 1 when a
//! verification fails (the report is still written), 2 for usage errors and
//! 3 for internal failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::energies::{self, ReportFormat, TabularReport};
use crate::error::LadderError;
use crate::ladder::{Complementarity, Ladder, LadderConfig};
use crate::primes::{prime_count, PrimeCount, PRIME_COUNT_CAP};
use crate::quadrature::{default_checkpoint_path, CheckpointTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ladderlab", version, about = "Jacob's ladder energy identities on the critical line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    Checkpoint,
    Ladder,
    VerifyMatrix,
    Divide,
    Chain,
    Complementarity,
    Primes,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or extend the cumulative-integral checkpoint file up to --t.
    Checkpoint(RunArgs),
    /// φ₁, ω, Z̃² at --t and the reverse tower of depth --k.
    Ladder(RunArgs),
    /// Verify the full energy matrix at (--t, --g, --k) to --tol.
    VerifyMatrix(RunArgs),
    /// Divide the level --k energy into --parts equal parts.
    Divide(RunArgs),
    /// Gaussian cosine chain of dimension --n.
    Chain(RunArgs),
    /// Compare T − φ₁(T) with (1 − c) π(T).
    Complementarity(RunArgs),
    /// Exact prime count π(--t).
    Primes(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long = "t", default_value_t = 10000.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Number of equal parts for `divide`.
    #[arg(long = "parts", default_value_t = 10)]
    pub parts: usize,
    /// Chain dimension for `chain`.
    #[arg(long = "n", default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 8.0)]
    pub trunc: f64,
    /// Checkpoint grid spacing used when building a table.
    #[arg(long, default_value_t = 10.0)]
    pub step: f64,
    /// Checkpoint file; defaults to $LADDERLAB_CKPT.
    #[arg(long = "checkpoint")]
    pub checkpoint: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

/// Validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub t: f64,
    pub g: f64,
    pub k: usize,
    pub parts: usize,
    pub n: usize,
    pub tol: f64,
    pub trunc: f64,
    pub step: f64,
    pub checkpoint_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    pub format: ReportFormat,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Internal(#[from] LadderError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// Rendered report and whether the run counts as passed.
#[derive(Debug, Clone)]
pub struct Execution {
    pub report: String,
    pub passed: bool,
}

impl RunConfig {
    pub fn from_command(command: Command) -> Self {
        let (kind, a) = match command {
            Command::Checkpoint(a) => (CommandKind::Checkpoint, a),
            Command::Ladder(a) => (CommandKind::Ladder, a),
            Command::VerifyMatrix(a) => (CommandKind::VerifyMatrix, a),
            Command::Divide(a) => (CommandKind::Divide, a),
            Command::Chain(a) => (CommandKind::Chain, a),
            Command::Complementarity(a) => (CommandKind::Complementarity, a),
            Command::Primes(a) => (CommandKind::Primes, a),
        };
        Self {
            command: kind,
            t: a.t,
            g: a.g,
            k: a.k,
            parts: a.parts,
            n: a.n,
            tol: a.tol,
            trunc: a.trunc,
            step: a.step,
            checkpoint_path: a.checkpoint.or_else(default_checkpoint_path),
            out_path: a.out,
            format: a.format,
        }
    }

    /// Checks every numeric field against the owning operation's preconditions.
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        let cfg = LadderConfig::default();
        if !self.t.is_finite() {
            return usage(format!("--t {} is not finite", self.t));
        }
        let needs_ladder = !matches!(self.command, CommandKind::Checkpoint | CommandKind::Primes);
        if needs_ladder && self.t < cfg.min_t {
            return usage(format!("--t {} below the ladder domain {}", self.t, cfg.min_t));
        }
        let class_bound = self.t / self.t.ln();
        let check_g = || -> Result<(), CliError> {
            if !(self.g > 0.0) || !self.g.is_finite() {
                return usage(format!("--g {} must be positive", self.g));
            }
            if self.g > class_bound {
                return usage(format!("--g {} exceeds T/ln T = {class_bound}", self.g));
            }
            Ok(())
        };
        let check_tol = || -> Result<(), CliError> {
            if !(self.tol > 0.0) || !self.tol.is_finite() {
                return usage(format!("--tol {} must be positive", self.tol));
            }
            Ok(())
        };
        match self.command {
            CommandKind::Checkpoint => {
                if !(self.t > 0.0) {
                    return usage(format!("--t {} must be positive", self.t));
                }
                if !(self.step > 0.0) || !self.step.is_finite() {
                    return usage(format!("--step {} must be positive", self.step));
                }
                if self.checkpoint_path.is_none() {
                    return usage("checkpoint needs --checkpoint or $LADDERLAB_CKPT".into());
                }
            }
            CommandKind::Ladder => {
                if self.k > cfg.k_max {
                    return usage(format!("--k {} exceeds {}", self.k, cfg.k_max));
                }
            }
            CommandKind::VerifyMatrix => {
                check_g()?;
                check_tol()?;
                if !(2..=cfg.k_max).contains(&self.k) {
                    return usage(format!("--k {} outside 2..={}", self.k, cfg.k_max));
                }
            }
            CommandKind::Divide => {
                check_g()?;
                check_tol()?;
                if !(1..=cfg.k_max).contains(&self.k) {
                    return usage(format!("--k {} outside 1..={}", self.k, cfg.k_max));
                }
                if self.parts == 0 {
                    return usage("--parts must be at least 1".into());
                }
            }
            CommandKind::Chain => {
                check_tol()?;
                if !(1..=energies::CHAIN_MAX_N).contains(&self.n) {
                    return usage(format!("--n {} outside 1..={}", self.n, energies::CHAIN_MAX_N));
                }
                if !(1..=cfg.k_max).contains(&self.k) {
                    return usage(format!("--k {} outside 1..={}", self.k, cfg.k_max));
                }
                if !(self.trunc > 0.0) || !self.trunc.is_finite() {
                    return usage(format!("--trunc {} must be positive", self.trunc));
                }
                if 1.0 > class_bound {
                    return usage("--t too small for unit increments".into());
                }
            }
            CommandKind::Complementarity => {
                if self.t < crate::ladder::COMPLEMENTARITY_MIN_T {
                    return usage(format!("--t {} below {}", self.t, crate::ladder::COMPLEMENTARITY_MIN_T));
                }
                if self.t > PRIME_COUNT_CAP {
                    return usage(format!("--t {} above the prime-count cap", self.t));
                }
            }
            CommandKind::Primes => {
                if !(self.t >= 0.0) || self.t > PRIME_COUNT_CAP {
                    return usage(format!("--t {} outside [0, {PRIME_COUNT_CAP}]", self.t));
                }
            }
        }
        Ok(())
    }

    /// Largest height the command will integrate to.
    fn coverage(&self) -> f64 {
        let extra = match self.command {
            CommandKind::Chain => 1.0,
            CommandKind::Ladder => 0.0,
            _ => self.g,
        };
        Ladder::coverage_estimate(self.t + extra, self.k.max(1))
    }
}

/// Loads the checkpoint table and extends it (persisting the extension) to cover `needed`.
fn obtain_table(cfg: &RunConfig, ladder_cfg: &LadderConfig, needed: f64) -> Result<CheckpointTable, CliError> {
    let policy = ladder_cfg.integration;
    let mut table = match &cfg.checkpoint_path {
        Some(path) if path.exists() => CheckpointTable::load(path, policy)?,
        Some(path) if cfg.command == CommandKind::Checkpoint => {
            let _ = path;
            CheckpointTable::empty(cfg.step, policy)?
        }
        Some(path) => {
            return Err(CliError::Internal(LadderError::Checkpoint(format!(
                "{} does not exist; run `ladderlab checkpoint` first",
                path.display()
            ))))
        }
        None => CheckpointTable::empty(cfg.step, policy)?,
    };
    if table.t_max() < needed {
        table.extend_to(needed)?;
        if let Some(path) = &cfg.checkpoint_path {
            table.save(path)?;
        }
    }
    Ok(table)
}

#[derive(Serialize)]
struct CheckpointSummary {
    t_max: f64,
    step: f64,
    rows: usize,
    #[serde(rename = "I")]
    i_at_t_max: f64,
}

impl TabularReport for CheckpointSummary {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["t_max", "step", "rows", "I"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.t_max.to_string(),
            self.step.to_string(),
            self.rows.to_string(),
            self.i_at_t_max.to_string(),
        ]]
    }
}

#[derive(Serialize)]
struct LadderSummary {
    #[serde(rename = "T")]
    t: f64,
    #[serde(rename = "I")]
    cumulative: f64,
    phi1: f64,
    omega: f64,
    ztilde_sq: f64,
    tower: Vec<f64>,
}

impl TabularReport for LadderSummary {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["r", "level"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.tower
            .iter()
            .enumerate()
            .map(|(r, x)| vec![r.to_string(), x.to_string()])
            .collect()
    }
}

#[derive(Serialize)]
struct ChainSummary {
    n: usize,
    #[serde(rename = "T")]
    t: f64,
    k: usize,
    trunc: f64,
    value: f64,
    target: f64,
    error: f64,
    pass: bool,
}

impl TabularReport for ChainSummary {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "T", "k", "trunc", "value", "target", "error", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.n.to_string(),
            self.t.to_string(),
            self.k.to_string(),
            self.trunc.to_string(),
            self.value.to_string(),
            self.target.to_string(),
            self.error.to_string(),
            self.pass.to_string(),
        ]]
    }
}

impl TabularReport for Complementarity {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["T", "phi1", "prime_count", "delta", "target", "ratio"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.t.to_string(),
            self.phi1.to_string(),
            self.prime_count.to_string(),
            self.delta.to_string(),
            self.target.to_string(),
            self.ratio.to_string(),
        ]]
    }
}

impl TabularReport for PrimeCount {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["T", "count"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.threshold.to_string(), self.count.to_string()]]
    }
}

/// Runs a validated configuration and renders its report.
pub fn execute(cfg: &RunConfig) -> Result<Execution, CliError> {
    cfg.validate()?;
    let ladder_cfg = LadderConfig::default();
    let done = |report: &dyn Fn(ReportFormat) -> crate::Result<String>, passed: bool| -> Result<Execution, CliError> {
        Ok(Execution { report: report(cfg.format)?, passed })
    };

    if cfg.command == CommandKind::Primes {
        let pc = prime_count(cfg.t)?;
        return done(&|f| pc.render(f), true);
    }
    if cfg.command == CommandKind::Checkpoint {
        let table = obtain_table(cfg, &ladder_cfg, cfg.t)?;
        let last = table.grid().last().copied().unwrap_or((0.0, 0.0));
        let summary = CheckpointSummary {
            t_max: table.t_max(),
            step: table.step(),
            rows: table.grid().len(),
            i_at_t_max: last.1,
        };
        return done(&|f| summary.render(f), true);
    }

    let table = obtain_table(cfg, &ladder_cfg, cfg.coverage())?;
    let ladder = Ladder::new(&table, ladder_cfg)?;
    match cfg.command {
        CommandKind::Ladder => {
            let summary = LadderSummary {
                t: cfg.t,
                cumulative: ladder.cumulative_i(cfg.t)?,
                phi1: ladder.phi1(cfg.t)?,
                omega: ladder.omega(cfg.t)?,
                ztilde_sq: ladder.ztilde_sq(cfg.t)?,
                tower: ladder.reverse_iter(cfg.t, cfg.k)?.levels,
            };
            done(&|f| summary.render(f), true)
        }
        CommandKind::VerifyMatrix => {
            let report = energies::energy_matrix(&ladder, cfg.k, cfg.t, cfg.g, cfg.tol)?;
            done(&|f| report.render(f), report.pass)
        }
        CommandKind::Divide => {
            let report = energies::equal_division(&ladder, cfg.k, cfg.t, cfg.g, cfg.parts, cfg.tol)?;
            done(&|f| report.render(f), report.pass)
        }
        CommandKind::Chain => {
            let value = energies::gaussian_chain(&ladder, cfg.n, cfg.t, cfg.k, cfg.trunc)?;
            let target = std::f64::consts::FRAC_PI_2.powi(cfg.n as i32);
            let error = value - target;
            let summary = ChainSummary {
                n: cfg.n,
                t: cfg.t,
                k: cfg.k,
                trunc: cfg.trunc,
                value,
                target,
                error,
                pass: error.abs() <= cfg.tol,
            };
            done(&|f| summary.render(f), summary.pass)
        }
        CommandKind::Complementarity => {
            let c = ladder.complementarity(cfg.t)?;
            done(&|f| c.render(f), true)
        }
        CommandKind::Checkpoint | CommandKind::Primes => unreachable!("handled above"),
    }
}

fn emit(cfg: &RunConfig, report: &str) -> std::io::Result<()> {
    match &cfg.out_path {
        Some(path) => std::fs::write(path, report),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.as_bytes())?;
            out.flush()
        }
    }
}

/// Executes `cfg`, writes the report, and returns the exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(exec) => {
            if let Err(e) = emit(cfg, &exec.report) {
                eprintln!("ladderlab: cannot write report: {e}");
                return EXIT_INTERNAL;
            }
            if exec.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            eprintln!("ladderlab: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&RunConfig::from_command(cli.command)),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}
