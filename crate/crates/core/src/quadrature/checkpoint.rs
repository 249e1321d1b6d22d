//! Persistent cumulative integral `I(T) = ∫_0^T Z(t)² dt` on a uniform grid.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{integrate_with, QuadratureOptions, QuadratureResult};
use crate::error::{LadderError, Result};
use crate::zeta::{self, ZetaConfig};

/// Environment variable holding the default checkpoint file path.
pub const CHECKPOINT_ENV: &str = "LADDERLAB_CKPT";

pub fn default_checkpoint_path() -> Option<PathBuf> {
    std::env::var_os(CHECKPOINT_ENV).map(PathBuf::from)
}

/// How the integrand `Z²` is evaluated and integrated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationPolicy {
    pub zeta: ZetaConfig,
    pub quad: QuadratureOptions,
    /// Relative tolerance for each integrated increment.
    pub tol: f64,
}

impl Default for IntegrationPolicy {
    fn default() -> Self {
        Self {
            zeta: ZetaConfig::default(),
            quad: QuadratureOptions::default(),
            tol: 1e-10,
        }
    }
}

impl IntegrationPolicy {
    /// `∫_a^b Z(t)² dt`.
    ///
    /// The error estimate also covers rounding in the integrand: `Z(t)` is a
    /// cosine sum whose phase `θ(t)` is only known to about `ε·θ(t)`.
    pub fn integrate_zsq(&self, a: f64, b: f64) -> Result<QuadratureResult<f64>> {
        let zcfg = self.zeta;
        let mut r = integrate_with(
            |t| zeta::zsq(t, &zcfg),
            a,
            b,
            self.tol,
            zeta::zero_density,
            &self.quad,
        )?;
        r.error_estimate += f64::EPSILON * phase_scale(a.abs().max(b.abs())) * r.value.abs();
        Ok(r)
    }
}

/// Rough size of `θ(t)` plus the main-sum length, floored at 1.
fn phase_scale(t: f64) -> f64 {
    let theta = 0.5 * t * (t / (2.0 * std::f64::consts::PI * std::f64::consts::E)).ln();
    1.0 + theta.abs() + (t / (2.0 * std::f64::consts::PI)).sqrt()
}

/// Grid of `(t, I(t))` at multiples of `step`, starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointTable {
    grid: Vec<(f64, f64)>,
    step: f64,
    policy: IntegrationPolicy,
}

pub fn build_checkpoints(t_max: f64, step: f64) -> Result<CheckpointTable> {
    build_checkpoints_with(t_max, step, IntegrationPolicy::default())
}

pub fn build_checkpoints_with(t_max: f64, step: f64, policy: IntegrationPolicy) -> Result<CheckpointTable> {
    let mut table = CheckpointTable::empty(step, policy)?;
    table.extend_to(t_max)?;
    Ok(table)
}

impl CheckpointTable {
    /// Table holding only the origin.
    pub fn empty(step: f64, policy: IntegrationPolicy) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(LadderError::domain("build_checkpoints", format!("step = {step} must be positive")));
        }
        policy.zeta.validate()?;
        Ok(Self {
            grid: vec![(0.0, 0.0)],
            step,
            policy,
        })
    }

    pub fn grid(&self) -> &[(f64, f64)] {
        &self.grid
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn t_max(&self) -> f64 {
        self.grid.last().map_or(0.0, |e| e.0)
    }

    pub fn policy(&self) -> &IntegrationPolicy {
        &self.policy
    }

    /// Grows the table until it covers `t_max`, reusing every existing row.
    ///
    /// Increments are integrated independently (in parallel) and then
    /// accumulated serially, so the result does not depend on scheduling.
    pub fn extend_to(&mut self, t_max: f64) -> Result<()> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(LadderError::domain("build_checkpoints", format!("t_max = {t_max} must be positive")));
        }
        let have = self.grid.len() - 1;
        let want = (t_max / self.step - 1e-9).ceil().max(1.0) as usize;
        if want <= have {
            return Ok(());
        }
        let step = self.step;
        let policy = self.policy;
        let increments: Vec<f64> = (have..want)
            .into_par_iter()
            .map(|i| {
                let a = i as f64 * step;
                let b = (i + 1) as f64 * step;
                policy.integrate_zsq(a, b).map(|r| r.value)
            })
            .collect::<Result<_>>()?;
        self.grid.reserve(increments.len());
        for (offset, inc) in increments.into_iter().enumerate() {
            let i = have + offset + 1;
            let prev = self.grid.last().map_or(0.0, |e| e.1);
            self.grid.push((i as f64 * step, prev + inc.max(0.0)));
        }
        Ok(())
    }

    /// `I(t)`: nearest checkpoint at or below `t` plus the integrated remainder.
    pub fn cumulative_i(&self, t: f64) -> Result<f64> {
        self.cumulative_i_detail(t).map(|r| r.value)
    }

    /// As [`cumulative_i`](Self::cumulative_i), with the remainder's error estimate.
    pub fn cumulative_i_detail(&self, t: f64) -> Result<QuadratureResult<f64>> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(LadderError::domain("cumulative_I", format!("T = {t} must be nonnegative")));
        }
        let t_max = self.t_max();
        if t > t_max {
            return Err(LadderError::BeyondTable { t, t_max });
        }
        let idx = ((t / self.step).floor() as usize).min(self.grid.len() - 1);
        // guard against the floor landing one row too high through rounding
        let idx = if self.grid[idx].0 > t { idx - 1 } else { idx };
        let (t0, i0) = self.grid[idx];
        if t0 == t {
            return Ok(QuadratureResult {
                value: i0,
                error_estimate: 0.0,
                panels: 0,
            });
        }
        let rest = self.policy.integrate_zsq(t0, t)?;
        Ok(QuadratureResult {
            value: i0 + rest.value,
            ..rest
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "I"])?;
        for &(t, i) in &self.grid {
            w.write_record([format!("{t:.16e}"), format!("{i:.16e}")])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let tmp = path.with_extension("partial");
        {
            let file = BufWriter::new(File::create(&tmp)?);
            self.write_csv(file)?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Reads a table written by [`write_csv`](Self::write_csv) and checks its invariants.
    pub fn read_csv<R: Read>(input: R, policy: IntegrationPolicy) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "I" {
            return Err(LadderError::Checkpoint(format!("expected header `t,I`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut grid = Vec::new();
        for (line, record) in r.records().enumerate() {
            let record = record?;
            let parse = |k: usize| -> Result<f64> {
                record
                    .get(k)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| LadderError::Checkpoint(format!("row {}: bad number", line + 2)))
            };
            grid.push((parse(0)?, parse(1)?));
        }
        if grid.first() != Some(&(0.0, 0.0)) {
            return Err(LadderError::Checkpoint("first row must be (0, 0)".into()));
        }
        let step = match grid.get(1) {
            Some(&(t1, _)) if t1 > 0.0 => t1,
            Some(_) => return Err(LadderError::Checkpoint("t must be strictly increasing".into())),
            None => policy_default_step(),
        };
        for (i, w) in grid.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(LadderError::Checkpoint(format!("t not strictly increasing at row {}", i + 3)));
            }
            if w[1].1 < w[0].1 {
                return Err(LadderError::Checkpoint(format!("I decreasing at row {}", i + 3)));
            }
            if w[1].0 != (i + 1) as f64 * step {
                return Err(LadderError::Checkpoint(format!("row {} is off the uniform grid", i + 3)));
            }
        }
        let mut table = Self::empty(step, policy)?;
        table.grid = grid;
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>, policy: IntegrationPolicy) -> Result<Self> {
        Self::read_csv(BufReader::new(File::open(path)?), policy)
    }
}

fn policy_default_step() -> f64 {
    10.0
}
