//! The Jacob's ladder `φ₁`.
//!
//! `φ₁(T)` is the unique `y` with `F(y) = I(T)`, where
//! `F(y) = y ln y + (c − ln 2π) y + c₀` and `I(T) = ∫_0^T Z(t)² dt`.
//! Differentiating gives `φ₁'(t) = Z(t)² / ω(t)` with
//! `ω(t) = ln φ₁(t) + 1 + c − ln 2π`, so `Z̃² := Z²/ω` is exactly `dφ₁/dt`
//! and all iterated energy identities reduce to changes of variables.

mod chart;
mod config;
mod tower;

use crate::error::{LadderError, Result};
use crate::primes::prime_count;
use crate::quadrature::CheckpointTable;
use crate::roots::{newton_bisect, RootOptions};
use crate::zeta;

pub use chart::{ChartPoint, PullbackChart};
pub use config::{LadderConfig, EULER_GAMMA, LN_2PI};
pub use tower::{Complementarity, IterationTower, Segment};

/// Lower edge of the domain of [`Ladder::f_value`].
pub const F_DOMAIN_MIN: f64 = 1.5;

/// Smallest `T` for which the complementarity law is evaluated.
pub const COMPLEMENTARITY_MIN_T: f64 = 1e3;

/// Ladder operations over an immutable checkpoint table.
#[derive(Debug, Clone, Copy)]
pub struct Ladder<'a> {
    table: &'a CheckpointTable,
    cfg: LadderConfig,
}

impl<'a> Ladder<'a> {
    pub fn new(table: &'a CheckpointTable, cfg: LadderConfig) -> Result<Self> {
        cfg.validate()?;
        if table.policy() != &cfg.integration {
            return Err(LadderError::domain(
                "ladder",
                "checkpoint table was built with a different integration policy",
            ));
        }
        Ok(Self { table, cfg })
    }

    pub fn config(&self) -> &LadderConfig {
        &self.cfg
    }

    pub fn table(&self) -> &'a CheckpointTable {
        self.table
    }

    /// `F(y) = y ln y + (c − ln 2π) y + c₀` on its increasing branch `y > 1.5`.
    pub fn f_value(&self, y: f64) -> Result<f64> {
        if !(y > F_DOMAIN_MIN) || !y.is_finite() {
            return Err(LadderError::domain("F", format!("y = {y} must exceed {F_DOMAIN_MIN}")));
        }
        Ok(self.f_raw(y))
    }

    fn f_raw(&self, y: f64) -> f64 {
        y * y.ln() + (self.cfg.c - self.cfg.ln2pi) * y + self.cfg.c0
    }

    fn f_deriv(&self, y: f64) -> f64 {
        y.ln() + 1.0 + self.cfg.c - self.cfg.ln2pi
    }

    pub fn cumulative_i(&self, t: f64) -> Result<f64> {
        self.table.cumulative_i(t)
    }

    fn check_domain(&self, op: &'static str, t: f64) -> Result<()> {
        if !(t >= self.cfg.min_t) || !t.is_finite() {
            return Err(LadderError::domain(op, format!("t = {t} below {}", self.cfg.min_t)));
        }
        Ok(())
    }

    /// `φ₁(T)`: inverts `F` at `I(T)`.
    pub fn phi1(&self, t: f64) -> Result<f64> {
        self.check_domain("phi1", t)?;
        let target = self.table.cumulative_i(t)?;
        self.invert_f(t, target)
    }

    fn invert_f(&self, t: f64, target: f64) -> Result<f64> {
        let (lo, hi) = (0.5 * t, t);
        let (f_lo, f_hi) = (self.f_raw(lo), self.f_raw(hi));
        if !(f_lo <= target && target <= f_hi) {
            return Err(LadderError::NoBracket {
                op: "phi1",
                target,
                lo_value: f_lo,
                hi_value: f_hi,
            });
        }
        let guess = t - (1.0 - self.cfg.c) * t / t.ln();
        let opts = RootOptions {
            f_tol: self.cfg.newton_tol * (1.0 + target.abs()),
            x_tol: 4.0 * f64::EPSILON * t,
            max_iter: self.cfg.max_newton_iters,
        };
        newton_bisect(
            "phi1",
            |y| Ok((self.f_raw(y) - target, self.f_deriv(y))),
            lo,
            hi,
            guess,
            &opts,
        )
        .map(|r| r.x)
    }

    /// `ω(t) = ln φ₁(t) + 1 + c − ln 2π`.
    pub fn omega(&self, t: f64) -> Result<f64> {
        let y = self.phi1(t)?;
        Ok(self.f_deriv(y))
    }

    /// `Z̃²(t) = Z(t)² / ω(t) = dφ₁/dt`.
    pub fn ztilde_sq(&self, t: f64) -> Result<f64> {
        let w = self.omega(t)?;
        Ok(zeta::zsq(t, &self.cfg.integration.zeta) / w)
    }

    /// `φ₁ʳ(t)`, with `φ₁⁰(t) = t`.
    pub fn phi1_iter(&self, t: f64, r: usize) -> Result<f64> {
        let mut y = t;
        for level in 1..=r {
            y = self.phi1(y).map_err(|e| e.at_level("phi1_iter", level))?;
        }
        Ok(y)
    }

    /// `∏_{r=0}^{s-1} Z̃²(φ₁ʳ(t))`, the derivative of `φ₁ˢ` at `t`.
    ///
    /// Also returns the pull-back points `[t, φ₁(t), …, φ₁ˢ(t)]`.
    pub fn iterated_density(&self, t: f64, s: usize) -> Result<(f64, Vec<f64>)> {
        let zcfg = &self.cfg.integration.zeta;
        let mut points = Vec::with_capacity(s + 1);
        points.push(t);
        let mut product = 1.0;
        let mut y = t;
        for level in 1..=s {
            let next = self.phi1(y).map_err(|e| e.at_level("iterated_density", level))?;
            product *= zeta::zsq(y, zcfg) / self.f_deriv(next);
            points.push(next);
            y = next;
        }
        Ok((product, points))
    }

    /// Reverse iterates `[y, ŷ¹, …, ŷᵏ]` with `φ₁(ŷʳ) = ŷʳ⁻¹`.
    pub fn reverse_iter(&self, y: f64, k: usize) -> Result<IterationTower> {
        self.check_domain("reverse_iter", y)?;
        let mut levels = Vec::with_capacity(k + 1);
        levels.push(y);
        for level in 1..=k {
            let prev = levels[level - 1];
            let x = self
                .preimage(prev)
                .map_err(|e| e.at_level("reverse_iter", level))?;
            levels.push(x);
        }
        Ok(IterationTower { base: y, levels })
    }

    /// The `x > prev` with `φ₁(x) = prev`, i.e. `I(x) = F(prev)`.
    fn preimage(&self, prev: f64) -> Result<f64> {
        let target = self.f_value(prev)?;
        let zcfg = self.cfg.integration.zeta;
        let residual = |x: f64| -> Result<(f64, f64)> {
            let i = self.table.cumulative_i(x)?;
            Ok((i - target, zeta::zsq(x, &zcfg)))
        };
        let lag = (1.0 - self.cfg.c) * prev / prev.ln();
        let guess = prev + lag;
        let mut hi = prev + 2.0 * lag;
        let t_max = self.table.t_max();
        // widen the bracket until I(hi) passes the target
        loop {
            let hi_c = hi.min(t_max);
            if residual(hi_c)?.0 >= 0.0 {
                hi = hi_c;
                break;
            }
            if hi_c >= t_max {
                return Err(LadderError::BeyondTable { t: hi, t_max });
            }
            hi += 2.0 * lag;
        }
        let opts = RootOptions {
            f_tol: self.cfg.newton_tol * (1.0 + target.abs()),
            x_tol: 4.0 * f64::EPSILON * hi,
            max_iter: self.cfg.max_newton_iters,
        };
        newton_bisect("reverse_iter", residual, prev, hi, guess.min(hi), &opts).map(|r| r.x)
    }

    /// `[T̂ʳ, (T+g)̂ʳ]`.
    pub fn segment(&self, r: usize, t: f64, g: f64) -> Result<Segment> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(LadderError::domain("segment", format!("g = {g} must be positive")));
        }
        let lo = self.reverse_iter(t, r)?.top();
        let hi = self.reverse_iter(t + g, r)?.top();
        Ok(Segment { r, lo, hi, g })
    }

    /// Distance from segment `r − 1` to segment `r`.
    pub fn gap(&self, r: usize, t: f64, g: f64) -> Result<f64> {
        if r == 0 {
            return Err(LadderError::domain("gap", "r must be at least 1"));
        }
        let prev = self.segment(r - 1, t, g)?;
        let this = self.segment(r, t, g)?;
        Ok(this.lo - prev.hi)
    }

    /// `T − φ₁(T)` against `(1 − c) π(T)`.
    pub fn complementarity(&self, t: f64) -> Result<Complementarity> {
        if !(t >= COMPLEMENTARITY_MIN_T) {
            return Err(LadderError::domain(
                "complementarity",
                format!("T = {t} below {COMPLEMENTARITY_MIN_T}"),
            ));
        }
        let phi1 = self.phi1(t)?;
        let pc = prime_count(t)?;
        let delta = t - phi1;
        let target = (1.0 - self.cfg.c) * pc.count as f64;
        Ok(Complementarity {
            t,
            phi1,
            prime_count: pc.count,
            delta,
            target,
            ratio: delta / target,
        })
    }

    /// Rough upper bound for `T̂ᵏ`, used to size checkpoint tables.
    pub fn coverage_estimate(t: f64, k: usize) -> f64 {
        let mut x = t.max(3.0);
        for _ in 0..k {
            x += 1.25 * (1.0 - EULER_GAMMA) * x / x.ln();
        }
        x * 1.01 + 20.0
    }
}
