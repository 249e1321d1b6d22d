//! The pull-back chain of a base point, tracked in offset coordinates.
//!
//! Deep energy segments are so thin that their width is only a few million
//! ulps of their position, and evaluating `φ₁ʳ` at absolute abscissae loses
//! most of the significant digits of the width. Here every level `r` is
//! written as `bᵣ + ηᵣ` with `bᵣ = φ₁ʳ(b₀)`, and the offsets are propagated
//! through
//!
//! `F(bᵣ₊₁ + ηᵣ₊₁) − F(bᵣ₊₁) = mᵣ + ∫_0^{ηᵣ} Z(bᵣ + u)² du`,
//!
//! where `mᵣ = I(bᵣ) − F(bᵣ₊₁)` is the residual left by the base solve.
//! Both sides are evaluated as differences, so offsets keep full relative
//! precision however small they are.

use super::Ladder;
use crate::error::{LadderError, Result};
use crate::quadrature::integrate_with;
use crate::roots::{newton_bisect, RootOptions};
use crate::zeta;

/// Offset coordinates along `b₀ → φ₁(b₀) → … → φ₁ˢ(b₀)`.
#[derive(Debug, Clone)]
pub struct PullbackChart<'l, 'a> {
    ladder: &'l Ladder<'a>,
    bases: Vec<f64>,
    cumulative: Vec<f64>,
    mismatch: Vec<f64>,
}

/// Offsets `[η₀ = τ, η₁, …, ηₛ]` of one point and `dηₛ/dτ` there.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub offsets: Vec<f64>,
    /// `∏_{r<s} Z̃²(bᵣ + ηᵣ)`
    pub density: f64,
}

impl<'l, 'a> PullbackChart<'l, 'a> {
    pub fn new(ladder: &'l Ladder<'a>, base: f64, s: usize) -> Result<Self> {
        let mut bases = vec![base];
        let mut cumulative = Vec::with_capacity(s);
        let mut mismatch = Vec::with_capacity(s);
        for level in 1..=s {
            let prev = bases[level - 1];
            let i = ladder.cumulative_i(prev)?;
            let next = ladder
                .phi1(prev)
                .map_err(|e| e.at_level("pullback chart", level))?;
            cumulative.push(i);
            mismatch.push(i - ladder.f_raw(next));
            bases.push(next);
        }
        Ok(Self { ladder, bases, cumulative, mismatch })
    }

    pub fn depth(&self) -> usize {
        self.bases.len() - 1
    }

    /// `bᵣ = φ₁ʳ(b₀)`.
    pub fn base(&self, r: usize) -> f64 {
        self.bases[r]
    }

    /// `∫_0^η Z(bᵣ + u)² du`, signed.
    fn zsq_from_base(&self, r: usize, eta: f64) -> Result<f64> {
        if eta == 0.0 {
            return Ok(0.0);
        }
        let b = self.bases[r];
        let table = self.ladder.table();
        if eta.abs() > table.step() {
            return Ok(table.cumulative_i(b + eta)? - self.cumulative[r]);
        }
        let policy = self.ladder.config().integration;
        let zcfg = policy.zeta;
        let (lo, hi) = if eta > 0.0 { (0.0, eta) } else { (eta, 0.0) };
        let q = integrate_with(
            |u| zeta::zsq(b + u, &zcfg),
            lo,
            hi,
            policy.tol,
            |u| zeta::zero_density(b + u),
            &policy.quad,
        )?;
        Ok(if eta > 0.0 { q.value } else { -q.value })
    }

    /// The `η` with `F(y₀ + η) − F(y₀) = rhs`.
    fn invert_f_offset(&self, y0: f64, rhs: f64) -> f64 {
        let c = self.ladder.config();
        let slope = c.c - c.ln2pi;
        let delta_f = |eta: f64| eta * y0.ln() + (y0 + eta) * (eta / y0).ln_1p() + slope * eta;
        let mut eta = rhs / self.ladder.f_deriv(y0);
        for _ in 0..8 {
            let step = (delta_f(eta) - rhs) / self.ladder.f_deriv(y0 + eta);
            eta -= step;
            if step.abs() <= 2.0 * f64::EPSILON * eta.abs() {
                break;
            }
        }
        eta
    }

    /// Offsets and density at `b₀ + τ`.
    pub fn eval(&self, tau: f64) -> Result<ChartPoint> {
        let zcfg = self.ladder.config().integration.zeta;
        let mut offsets = Vec::with_capacity(self.bases.len());
        offsets.push(tau);
        let mut density = 1.0;
        for r in 0..self.depth() {
            let eta = offsets[r];
            let rhs = self.mismatch[r] + self.zsq_from_base(r, eta)?;
            let next = self.invert_f_offset(self.bases[r + 1], rhs);
            density *= zeta::zsq(self.bases[r] + eta, &zcfg) / self.ladder.f_deriv(self.bases[r + 1] + next);
            offsets.push(next);
        }
        Ok(ChartPoint { offsets, density })
    }

    /// The `τ ≥ 0` with `ηₛ(τ) = target`; `guess` is a rough scale for `τ`.
    ///
    /// Returns 0 when `ηₛ(0)` already reaches the target.
    pub fn solve(&self, target: f64, guess: f64) -> Result<f64> {
        let s = self.depth();
        let residual = |tau: f64| -> Result<(f64, f64)> {
            let p = self.eval(tau)?;
            Ok((p.offsets[s] - target, p.density))
        };
        if residual(0.0)?.0 >= 0.0 {
            return Ok(0.0);
        }
        let mut hi = if guess > 0.0 && guess.is_finite() { guess } else { 1.0 };
        let mut expansions = 0;
        while residual(hi)?.0 < 0.0 {
            hi *= 2.0;
            expansions += 1;
            if expansions > 60 {
                return Err(LadderError::NonConvergence {
                    op: "pullback chart",
                    iterations: expansions,
                    residual: target,
                });
            }
        }
        // ηₛ inherits the relative tolerance of the Z² integrals over up to one grid step
        let policy = self.ladder.config().integration;
        let b0 = self.bases[0];
        let floor = 4.0 * policy.tol * self.ladder.table().step() * self.ladder.f_deriv(b0)
            / self.ladder.f_deriv(self.bases[s]);
        let opts = RootOptions {
            f_tol: 1e-13 * target.abs() + floor,
            x_tol: 4.0 * f64::EPSILON * hi,
            max_iter: self.ladder.config().max_newton_iters,
        };
        newton_bisect("pullback chart", residual, 0.0, hi, guess.min(hi), &opts).map(|r| r.x)
    }
}
