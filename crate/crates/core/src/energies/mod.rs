//! Reversely iterated integrals (energies) and the constraint matrix.
//!
//! Entry `(p, s)` integrates `∏_{r=0}^{s-1} Z̃²(φ₁ʳ(t))` from `T̂ᵖ` to
//! `(T̂ᵖ⁻ˢ + g)̂ˢ`. The integrand is the derivative of `φ₁ˢ`, and `φ₁ˢ` maps
//! the limits to `T̂ᵖ⁻ˢ` and `T̂ᵖ⁻ˢ + g`, so every entry equals `g`.

mod chain;
mod division;
mod report;

use std::cell::RefCell;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LadderError, Result};
use crate::ladder::{IterationTower, Ladder, PullbackChart};
use crate::quadrature::{integrate_with, QuadratureResult};
use crate::zeta::zero_density;

pub use chain::{chain_with, cosine_chain_grid, gaussian_chain, gaussian_chain_with, ChainGrid, CHAIN_MAX_N};
pub use division::{equal_division, DivisionReport};
pub use report::{ReportFormat, TabularReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyEntry {
    pub p: usize,
    pub s: usize,
    pub value: f64,
    /// `value − g`
    pub residual: f64,
    pub quad_error: f64,
    #[serde(skip)]
    pub lower: f64,
    #[serde(skip)]
    pub upper: f64,
}

/// All entries `1 ≤ s ≤ p ≤ k` of the combined matrix, with a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub g: f64,
    pub k: usize,
    pub entries: Vec<EnergyEntry>,
    pub max_residual: f64,
    pub pass: bool,
}

impl ConstraintReport {
    pub fn entry(&self, p: usize, s: usize) -> Option<&EnergyEntry> {
        self.entries.iter().find(|e| e.p == p && e.s == s)
    }
}

fn check_indices(op: &'static str, p: usize, s: usize) -> Result<()> {
    if s == 0 || s > p {
        return Err(LadderError::domain(op, format!("need 1 ≤ s ≤ p, got p = {p}, s = {s}")));
    }
    Ok(())
}

/// `g ≥ 0` and `g ≤ T / ln T`.
fn check_class(op: &'static str, t: f64, g: f64) -> Result<()> {
    if !(g >= 0.0) || !g.is_finite() {
        return Err(LadderError::domain(op, format!("g = {g} must be nonnegative")));
    }
    let bound = t / t.ln();
    if g > bound {
        return Err(LadderError::domain(op, format!("g = {g} exceeds T/ln T = {bound}")));
    }
    Ok(())
}

/// Integrates `∏_{r<s} Z̃²(φ₁ʳ(t))` over `[lower, upper]`.
pub fn iterated_integral(ladder: &Ladder<'_>, s: usize, lower: f64, upper: f64) -> Result<QuadratureResult<f64>> {
    if !(lower <= upper) {
        return Err(LadderError::domain("iterated_integral", format!("lower = {lower} > upper = {upper}")));
    }
    let chart = PullbackChart::new(ladder, lower, s)?;
    chart_integral(ladder, &chart, 0.0, upper - lower)
}

/// `∫ dηₛ/dτ dτ` over `[tau_lo, tau_hi]` in the chart's offset coordinate.
fn chart_integral(
    ladder: &Ladder<'_>,
    chart: &PullbackChart<'_, '_>,
    tau_lo: f64,
    tau_hi: f64,
) -> Result<QuadratureResult<f64>> {
    if tau_hi == tau_lo {
        return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, panels: 0 });
    }
    let failure: RefCell<Option<LadderError>> = RefCell::new(None);
    let integrand = |tau: f64| -> f64 {
        if failure.borrow().is_some() {
            return 0.0;
        }
        match chart.eval(tau) {
            Ok(point) => point.density,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let s = chart.depth() as f64;
    let base = chart.base(0);
    let cfg = ladder.config();
    let result = integrate_with(
        integrand,
        tau_lo,
        tau_hi,
        cfg.quad_tol,
        |_| s * zero_density(base),
        &cfg.integration.quad,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result
}

/// Offset `τ` at which the `s`-th image has advanced by `g` past the image
/// of the chart base, i.e. `(φ₁ˢ(base) + g)̂ˢ − base`.
///
/// The base is a rounded reverse iterate, and `φ₁ˢ` magnifies its rounding
/// by `∏ Z̃²`, which reaches 10⁵ and more on deep levels. Measuring `g` from
/// the image of the base actually used keeps the limits consistent.
fn chart_upper(chart: &PullbackChart<'_, '_>, g: f64) -> Result<f64> {
    let start = chart.eval(0.0)?;
    let target = start.offsets[chart.depth()] + g;
    let guess = if start.density > 0.0 { g / start.density } else { g };
    chart.solve(target, guess.max(1e-12 * chart.base(0)))
}

fn entry_from_tower(ladder: &Ladder<'_>, tower: &IterationTower, p: usize, s: usize, g: f64) -> Result<EnergyEntry> {
    let lower = tower.level(p);
    let (tau, q) = if g == 0.0 {
        (0.0, QuadratureResult { value: 0.0, error_estimate: 0.0, panels: 0 })
    } else {
        let chart = PullbackChart::new(ladder, lower, s)?;
        let tau = chart_upper(&chart, g)?;
        (tau, chart_integral(ladder, &chart, 0.0, tau)?)
    };
    Ok(EnergyEntry {
        p,
        s,
        value: q.value,
        residual: q.value - g,
        quad_error: q.error_estimate,
        lower,
        upper: lower + tau,
    })
}

/// Entry `(p, s)` of the energy matrix at `(T, g)`, by quadrature.
pub fn energy(ladder: &Ladder<'_>, p: usize, s: usize, t: f64, g: f64) -> Result<EnergyEntry> {
    check_indices("energy", p, s)?;
    check_class("energy", t, g)?;
    let tower = ladder.reverse_iter(t, p)?;
    entry_from_tower(ladder, &tower, p, s, g)
}

/// Entry `(p, s)` by telescoping: `φ₁ˢ(upper) − φ₁ˢ(lower)`.
pub fn energy_via_tower(ladder: &Ladder<'_>, p: usize, s: usize, t: f64, g: f64) -> Result<f64> {
    check_indices("energy_via_tower", p, s)?;
    check_class("energy_via_tower", t, g)?;
    let tower = ladder.reverse_iter(t, p)?;
    if g == 0.0 {
        return Ok(0.0);
    }
    let lower = tower.level(p);
    let upper = ladder.reverse_iter(tower.level(p - s) + g, s)?.top();
    Ok(ladder.phi1_iter(upper, s)? - ladder.phi1_iter(lower, s)?)
}

/// The full matrix for `2 ≤ k ≤ k_max`; passes iff every `|value − g| ≤ tol·max(1, g)`.
pub fn energy_matrix(ladder: &Ladder<'_>, k: usize, t: f64, g: f64, tol: f64) -> Result<ConstraintReport> {
    let k_max = ladder.config().k_max;
    if !(2..=k_max).contains(&k) {
        return Err(LadderError::domain("energy_matrix", format!("k = {k} outside 2..={k_max}")));
    }
    if !(tol > 0.0) {
        return Err(LadderError::domain("energy_matrix", format!("tol = {tol} must be positive")));
    }
    if !(g > 0.0) {
        return Err(LadderError::domain("energy_matrix", format!("g = {g} must be positive")));
    }
    check_class("energy_matrix", t, g)?;
    let tower = ladder.reverse_iter(t, k)?;
    let cells: Vec<(usize, usize)> = (1..=k).flat_map(|p| (1..=p).map(move |s| (p, s))).collect();
    let entries = cells
        .par_iter()
        .map(|&(p, s)| entry_from_tower(ladder, &tower, p, s, g))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = entries.iter().map(|e| e.residual.abs()).fold(0.0, f64::max);
    let pass = max_residual <= tol * g.max(1.0);
    Ok(ConstraintReport { t, g, k, entries, max_residual, pass })
}

/// Both `T` and `T2` satisfy the full matrix with the same `(g, k, tol)`.
pub fn translation_check(ladder: &Ladder<'_>, t: f64, t2: f64, g: f64, k: usize, tol: f64) -> Result<bool> {
    if !(g > 0.0) {
        return Err(LadderError::domain("translation_check", format!("g = {g} must be positive")));
    }
    let first = energy_matrix(ladder, k, t, g, tol)?;
    if t2 == t {
        return Ok(first.pass);
    }
    let second = energy_matrix(ladder, k, t2, g, tol)?;
    Ok(first.pass && second.pass)
}
