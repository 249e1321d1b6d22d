use serde::Serialize;

use super::{chart_integral, chart_upper, check_class};
use crate::error::{LadderError, Result};
use crate::ladder::{Ladder, PullbackChart};

/// Division of the level-`k` energy over `[T, T+g]` into `N` equal parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisionReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub g: f64,
    pub k: usize,
    pub parts_count: usize,
    /// `δ = g / N`
    pub delta: f64,
    /// Energy over `[(T+(n-1)δ)̂ᵏ, (T+nδ)̂ᵏ]` for `n = 1..=N`.
    pub parts: Vec<f64>,
    /// `part − δ` for each part.
    pub residuals: Vec<f64>,
    pub sum: f64,
    /// Energy over `[T̂ᵏ, (T+Nδ)̂ᵏ]` integrated in one piece.
    pub whole: f64,
    /// `whole − N · parts[0]`
    pub scaling_residual: f64,
    pub pass: bool,
}

/// Equal division of the diagonal energy, with the `N`-scaling identity.
pub fn equal_division(ladder: &Ladder<'_>, k: usize, t: f64, g: f64, n_parts: usize, tol: f64) -> Result<DivisionReport> {
    if n_parts == 0 {
        return Err(LadderError::domain("equal_division", "N must be at least 1"));
    }
    if k == 0 {
        return Err(LadderError::domain("equal_division", "k must be at least 1"));
    }
    if !(g > 0.0) {
        return Err(LadderError::domain("equal_division", format!("g = {g} must be positive")));
    }
    check_class("equal_division", t, g)?;
    let delta = g / n_parts as f64;
    let tower = ladder.reverse_iter(t, k)?;
    let chart = PullbackChart::new(ladder, tower.top(), k)?;
    let taus = (0..=n_parts)
        .map(|n| match n {
            0 => Ok(0.0),
            n if n == n_parts => chart_upper(&chart, g),
            n => chart_upper(&chart, n as f64 * delta),
        })
        .collect::<Result<Vec<_>>>()?;
    let parts = taus
        .windows(2)
        .map(|w| chart_integral(ladder, &chart, w[0], w[1]).map(|q| q.value))
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<f64> = parts.iter().map(|v| v - delta).collect();
    let sum = crate::quadrature::compensated_sum(parts.iter().copied());
    let whole = chart_integral(ladder, &chart, 0.0, taus[n_parts])?.value;
    let scaling_residual = whole - n_parts as f64 * parts[0];
    let budget = n_parts as f64 * tol * g.max(1.0);
    let pass = residuals.iter().all(|r| r.abs() <= tol * delta.max(1.0))
        && (sum - g).abs() <= budget
        && scaling_residual.abs() <= budget;
    Ok(DivisionReport {
        t,
        g,
        k,
        parts_count: n_parts,
        delta,
        parts,
        residuals,
        sum,
        whole,
        scaling_residual,
        pass,
    })
}
