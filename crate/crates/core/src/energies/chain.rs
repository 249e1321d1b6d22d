//! Cosine-transform chain over energies with Gaussian increments.
//!
//! With `E(x) = energy(k, k, T, ∏ e^{−x_l²/2})`, the iterated integral
//! `∫ dω ∫ dx ∏ cos(ω_l x_l) E(x)` over `[0, trunc]^{2n}` tends to `(π/2)ⁿ`.
//! The `x` integrals are done first on a fixed composite Gauss–Legendre
//! grid, giving `A(ω)`, which is then integrated over `ω` on the same kind
//! of grid. For `n = 2` the cosine factors separate by coordinate.

use std::collections::HashMap;

use super::{chart_integral, chart_upper};
use crate::error::{LadderError, Result};
use crate::ladder::{Ladder, PullbackChart};
use crate::quadrature::composite_gauss_legendre;

/// Largest chain dimension evaluated.
pub const CHAIN_MAX_N: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainGrid {
    pub panels: usize,
    pub order: usize,
}

impl Default for ChainGrid {
    fn default() -> Self {
        Self { panels: 4, order: 16 }
    }
}

/// `Σ_i w_i cos(ω x_i) E(x_i)` on the grid, i.e. `A(ω)` for `n = 1`.
pub fn cosine_chain_grid(trunc: f64, grid: ChainGrid) -> Vec<(f64, f64)> {
    composite_gauss_legendre(0.0, trunc, grid.panels, grid.order)
}

/// Chain value for an arbitrary energy functional `g ↦ E(g)`.
pub fn chain_with<E>(n: usize, trunc: f64, grid: ChainGrid, mut energy: E) -> Result<f64>
where
    E: FnMut(f64) -> Result<f64>,
{
    if n == 0 || n > CHAIN_MAX_N {
        return Err(LadderError::Resource {
            op: "gaussian_chain",
            detail: format!("n = {n} outside the desk-scale range 1..={CHAIN_MAX_N}"),
        });
    }
    if !(trunc > 0.0) {
        return Err(LadderError::domain("gaussian_chain", format!("trunc = {trunc} must be positive")));
    }
    let xs = cosine_chain_grid(trunc, grid);
    let ws = cosine_chain_grid(trunc, grid);
    let weight = |x: f64| (-0.5 * x * x).exp();
    // cos(ω_a x_i) for every pair of nodes
    let cos_table: Vec<Vec<f64>> = ws.iter().map(|&(w, _)| xs.iter().map(|&(x, _)| (w * x).cos()).collect()).collect();

    match n {
        1 => {
            let e: Vec<f64> = xs.iter().map(|&(x, _)| energy(weight(x))).collect::<Result<_>>()?;
            let mut total = 0.0;
            for (a, &(_, va)) in ws.iter().enumerate() {
                let amp: f64 = xs.iter().enumerate().map(|(i, &(_, wi))| wi * cos_table[a][i] * e[i]).sum();
                total += va * amp;
            }
            Ok(total)
        }
        _ => {
            let m = xs.len();
            let mut e = vec![0.0; m * m];
            for i in 0..m {
                for j in 0..=i {
                    let v = energy(weight(xs[i].0) * weight(xs[j].0))?;
                    e[i * m + j] = v;
                    e[j * m + i] = v;
                }
            }
            let mut total = 0.0;
            for (a, &(_, va)) in ws.iter().enumerate() {
                // B_a(j) = Σ_i w_i cos(ω_a x_i) E(x_i, x_j)
                let partial: Vec<f64> = (0..m)
                    .map(|j| (0..m).map(|i| xs[i].1 * cos_table[a][i] * e[i * m + j]).sum())
                    .collect();
                for (b, &(_, vb)) in ws.iter().enumerate() {
                    let amp: f64 = (0..m).map(|j| xs[j].1 * cos_table[b][j] * partial[j]).sum();
                    total += va * vb * amp;
                }
            }
            Ok(total)
        }
    }
}

/// `(π/2)ⁿ` reproduced through level-`k` energies at `T`.
pub fn gaussian_chain(ladder: &Ladder<'_>, n: usize, t: f64, k: usize, trunc: f64) -> Result<f64> {
    gaussian_chain_with(ladder, n, t, k, trunc, ChainGrid::default())
}

pub fn gaussian_chain_with(ladder: &Ladder<'_>, n: usize, t: f64, k: usize, trunc: f64, grid: ChainGrid) -> Result<f64> {
    if k == 0 {
        return Err(LadderError::domain("gaussian_chain", "k must be at least 1"));
    }
    let lower = ladder.reverse_iter(t, k)?.top();
    let chart = PullbackChart::new(ladder, lower, k)?;
    let mut energies: HashMap<u64, f64> = HashMap::new();
    chain_with(n, trunc, grid, |g| {
        if let Some(&e) = energies.get(&g.to_bits()) {
            return Ok(e);
        }
        let tau = chart_upper(&chart, g)?;
        let e = chart_integral(ladder, &chart, 0.0, tau)?.value;
        energies.insert(g.to_bits(), e);
        Ok(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn inner_transform_at_zero_frequency() {
        let xs = cosine_chain_grid(8.0, ChainGrid::default());
        let v: f64 = xs.iter().map(|&(x, w)| w * (-0.5 * x * x).exp()).sum();
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn identity_energy_gives_powers_of_half_pi() {
        let one = chain_with(1, 8.0, ChainGrid::default(), Ok).unwrap();
        assert!((one - FRAC_PI_2).abs() < 1e-6, "{one}");
        let two = chain_with(2, 8.0, ChainGrid::default(), Ok).unwrap();
        assert!((two - FRAC_PI_2 * FRAC_PI_2).abs() < 1e-5, "{two}");
    }

    #[test]
    fn desk_cap() {
        assert!(matches!(
            chain_with(3, 8.0, ChainGrid::default(), Ok),
            Err(LadderError::Resource { .. })
        ));
    }
}
