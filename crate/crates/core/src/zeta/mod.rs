//! Hardy's function on the critical line.
//!
//! `Z(t) = e^{iϑ(t)} ζ(1/2 + it)` is real, and `Z(t)² = |ζ(1/2 + it)|²`.
//! Heights at or above [`ZetaConfig::small_t_threshold`] go through the
//! Riemann–Siegel formula; lower heights use Euler–Maclaurin summation.

mod euler_maclaurin;
mod gamma;
mod riemann_siegel;
mod theta;

use serde::{Deserialize, Serialize};

use crate::error::{LadderError, Result};
use crate::scalar::Scalar;

pub use euler_maclaurin::zeta_critical;
pub use gamma::{digamma, ln_gamma};
pub use riemann_siegel::{correction_coefficient, riemann_siegel_z, MAX_RS_ORDER};
pub use theta::{theta, PhaseValue, THETA_ASYMPTOTIC_FROM};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaConfig {
    /// Smallest height accepted by [`hardy_z`].
    pub t_min: f64,
    /// Number of Riemann–Siegel correction terms `C_0 … C_{order-1}`; 0 keeps the bare main sum.
    pub rs_order: usize,
    /// Heights below this use Euler–Maclaurin summation.
    pub small_t_threshold: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            t_min: 10.0,
            rs_order: MAX_RS_ORDER + 1,
            small_t_threshold: 50.0,
        }
    }
}

impl ZetaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rs_order > MAX_RS_ORDER + 1 {
            return Err(LadderError::domain(
                "zeta config",
                format!("rs_order {} exceeds {}", self.rs_order, MAX_RS_ORDER + 1),
            ));
        }
        if !(self.t_min >= 0.0) || !(self.small_t_threshold >= 0.0) {
            return Err(LadderError::domain("zeta config", "thresholds must be nonnegative"));
        }
        Ok(())
    }
}

/// Value of Hardy's function and its square at `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZValue<T> {
    pub t: T,
    pub z: T,
    pub zsq: T,
}

/// Hardy's function `Z(t)` for `t ≥ cfg.t_min`.
pub fn hardy_z<T: Scalar>(t: T, cfg: &ZetaConfig) -> Result<ZValue<T>> {
    if !(t.as_f64() >= cfg.t_min) || !t.is_finite() {
        return Err(LadderError::domain(
            "hardy_z",
            format!("t = {t} below t_min = {}", cfg.t_min),
        ));
    }
    Ok(hardy_z_unchecked(t, cfg))
}

/// Hardy's function for any `t ≥ 0`; used by the integrators, which start at 0.
pub fn hardy_z_unchecked<T: Scalar>(t: T, cfg: &ZetaConfig) -> ZValue<T> {
    let z = if t.as_f64() < cfg.small_t_threshold || t < T::lit(2.0 * std::f64::consts::PI) {
        let phase = theta::theta_unchecked(t);
        let zeta = zeta_critical(t);
        let (sin, cos) = phase.theta.sin_cos();
        cos * zeta.re - sin * zeta.im
    } else {
        let phase = theta::theta_unchecked(t);
        let order = cfg.rs_order.checked_sub(1);
        riemann_siegel_z(t, phase.theta, order)
    };
    ZValue { t, z, zsq: z * z }
}

/// `Z(t)²` for `t ≥ 0`.
#[inline]
pub fn zsq<T: Scalar>(t: T, cfg: &ZetaConfig) -> T {
    hardy_z_unchecked(t, cfg).zsq
}

/// Expected density of zeros of `Z` near `t`, `ln(t/2π) / 2π` per unit height.
#[inline]
pub fn zero_density<T: Scalar>(t: T) -> T {
    let ratio = (t / T::TAU()).max(T::lit(std::f64::consts::E));
    ratio.ln() / T::TAU()
}
