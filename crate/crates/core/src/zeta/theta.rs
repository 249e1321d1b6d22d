use num_complex::Complex;

use super::gamma::{digamma, ln_gamma};
use crate::error::{LadderError, Result};
use crate::scalar::Scalar;

/// Below this height the phase is taken from the complex log-gamma directly.
pub const THETA_ASYMPTOTIC_FROM: f64 = 30.0;

/// Riemann–Siegel phase at height `t` together with its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseValue<T> {
    pub t: T,
    pub theta: T,
    pub theta_deriv: T,
}

/// Riemann–Siegel phase `ϑ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π` and `ϑ'(t)`.
pub fn theta<T: Scalar>(t: T) -> Result<PhaseValue<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(LadderError::domain("theta", format!("t = {t} must be positive")));
    }
    Ok(theta_unchecked(t))
}

/// As [`theta`], but also accepts `t = 0` (where `ϑ = 0`).
pub(crate) fn theta_unchecked<T: Scalar>(t: T) -> PhaseValue<T> {
    if t >= T::lit(THETA_ASYMPTOTIC_FROM) {
        theta_asymptotic(t)
    } else {
        theta_direct(t)
    }
}

fn theta_asymptotic<T: Scalar>(t: T) -> PhaseValue<T> {
    let half = T::lit(0.5);
    let log_term = (t / T::TAU()).ln();
    let inv = t.recip();
    let inv2 = inv * inv;
    // 1/(48t) + 7/(5760t^3) + 31/(80640t^5) + 127/(430080t^7) + 511/(1216512t^9)
    let series = inv
        * (T::lit(1.0 / 48.0)
            + inv2
                * (T::lit(7.0 / 5760.0)
                    + inv2
                        * (T::lit(31.0 / 80640.0)
                            + inv2 * (T::lit(127.0 / 430080.0) + inv2 * T::lit(511.0 / 1216512.0)))));
    let theta = half * t * log_term - half * t - T::FRAC_PI_8() + series;
    let dseries = inv2
        * (T::lit(1.0 / 48.0)
            + inv2
                * (T::lit(7.0 / 1920.0)
                    + inv2
                        * (T::lit(31.0 / 16128.0)
                            + inv2 * (T::lit(127.0 / 61440.0) + inv2 * T::lit(511.0 / 135168.0)))));
    PhaseValue {
        t,
        theta,
        theta_deriv: half * log_term - dseries,
    }
}

fn theta_direct<T: Scalar>(t: T) -> PhaseValue<T> {
    let half = T::lit(0.5);
    let z = Complex::new(T::lit(0.25), half * t);
    let ln_pi = T::PI().ln();
    PhaseValue {
        t,
        theta: ln_gamma(z).im - half * t * ln_pi,
        theta_deriv: half * digamma(z).re - half * ln_pi,
    }
}
