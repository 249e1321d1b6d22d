use serde::{Deserialize, Serialize};

use crate::error::{LadderError, Result};
use crate::quadrature::IntegrationPolicy;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// Constants, tolerances and iteration caps shared by every ladder computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderConfig {
    /// Euler's constant.
    pub c: f64,
    pub ln2pi: f64,
    /// Additive constant of the almost-exact mean-square formula.
    pub c0: f64,
    /// Relative residual accepted by the Newton solvers.
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    /// Relative tolerance for energy quadratures.
    pub quad_tol: f64,
    /// Smallest argument accepted by `phi1`.
    pub min_t: f64,
    /// Largest tower depth for energy matrices.
    pub k_max: usize,
    /// How `Z²` and `I(T)` are evaluated.
    pub integration: IntegrationPolicy,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            c: EULER_GAMMA,
            ln2pi: LN_2PI,
            c0: 0.0,
            newton_tol: 1e-14,
            max_newton_iters: 60,
            quad_tol: 1e-10,
            min_t: 50.0,
            k_max: 8,
            integration: IntegrationPolicy::default(),
        }
    }
}

impl LadderConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.newton_tol > 0.0) || !(self.quad_tol > 0.0) {
            return Err(LadderError::domain(
                "ladder config",
                "newton_tol and quad_tol must be positive",
            ));
        }
        if self.max_newton_iters == 0 {
            return Err(LadderError::domain(
                "ladder config",
                "max_newton_iters must be at least 1",
            ));
        }
        // F' > 0 on the whole bracket [min_t / 2, ∞)
        if self.min_t / 2.0 <= (self.ln2pi - 1.0 - self.c).exp() {
            return Err(LadderError::domain(
                "ladder config",
                "min_t too small for a monotone F",
            ));
        }
        self.integration.zeta.validate()
    }
}
