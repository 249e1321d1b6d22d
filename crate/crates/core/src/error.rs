use thiserror::Error;

use crate::quadrature::QuadratureResult;

pub type Result<T, E = LadderError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum LadderError {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("quadrature tolerance not met on [{a}, {b}]: best estimate {} with error bound {}", best.value, best.error_estimate)]
    ToleranceNotMet {
        a: f64,
        b: f64,
        best: QuadratureResult<f64>,
    },

    #[error("no bracket for {op}: target {target} outside [{lo_value}, {hi_value}]")]
    NoBracket {
        op: &'static str,
        target: f64,
        lo_value: f64,
        hi_value: f64,
    },

    #[error("{op} did not converge after {iterations} iterations (residual {residual})")]
    NonConvergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("level {level} of {op} failed: {source}")]
    Level {
        op: &'static str,
        level: usize,
        #[source]
        source: Box<LadderError>,
    },

    #[error("t = {t} lies beyond the checkpoint table (t_max = {t_max})")]
    BeyondTable { t: f64, t_max: f64 },

    #[error("resource cap exceeded in {op}: {detail}")]
    Resource { op: &'static str, detail: String },

    #[error("checkpoint file: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::sync::Arc<std::io::Error>),
}

impl LadderError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        LadderError::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn at_level(self, op: &'static str, level: usize) -> Self {
        LadderError::Level {
            op,
            level,
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for LadderError {
    fn from(e: std::io::Error) -> Self {
        LadderError::Io(std::sync::Arc::new(e))
    }
}

impl From<csv::Error> for LadderError {
    fn from(e: csv::Error) -> Self {
        LadderError::Checkpoint(e.to_string())
    }
}
