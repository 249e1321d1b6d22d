pub mod cli;
pub mod energies;
pub mod error;
pub mod ladder;
pub mod primes;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod zeta;

pub use error::{LadderError, Result};
pub use ladder::{Ladder, LadderConfig};
pub use quadrature::{CheckpointTable, QuadratureResult};
pub use scalar::Scalar;

/// Working precision of the ladder, energy and CLI layers.
pub type Real = f64;
pub type ZValue64 = zeta::ZValue<Real>;
pub type PhaseValue64 = zeta::PhaseValue<Real>;
pub type Quadrature64 = QuadratureResult<Real>;
pub type Root64 = roots::Root<Real>;
