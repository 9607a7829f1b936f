//! Zeros of special functions and orthogonal polynomials by a third-order iteration on
//! a Riccati ratio.
//!
//! The numerical core ([`riccati`], [`sweep`]) is generic over the scalar type; the
//! family adapters and evaluators work in `f64`, with double-double arithmetic where
//! series cancel. The aliases at the crate root fix the scalar to `f64`.

pub mod dd;
pub mod error;
pub mod families;
pub mod oracle;
pub mod riccati;
pub mod scalar;
pub mod specfun;
pub mod sweep;

pub use error::{Error, Result};

pub use riccati::{
    estimate_order, newton_step, riccati_residual, solve_zero, third_order_step, CoupledSystem, Method,
    RiccatiSpace, Termination,
};
pub use scalar::{Scalar, Widen};

pub use families::{CaseId, Family, FamilyCase, FamilyParams};
pub use oracle::{AuditRecord, OracleConfig, ReferenceZeroSet};
pub use sweep::{classify_regime, sweep_interval, Direction, GuessRule, OmegaTrend, RegimeKind};

/// Double-double scalar, re-exported for higher-precision runs.
pub use dd::DoubleDouble;

pub type Problem = riccati::RiccatiProblem<f64>;
pub type Options = riccati::IterationOptions<f64>;
pub type Zero = riccati::ZeroResult<f64>;
pub type Sample = riccati::Sample<f64>;



pub type Certificate = sweep::RegimeCertificate<f64>;
pub type Plan = sweep::SweepPlan<f64>;
pub type Report = sweep::SweepReport<f64>;
