use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("step denominator vanished at z = {z}")]
    ZeroDenominator { z: f64 },
    #[error("baseline method needs A > 0, got A = {a} at z = {z}")]
    NonPositiveA { z: f64, a: f64 },
    #[error("non-finite sample of h near z = {z}")]
    NonFiniteSample { z: f64 },
    #[error("need at least {needed} usable iterates, have {have}")]
    InsufficientHistory { needed: usize, have: usize },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    #[error("guess {guess} left the sweep bounds [{lo}, {hi}]")]
    GuessOutOfBounds { guess: f64, lo: f64, hi: f64 },
    #[error("solve from guess {guess} failed: {cause}")]
    Solve { guess: f64, cause: Box<Error> },
    #[error("iteration stopped ({termination}) from guess {guess} at z = {z}")]
    SolveStopped { guess: f64, z: f64, termination: String },
    #[error("Taylor tail test not met at order {order} (step {step})")]
    TruncationNotMet { order: usize, step: f64 },
    #[error("continued fraction did not converge after {terms} terms")]
    NoConvergence { terms: usize },
    #[error("series cancellation too severe (condition {condition:e})")]
    CancellationLoss { condition: f64 },
    #[error("evaluation outside supported domain: {0}")]
    Domain(String),
    #[error("relative error undefined for a zero reference value")]
    ZeroReference,
    #[error("grid too coarse: cell [{lo}, {hi}] holds more than one sign change")]
    GridTooCoarse { lo: f64, hi: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("reference table line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
