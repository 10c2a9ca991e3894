use thiserror::Error;

/// Errors raised by the coupling library.
///
/// Variants fall in two groups: validation failures caused by the caller's
/// input, and internal invariant breaks that indicate a bug in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty probability vector")]
    Empty,
    #[error("entry {index} is negative ({value})")]
    NegativeMass { index: usize, value: f64 },
    #[error("entry {index} is not a finite number")]
    NotFinite { index: usize },
    #[error("total mass {total} deviates from 1 by more than {eps_sum}")]
    BadTotal { total: f64, eps_sum: f64 },
    #[error("tolerances must satisfy 0 < eps_zero < eps_sum < 1 (got eps_zero={eps_zero}, eps_sum={eps_sum})")]
    BadTolerances { eps_sum: f64, eps_zero: f64 },
    #[error("cannot pad a vector of length {len} down to {requested}")]
    ShrinkRequested { len: usize, requested: usize },
    #[error("invalid partition: {reason}")]
    BadPartition { reason: &'static str },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("split preconditions violated: {reason}")]
    InfeasibleSplit { reason: &'static str },
    #[error("internal invariant broken: {reason}")]
    InternalInvariant { reason: &'static str },
    #[error("at least two marginals are required (got {got})")]
    TooFewMarginals { got: usize },
    #[error("axis {axis} out of range for a {k}-way joint")]
    AxisOutOfRange { axis: usize, k: usize },
    #[error("instance {rows}x{cols} exceeds the exact-solver cap n + m <= {cap}")]
    InstanceTooLarge {
        rows: usize,
        cols: usize,
        cap: usize,
    },
    #[error("dense tensor would need {cells} cells, above the cap of {cap}")]
    DenseTooLarge { cells: u128, cap: usize },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::NegativeMass { .. } => "NegativeMass",
            Error::NotFinite { .. } => "NotFinite",
            Error::BadTotal { .. } => "BadTotal",
            Error::BadTolerances { .. } => "BadTolerances",
            Error::ShrinkRequested { .. } => "ShrinkRequested",
            Error::BadPartition { .. } => "BadPartition",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InfeasibleSplit { .. } => "InfeasibleSplit",
            Error::InternalInvariant { .. } => "InternalInvariant",
            Error::TooFewMarginals { .. } => "TooFewMarginals",
            Error::AxisOutOfRange { .. } => "AxisOutOfRange",
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::DenseTooLarge { .. } => "DenseTooLarge",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
