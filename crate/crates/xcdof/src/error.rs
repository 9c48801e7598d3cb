//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XcError {
    #[error("invalid antenna configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("causality violation: channel at slot {requested} requested while building slot {current}")]
    CausalityViolation { requested: usize, current: usize },
    #[error("buffer deficit in phase {phase} round {round}: need {needed} equations, found {found}")]
    BufferDeficit {
        phase: usize,
        round: usize,
        needed: usize,
        found: usize,
    },
    #[error("phase-3 capacity violation: {0}")]
    CapacityViolation(String),
    #[error("channel resampling exhausted at slot {slot} ({role})")]
    ResampleExhausted { slot: usize, role: String },
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("output failed: {0}")]
    Output(String),
    #[error("unknown corner {0}")]
    UnknownCorner(String),
}

pub type Result<T> = std::result::Result<T, XcError>;
