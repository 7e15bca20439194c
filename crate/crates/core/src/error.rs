use thiserror::Error;

/// Errors produced by the simulator and the link quality model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("GFDM modulation matrix is singular (condition number {0:.3e})")]
    SingularModulation(f64),
    #[error("channel response vanishes at frequency sample {0}")]
    SingularChannel(usize),
    #[error("no turbo interleaver for block length {0}")]
    UnsupportedBlockLength(usize),
    #[error("noise variance must be positive, got {0}")]
    NonPositiveVariance(f64),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("BLER waterfall not found within [{lo} dB, {hi} dB]")]
    WaterfallNotFound { lo: f64, hi: f64 },
    #[error("reference curve never enters the BLER band [{lo}, {hi}]")]
    OutsideBand { lo: f64, hi: f64 },
    #[error("missing lookup table for {0}")]
    MissingLut(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
