use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite argument {0}")]
    NonFinite(String),
    #[error("mass must lie strictly between 0 and 1, got {0}")]
    InvalidMass(f64),
    #[error("total momentum {p} lies within {guard:e} of a multiple of pi/2; use the stationary handling")]
    SpecialMomentum { p: f64, guard: f64 },
    #[error("ring size {0} must be odd and between 5 and 1025")]
    RingSize(usize),
    #[error("window {lo}..={hi} is not symmetric about y = 0")]
    AsymmetricWindow { lo: i64, hi: i64 },
    #[error("transmission coefficient has a pole (|denominator| = {0:e})")]
    Pole(f64),
    #[error("window half-width {half_width} leaves tail weight {tail:e}")]
    WindowTooSmall { half_width: usize, tail: f64 },
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("amplitudes fall below the usable range after {0} sites")]
    DynamicRange(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
