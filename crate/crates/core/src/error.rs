use std::fmt;

use thiserror::Error;

/// Why a matrix failed the rotational gate `det A > 0`, `(tr A)^2 < 4 det A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateFailure {
    /// `Δ > 0` does not hold.
    NonPositiveDeterminant { delta: i64 },
    /// `τ² < 4Δ` does not hold (real spectrum).
    RealSpectrum { tau: i64, delta: i64 },
    /// The matrix is rotational but `Δ = 1`, so `(Aᵀ)⁻ʲ` does not contract.
    NotExpansive { delta: i64 },
}

impl fmt::Display for GateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GateFailure::NonPositiveDeterminant { delta } => {
                write!(f, "det A > 0 failed: det A = {delta}")
            }
            GateFailure::RealSpectrum { tau, delta } => {
                let t2 = (tau as i128) * (tau as i128);
                let d4 = 4 * (delta as i128);
                write!(
                    f,
                    "(tr A)^2 < 4 det A failed: (tr A)^2 = {t2}, 4 det A = {d4}"
                )
            }
            GateFailure::NotExpansive { delta } => {
                write!(f, "det A >= 2 failed: det A = {delta}, no contraction")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not rotational: {0}")]
    Gate(GateFailure),

    #[error("matrix is not symmetric positive definite: {0}")]
    NotSpd(String),

    #[error("internal consistency check failed: {what} residual {residual:e} exceeds {limit:e}")]
    Inconsistent {
        what: &'static str,
        residual: f64,
        limit: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Mask(#[from] MaskError),
}

impl From<GateFailure> for Error {
    fn from(g: GateFailure) -> Self {
        Error::Gate(g)
    }
}

/// Problem with a mask document, located by a JSON path such as `coeffs[2].k`.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("mask error at {path}: {message}")]
pub struct MaskError {
    pub path: String,
    pub message: String,
}

impl MaskError {
    pub(crate) fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
