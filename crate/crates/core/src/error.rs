use thiserror::Error;

use crate::indicators::IndicatorResult;

/// Errors raised by state construction, information measures and the
/// indicator optimizers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("state is not normalized (trace or norm deviates from 1 by {0:.3e})")]
    NotNormalized(f64),

    #[error("state is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("spectrum is degenerate (smallest gap {0:.3e})")]
    DegenerateSpectrum(f64),

    #[error("operation requires a qubit first subsystem, got dimension {0}")]
    RequiresQubitSubsystem(usize),

    #[error("no optimizer restart converged (best value {:.6e})", .0.value)]
    OptimizerDidNotConverge(Box<IndicatorResult>),

    #[error("state file: {0}")]
    StateFile(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotHermitian(_) => "NotHermitian",
            Error::NotNormalized(_) => "NotNormalized",
            Error::NotPositive(_) => "NotPositive",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidDims(_) => "InvalidDims",
            Error::InvalidParams(_) => "InvalidParams",
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::DegenerateSpectrum(_) => "DegenerateSpectrum",
            Error::RequiresQubitSubsystem(_) => "RequiresQubitSubsystem",
            Error::OptimizerDidNotConverge(_) => "OptimizerDidNotConverge",
            Error::StateFile(_) => "StateFile",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
