use thiserror::Error;

use crate::model::DmAxis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |a - a^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("temperature must be positive and finite, got {0}")]
    InvalidTemperature(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Boltzmann exponent {exponent} is outside the budget of ±{budget}; temperature too low for these couplings")]
    Overflow { exponent: f64, budget: f64 },

    #[error("no closed-form density matrix for DM axis {0}")]
    UnsupportedAxis(DmAxis),

    #[error("unknown figure {0}, expected 1..=6")]
    UnknownFigure(u8),

    #[error("at grid point {value}: {source}")]
    AtGridPoint { value: f64, source: Box<Error> },

    #[error("at sample {index} ({point}): {source}")]
    AtSample {
        index: usize,
        point: String,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// The error with grid-point and sample context stripped.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtGridPoint { source, .. } | Error::AtSample { source, .. } => {
                source.root_cause()
            }
            other => other,
        }
    }

    /// True when this error, or the error it wraps, is a Boltzmann overflow.
    pub fn is_overflow(&self) -> bool {
        matches!(self.root_cause(), Error::Overflow { .. })
    }
}
