use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid antenna count {count}: {reason}")]
    InvalidCount { count: usize, reason: String },

    #[error("spacing violation: {0}")]
    SpacingViolation(String),

    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// The closed-form result does not apply to the requested parameters.
    #[error("outside closed-form regime: {0}")]
    Regime(String),

    #[error("quadrature did not converge: last two estimates {previous} and {last}")]
    Convergence { previous: f64, last: f64 },

    #[error("every sweep combination was skipped")]
    EmptySweep,

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::InvalidCount { .. }
            | Error::Usage(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::EmptySweep => 2,
            Error::SpacingViolation(_) | Error::ConstraintViolation(_) | Error::Regime(_) => 3,
            Error::Convergence { .. } => 4,
        }
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
