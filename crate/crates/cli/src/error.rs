use std::fmt;

use dmxyz_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_OVERFLOW: u8 = 3;
pub const EXIT_NOT_CONVERGED: u8 = 4;
pub const EXIT_REGRESSION: u8 = 5;

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing flag, named in the message.
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn usage(flag: &str, reason: impl fmt::Display) -> Self {
        CliError::Usage(format!("invalid value for {flag}: {reason}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_FAILURE,
            CliError::Core(e) => match e.root_cause() {
                Error::Overflow { .. } => EXIT_OVERFLOW,
                Error::NoConvergence { .. } => EXIT_NOT_CONVERGED,
                Error::InvalidParameter { .. }
                | Error::InvalidTemperature(_)
                | Error::UnknownFigure(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(Error::InvalidParameter { name, reason }) => {
                write!(f, "invalid value for --{name}: {reason}")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
