use thiserror::Error;

/// Exit status for a successful run or a valid divisor.
pub const EXIT_OK: u8 = 0;
/// Exit status for an invalid divisor or a failed verification.
pub const EXIT_INVALID: u8 = 1;
/// Exit status for unreadable or malformed input.
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed divisor file at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("divisor file: {0}")]
    Schema(String),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Library(#[from] theta_blaschke::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Library(_) => EXIT_INVALID,
            _ => EXIT_INPUT,
        }
    }
}
