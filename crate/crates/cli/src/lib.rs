//! Front end for the `logderiv` engine: expression parsing, problem files,
//! structured reports and the subcommands behind the `logderiv` binary.

pub mod commands;
pub mod parse;
pub mod problem;
pub mod report;

use thiserror::Error;

pub use parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {err}")]
    Parse { field: String, err: ParseError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] logderiv::Error),
}

impl CliError {
    pub fn parse(field: impl Into<String>, err: ParseError) -> Self {
        CliError::Parse { field: field.into(), err }
    }

    /// 2 for a violated hypothesis, a singular expansion point or a
    /// non-squarefree polynomial; 4 for unreadable input; 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use logderiv::Error as E;
        match self {
            CliError::Json(_) | CliError::Parse { .. } | CliError::Invalid(_) => 4,
            CliError::Engine(E::Hypothesis(_) | E::SingularPoint { .. } | E::NotSquarefree | E::Inseparable(_)) => 2,
            CliError::Engine(E::BadModulus | E::NotPrime(_) | E::ModulusTooLarge(_)) => 4,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
