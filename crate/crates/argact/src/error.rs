//! Error types of the front end.

use thiserror::Error;

/// A syntax error with its position in the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    /// What the parser would have accepted.
    pub expected: String,
    /// The offending lexeme.
    pub found: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, expected: &str, found: &str) -> Self {
        ParseError { line, column, expected: expected.to_owned(), found: found.to_owned() }
    }
}

/// Errors of the front end.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] argact_core::Error),
    /// Γ is R-inconsistent.
    #[error("the theory of the domain is inconsistent")]
    Inconsistent,
    /// A command-line argument that does not fit the domain.
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
