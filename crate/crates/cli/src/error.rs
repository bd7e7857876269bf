use std::fmt;

use thiserror::Error;
use topos_core::ToposError;

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub const START: Position = Position { line: 1, column: 1 };
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnknownSymbol,
    Arity,
    Range,
    Duplicate,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownSymbol => "unknown symbol",
            ParseErrorKind::Arity => "arity mismatch",
            ParseErrorKind::Range => "range error",
            ParseErrorKind::Duplicate => "duplicate definition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(position: Position, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            position,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    /// The workspace parsed but does not describe a valid structure.
    #[error("invalid workspace: {0}")]
    Build(ToposError),
    /// A library invariant failed during evaluation.
    #[error("internal error: {0}")]
    Internal(#[from] ToposError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::Build(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
