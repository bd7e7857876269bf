//! Workspace language and command implementations for the `topos` tool.

pub mod commands;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod workspace;

pub use error::{CliError, ParseError, ParseErrorKind, Position};
pub use parser::{parse_formula, parse_topos, parse_workspace, parse_workspace_with};
pub use workspace::{IndexSpec, SortSpec, StageValue, Statement, ToposSpec, Workspace};
