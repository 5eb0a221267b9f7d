use std::path::PathBuf;

use thiserror::Error;

/// Failure to decode a scheme from its text or JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeParseError {
    #[error("invalid character {found:?} at {field} char {position}; expected one of 1, n, 0")]
    InvalidChar { field: &'static str, position: usize, found: char },
    #[error("{field} table needs {expected} characters, found {found}")]
    WrongLength { field: &'static str, expected: usize, found: usize },
    #[error("malformed scheme at offset {offset}: expected {expected:?}")]
    Malformed { offset: usize, expected: &'static str },
    #[error("invalid scheme object: {0}")]
    Json(String),
    #[error("unknown scheme name {0:?}")]
    UnknownName(String),
}

/// Positioned syntax error from the formula and sequent parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        SyntaxError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("valuation has no value for atom {0:?}")]
    UnboundAtom(String),
    #[error("too many atoms: {found} exceeds the limit of {limit}")]
    TooManyAtoms { found: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error("table {0} has a non-Boolean output on Boolean inputs")]
    NotBooleanCornered(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bounds must be positive (atoms >= 1, side >= 1)")]
    InvalidBounds,
    #[error("fragment too large: {0}")]
    FragmentTooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GentzenError {
    #[error("connective has arity {connective} but the schema has arity {schema}")]
    ArityMismatch { connective: usize, schema: usize },
    #[error("regularity search supports arity 1 and 2, got {0}")]
    UnsupportedArity(usize),
    #[error("rule index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("schema syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {message}")]
    Entry { line: usize, message: String },
    #[error("cannot read catalog {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// Crate-level error used by the CLI and the export paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scheme(#[from] SchemeParseError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Gentzen(#[from] GentzenError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}
