use std::time::Duration;

use thiserror::Error;

use crate::symbols::Arity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("`{0}` is reserved and cannot name a predicate")]
    Reserved(String),
    #[error("`{name}` is a {declared} but is used as a {used}")]
    ArityMismatch { name: String, declared: Arity, used: Arity },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable z{0} is not bound by the substitution")]
    UnboundVariable(u32),
    #[error("not a context term shape: {0}")]
    IllegalShape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into(), expected: Vec::new() }
    }

    pub fn expected(line: usize, column: usize, found: &str, expected: &[&str]) -> Self {
        Self {
            line,
            column,
            message: format!("found {found}, expected one of: {}", expected.join(", ")),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResourceKind {
    Clauses(usize),
    WallClock(Duration),
}

impl std::fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResourceKind::Clauses(n) => write!(f, "clause limit of {n}"),
            ResourceKind::WallClock(d) => write!(f, "time limit of {}s", d.as_secs_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("saturation aborted: {0} reached")]
    ResourceLimit(ResourceKind),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Input(String),
}
