// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A model specification violates one or more invariants. Every violation
    /// found is listed, not just the first.
    InvalidSpec(Vec<String>),
    /// Malformed or inconsistent input to an operation.
    InvalidInput(String),
    /// A numerical routine could not proceed (singular system, non-finite data).
    Numerical(String),
    /// Candidate set too large for exhaustive subset search; use the backward
    /// elimination screener instead.
    TooManyCandidates { count: usize, cap: usize },
    /// I/O or (de)serialization failure.
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Error::Io(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(violations) => {
                write!(f, "invalid model specification: {}", violations.join("; "))
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::TooManyCandidates { count, cap } => write!(
                f,
                "{count} candidates exceed the exhaustive search cap of {cap}; use backward elimination"
            ),
            Error::Io(msg) => write!(f, "io: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
