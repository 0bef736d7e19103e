// SPDX-License-Identifier: Apache-2.0
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: &'static str, found: &'static str },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("degree {degree} exceeds max_coeff_degree {max}")]
    Truncation { degree: i64, max: i64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("degree {n} outside band [{lo}, {hi}]")]
    Band { n: i64, lo: i64, hi: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
