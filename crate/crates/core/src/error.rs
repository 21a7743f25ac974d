use thiserror::Error;

use crate::circuit::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid circuit: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("det(A) and det(B) differ by {0:.3e}")]
    DeterminantMismatch(f64),

    #[error("matrix is not special orthogonal: {0}")]
    NotSpecialOrthogonal(String),

    #[error("{what} = {value} exceeds the limit {limit}")]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("circuit is not standardized: {0}")]
    NotStandardized(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
