use thiserror::Error;

use crate::params::Params;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameter mismatch: {left} vs {right}")]
    ParamsMismatch { left: Params, right: Params },

    #[error("{what} out of range: {value} not in [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,

    #[error("subspace is not a torus")]
    NotATorus,

    #[error("subspace is not graded: homogeneous parts span {graded} of {dim} dimensions")]
    NotGraded { graded: usize, dim: usize },

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("automorphism is not unipotent: linear part differs from the identity")]
    NotUnipotent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, WittError>;

pub(crate) fn check_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(WittError::OutOfRange {
            what,
            value: value as i64,
            lo: lo as i64,
            hi: hi as i64,
        });
    }
    Ok(())
}
