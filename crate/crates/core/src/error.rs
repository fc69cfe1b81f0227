use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("site {site} out of range 1..={sites}")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "matrix is not Hermitian: max|A - A^H| = {deviation:e} exceeds tolerance {tolerance:e}"
    )]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("ambiguous eigenvalue cluster at {value}: candidates {first} and {second} both within {tol:e}")]
    AmbiguousSnap {
        value: f64,
        first: String,
        second: String,
        tol: f64,
    },

    #[error("not a rational matrix: entry ({row}, {col}) = {re} + {im}i")]
    NotRational {
        row: usize,
        col: usize,
        re: f64,
        im: f64,
    },

    #[error("constant convention `{convention}` is undefined for twice_spin = {twice_spin}")]
    Convention {
        convention: &'static str,
        twice_spin: u32,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular Gram matrix: rank {rank} of {size}")]
    SingularGram { rank: usize, size: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
