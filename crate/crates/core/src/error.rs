use thiserror::Error;

use crate::surface::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),

    #[error("series constant term is not invertible")]
    NotAUnit,

    #[error("truncation too small: max_weight {max_weight} < requested weight {requested}")]
    TruncationTooSmall { max_weight: u32, requested: u32 },

    #[error("coefficient is not an integer: {0}")]
    NotIntegral(String),

    #[error("{what} exceeds the configured bound ({value} > {limit})")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("`{0}` is not of finite order")]
    NotFiniteOrder(String),

    #[error("automorphism has infinite order; {0} requires a finite-order spectrum")]
    InfiniteOrder(&'static str),

    #[error("closed form {closed} disagrees with series coefficient {series} (row {row:?}, n = {n})")]
    HodgeMismatch {
        closed: u64,
        series: String,
        row: [u64; 3],
        n: u32,
    },

    #[error("fixed-point datum: {0}")]
    OrderMismatch(String),

    #[error("invalid partition {0:?}: parts must be positive and non-increasing")]
    InvalidPartition(Vec<u32>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("specification violates {} invariant(s): {}", .0.len(), .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),

    #[error("parse error at `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
