use num_bigint::BigInt;
use thiserror::Error;

use crate::gap::GapClass;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid gap spec: {0}")]
    InvalidSpec(String),

    #[error("malformed JSON: {0}")]
    Json(serde_json::Error),

    #[error("operation requires a {required} gap function, spec is declared {declared}")]
    ClassRequired { required: &'static str, declared: GapClass },

    #[error("declared class {declared} violated at index {index}: {detail}")]
    ClassViolation {
        declared: GapClass,
        index: u64,
        detail: String,
    },

    #[error("M_n undefined below first gap: n = {n}, g(1) = {first_gap}")]
    MUndefined { n: u64, first_gap: BigInt },

    #[error("prefix of {requested} bits exceeds the resource guard of {cap} bits")]
    ResourceGuard { requested: BigInt, cap: u64 },

    #[error("factor length {n} does not fit in a prefix of length {len}")]
    FactorTooLong { n: u64, len: u64 },

    #[error("horizon too short for n = {n}: {detail}")]
    HorizonTooShort { n: u64, detail: String },

    #[error("value {0} does not fit in 64 bits")]
    Overflow(BigInt),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("sequences share element {0}")]
    CommonElement(u64),

    #[error("no gap increasing word has complexity {a}n + {b} ultimately: a must be at least 2")]
    AffineUnrealizable { a: i64, b: i64 },

    #[error("no blockwise injective word has complexity {a}n + {b} ultimately")]
    BlockwiseAffineUnrealizable { a: i64, b: i64 },

    #[error("constructed word failed verification: {0}")]
    VerificationFailed(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
