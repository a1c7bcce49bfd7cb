use thiserror::Error;

use crate::sl2::Sl2Error;
use crate::subgroup::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Sl2(#[from] Sl2Error),

    #[error("unknown subgroup family {0:?} (expected gamma or gamma1)")]
    UnknownFamily(String),

    #[error("level must be at least 1, got {0}")]
    BadLevel(i64),

    #[error("coset enumeration reached {found} cosets, expected {expected}")]
    IndexMismatch { found: usize, expected: usize },

    #[error("invalid permutation representation: {}", join_violations(.0))]
    InvalidRep(Vec<Violation>),

    #[error("malformed permutation document: {0}")]
    Document(String),

    #[error("group {label} contains -1; theorem-level operations require a subgroup without -1")]
    ContainsMinusOne { label: String },

    #[error("inconsistent permutation representation: {0}")]
    BrokenRep(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("negative value: {0}")]
    Negative(String),

    #[error("h^0 is not determined by the degree alone (genus {genus}, degree {degree})")]
    AmbiguousRange { genus: i64, degree: i64 },

    #[error("oracle refuses level {level}: above the configured bound {max}")]
    OracleBound { level: u32, max: u32 },

    #[error("the oracle requires a congruence subgroup, got {0}")]
    NotCongruence(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
