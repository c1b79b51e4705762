// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is reducible over the coefficient field")]
    ReducibleModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no primitive element found (internal error)")]
    NoPrimitiveElement,
    #[error("field of order {order} exceeds the supported limit {limit}")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("requested subfield does not exist (extension degree {m} is odd)")]
    InvalidSubfield { m: u32 },
    #[error("element is not in the requested subfield")]
    NotInSubfield,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires even characteristic")]
    OddCharacteristic,
    #[error("value {value} out of range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },
    #[error("index i={i} outside the range (m-2)/2 <= i <= m - floor(m/3) - 1 for q={q}, m={m}")]
    IndexOutOfTheoremRange { q: u64, m: u32, i: u32 },
    #[error("designed distance {delta_i} is below 2; the code is degenerate")]
    DegenerateCode { delta_i: i64 },
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("expected {expected} coefficients, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("rank-zero form has no closed form here")]
    RankZero,
    #[error("family kind {kind} does not match q={q}, m={m}")]
    ParityMismatch { kind: String, q: u64, m: u32 },
    #[error("{what} needs {needed} units of work, budget is {limit}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("closed form produced a non-integral value: {0}")]
    NonIntegralResult(String),
    #[error("closed form produced a negative value: {0}")]
    NegativeEntry(String),
    #[error("no witness found: {0}")]
    WitnessNotFound(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NoPrimitiveElement => "NoPrimitiveElement",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::InvalidSubfield { .. } => "InvalidSubfield",
            Error::NotInSubfield => "NotInSubfield",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::OddCharacteristic => "OddCharacteristic",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::IndexOutOfTheoremRange { .. } => "IndexOutOfTheoremRange",
            Error::DegenerateCode { .. } => "DegenerateCode",
            Error::UnsupportedParameters(_) => "UnsupportedParameters",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::RankZero => "RankZero",
            Error::ParityMismatch { .. } => "ParityMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NonIntegralResult(_) => "NonIntegralResult",
            Error::NegativeEntry(_) => "NegativeEntry",
            Error::WitnessNotFound(_) => "WitnessNotFound",
            Error::Overflow(_) => "Overflow",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
