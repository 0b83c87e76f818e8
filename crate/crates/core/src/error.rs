use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {order} exceeds the bound {bound}")]
    FieldTooLarge { order: u64, bound: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent vector sums to {got}, expected {expected}")]
    SumMismatch { expected: u64, got: u64 },
    #[error("enumerator is not homogeneous")]
    NotHomogeneous,
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("{divisor} does not divide {value}")]
    Divisibility { divisor: u64, value: u64 },
    #[error("infeasible: {what} needs {needed}, limit is {limit}")]
    Infeasible {
        what: &'static str,
        needed: String,
        limit: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn infeasible(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Infeasible {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible { .. } | Error::FieldTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
