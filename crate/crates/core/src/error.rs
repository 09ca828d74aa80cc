use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision underflow: no coefficient of the result is known")]
    PrecisionUnderflow,
    #[error("precision too low: need at least q^{needed}, have q^{have}")]
    PrecisionTooLow { needed: i64, have: i64 },
    #[error("not a member of the modular form space: first failing exponent q^{exponent}")]
    NotMember { exponent: String },
    #[error("no data for weight {0} in the group table")]
    MissingWeight(i64),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("determinant power is irrational: det {det} to the power {k}/2")]
    IrrationalPower { det: i64, k: i64 },
    #[error("root of unity outside Q needed for translation by {0}")]
    Cyclotomic(String),
    #[error("series has non-integral exponents")]
    NonIntegralExponents,
    #[error("coefficient is not a pure q-series (b-degree {0})")]
    NonConstantCoefficient(u32),
    #[error("coefficient carries Π-degree {0}, expected 0")]
    NonRationalCoefficient(i32),
    #[error("coefficient is not a constant: {0}")]
    NonConstantSeries(String),
    #[error("state is not a combination of liftings: {0}")]
    NotInvariant(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("self-test failed: {0}")]
    SelfTest(String),
    #[error("weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: i64, got: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
