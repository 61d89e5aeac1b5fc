use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{d} does not divide {n}")]
    NotDivisor { d: u64, n: u64 },
    #[error("{k} is not a unit modulo {n}")]
    NotUnit { k: i64, n: u64 },
    #[error("divisor table mismatch: expected {expected} values, got {got}")]
    DivisorMismatch { expected: usize, got: usize },
    #[error("character modulus {chi} does not match n = {n}")]
    ModulusMismatch { chi: u64, n: u64 },
    #[error("character mod {n} is not primitive (conductor {conductor})")]
    NotPrimitive { n: u64, conductor: u64 },
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("cannot lift level {from} to level {to}")]
    BadLift { from: u64, to: u64 },
    #[error("closed form produced the non-integral value {0}")]
    NonIntegral(String),
    #[error("enumeration of {size} tuples exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
