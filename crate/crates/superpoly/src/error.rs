use thiserror::Error;

use crate::laurent::Exp;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("parse error on line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("not expressible in a, t, y: stuck at exponent {0:?}")]
    NotYExpressible(Exp),
    #[error("odd exponent {0:?} where only even exponents are allowed")]
    OddExponent(Exp),
    #[error("negative coefficient in {0}")]
    NegativeCoefficient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("d_{n} entry {src} -> {dst} has the wrong degree")]
    GradingMismatch { n: i64, src: usize, dst: usize },
    #[error("d_1 homology has dimension {0}, expected 1")]
    NotCanceling(usize),
    #[error("d_1 survivor at {0:?} is not of the form a^S q^-S t^0")]
    SurvivorOffLine(Exp),
    #[error("no survivor monomial of the expected shape")]
    NoSurvivor,
    #[error("quotient has a negative coefficient")]
    NegativeQuotient,
    #[error("not alternating")]
    NotAlternating,
    #[error("squares quotient is not exact and nonnegative")]
    NotDecomposable,
    #[error("maximal q-exponent {0} is odd")]
    OddMaxQ(i64),
    #[error("complex construction failed: {0}")]
    ConstructionFailed(String),
    #[error("generic and closed-form routes disagree at q-degree {0}")]
    GenericityMismatch(i64),
    #[error("{0}")]
    Dataset(String),
    #[error("i/o: {0}")]
    Io(String),
}
