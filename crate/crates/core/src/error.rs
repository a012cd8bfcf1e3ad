use thiserror::Error;

/// Errors raised by the arithmetic, operator and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero gcd")]
    ZeroGcd,
    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a prime ideal: {0}")]
    NotPrime(String),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("non-primitive row")]
    NonPrimitiveRow,
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not integral")]
    NotIntegral,
    #[error("{d} is not an exact divisor of {n}")]
    NotExactDivisor { d: String, n: String },
    #[error("divisibility hypothesis violated: {0}")]
    Divisibility(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("weight/type mismatch: {0}")]
    WeightMismatch(String),
    #[error("insufficient model: {0}")]
    InsufficientModel(String),
    #[error("galois residue: torsion sum has nonzero lambda-components")]
    GaloisResidue,
    #[error("recompression residual at s^{0}")]
    RecompressionResidual(usize),
    #[error("operator term not evaluable on series: {0}")]
    NotEvaluable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precision: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures that signal an internal inconsistency of the
    /// series engine rather than bad input.
    pub fn is_internal_inconsistency(&self) -> bool {
        matches!(self, Error::GaloisResidue | Error::RecompressionResidual(_))
    }
}
