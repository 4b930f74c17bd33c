use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^63)")]
    ModulusTooLarge(u64),
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("variable y{index} is outside the universe y1..y{max}")]
    VariableOutOfRange { index: usize, max: usize },
    #[error("index {index} needs {index}! to be invertible, but the characteristic is {p}")]
    FactorialNotInvertible { index: usize, p: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is inseparable (its derivative vanishes in characteristic {0})")]
    Inseparable(u64),
    #[error("element is not invertible modulo the defining polynomial (reducibility evidence: gcd = {0})")]
    NotInvertible(String),
    #[error("defining polynomial must be monic of degree >= 1")]
    BadModulus,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is the unit ideal (empty variety)")]
    UnitIdeal,
    #[error("expansion point is singular: coefficient {coefficient} has a pole there")]
    SingularPoint { coefficient: String },
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("expected {expected} initial conditions, got {got}")]
    InitialConditions { expected: usize, got: usize },
    #[error("series precision {available} is below the {required} coefficients to check")]
    InsufficientPrecision { available: usize, required: usize },
    #[error("power series oracle requires characteristic 0")]
    PositiveCharacteristic,
    #[error("operator must have order >= 1")]
    EmptyOperator,
}
