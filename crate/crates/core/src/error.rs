use thiserror::Error;

use crate::poly::Var;

/// Errors raised anywhere in the solving pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value must be strictly positive")]
    NonPositive,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("interval endpoint is a root of the polynomial")]
    EndpointIsRoot,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("no square-free factor of the raw polynomial vanishes at the root")]
    NoMatchingFactor,
    #[error("neither polynomial depends on {0}, cannot eliminate it")]
    DegreeZeroInEliminatedVar(Var),
    #[error("system is not zero-dimensional: the resultant eliminating {0} vanishes identically")]
    NotZeroDimensional(Var),
    #[error("leading coefficient vanishes at the specialization point")]
    LeadingCoefficientVanishes,
    #[error("manual epsilon mode requires an epsilon value")]
    ManualEpsMissing,
    #[error("manual epsilon must be positive")]
    ManualEpsNonPositive,
    #[error("refinement budget of {budget_bits} bits exceeded while classifying pair ({i}, {j})")]
    RefinementBudgetExceeded { i: usize, j: usize, budget_bits: u64 },
    #[error("time budget exceeded")]
    Timeout,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("could not generate a non-degenerate instance after {attempts} attempts")]
    DegenerateInstance { attempts: u32 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Failure to read the polynomial grammar. Positions are 0-based byte offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        position: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("unknown variable `{name}` at position {position} (only x and y are allowed)")]
    UnknownVariable { position: usize, name: String },
    #[error("polynomial {index} is identically zero")]
    ZeroPolynomial { index: usize },
    #[error("polynomial {index} is a nonzero constant and mentions neither x nor y")]
    NoVariables { index: usize },
}
