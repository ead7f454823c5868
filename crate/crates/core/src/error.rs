use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus 2 is the even/odd case; use classify-rpe or classify-rpo")]
    UseParityModule,
    #[error("witness check failed: {0}")]
    WitnessCheckFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness exists for this classification")]
    NoWitness,
    #[error("sample count must be at least 1")]
    InvalidSamples,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalFnError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("degenerate composition: the substituted denominator vanishes identically")]
    DegenerateComposition,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExplorerError {
    #[error("family size {estimate:.3e} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { estimate: f64, ceiling: u64 },
    #[error("coefficient set is empty")]
    EmptyCoefficients,
    #[error("coefficient set must contain 0")]
    MissingZero,
    #[error("max degree must be at least 1")]
    InvalidDegree,
    #[error("this search requires a prime modulus")]
    MissingModulus,
    #[error("open question (2) is posed for N >= 3, got N = {0}")]
    ModulusTooSmall(u64),
    #[error("family {0} is not supported by this search")]
    WrongFamily(&'static str),
}

/// Positioned parse failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub(crate) fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }
}

/// Crate-level error for callers that mix modules (the CLI and FFI).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    RationalFn(#[from] RationalFnError),
    #[error(transparent)]
    Explorer(#[from] ExplorerError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
