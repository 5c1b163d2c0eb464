use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("congruences are inconsistent: {0}")]
    ConflictingConstraints(String),
    #[error("moduli {0} and {1} are not coprime; merge them before combining")]
    NonCoprimeModuli(String, String),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial degree must be at least 1")]
    DegreeTooSmall,
    #[error("polynomial vanishes modulo {0}")]
    ZeroPolynomial(u64),
    #[error("n = {0} gives a curve of genus zero")]
    GenusZero(u64),
    #[error("p = {p} divides n = {n}")]
    RamifiedCase { n: u64, p: u64 },
    #[error("prime {0} is not supported by the construction pipeline")]
    UnsupportedPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("prime {0} must be routed to a different check")]
    WrongPrime(u64),
    #[error("curve specification is incomplete: {0}")]
    IncompleteSpec(String),
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("field of size {ell}^{degree} exceeds the enumeration budget {budget}")]
    BudgetExceeded { ell: u64, degree: u32, budget: u64 },
    #[error("only {0} usable primes; at least 5 are required")]
    InsufficientData(usize),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
