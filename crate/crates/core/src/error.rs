use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the p-adic valuation of zero is infinite")]
    ZeroValuation,

    #[error("{value} is not invertible modulo {prime}")]
    NotInvertible { value: String, prime: u64 },

    #[error("{value} has negative {prime}-adic valuation")]
    NegativeValuation { value: String, prime: u64 },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("constant polynomials are not supported")]
    ConstantPolynomial,

    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("splitting field is not Q: cofactor {cofactor} has no rational root")]
    NotSplitOverQ { cofactor: String },

    #[error("root list is empty")]
    EmptyRootList,

    #[error("root {0} is listed twice")]
    DuplicateRoot(String),

    #[error("tree depth {depth} does not separate the roots")]
    TreeTooShallow { depth: u64 },

    #[error("stationary phase recursion exceeded depth {0}")]
    RecursionBudgetExceeded(u64),

    #[error("p^{n} * c_{index} is not an integer")]
    NonIntegralCount { n: usize, index: usize },

    #[error("count N_{n} = {value} is out of range")]
    CountOutOfRange { n: usize, value: String },

    #[error("coefficient prefix has {available} terms, {needed} needed")]
    PrefixTooShort { available: usize, needed: usize },

    #[error("modulus {prime}^{exponent} exceeds the enumeration budget {budget}")]
    BudgetExceeded {
        prime: u64,
        exponent: u32,
        budget: u64,
    },

    #[error("malformed keystream: {0}")]
    Keystream(String),

    #[error("malformed structured output: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
