use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the required degree over GF({1})")]
    BadModulus(Vec<u32>, u32),
    #[error("field of order {0} is not supported without an explicit modulus")]
    UnsupportedOrder(u64),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("ternion {0} is not a unit")]
    NotAUnit(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not a subspace of {1}")]
    NotContained(String, String),
    #[error(
        "enumeration of {needed} items exceeds the budget of {budget} (pass --allow-large or raise TERNION_BUDGET)"
    )]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("subspace is not an element of the catalog")]
    NotInCatalog,
    #[error("expected a plane of type {expected}, got {got}")]
    WrongType { expected: &'static str, got: String },
    #[error("invalid preserver recipe: {0}")]
    InvalidRecipe(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
