use thiserror::Error;

use crate::group::GroupElement;

/// Errors raised by the library.
///
/// The variants fall into three families that the command-line front end maps
/// onto distinct exit codes: input validation (groups, elements, connection
/// sets, truth tables), family-parameter / hypothesis violations, and internal
/// arithmetic failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element {coords:?} for group {orders:?}")]
    InvalidElement { coords: Vec<u64>, orders: Vec<u64> },

    #[error("connection set contains the identity element")]
    ZeroInSet,

    #[error(
        "connection set is not symmetric: {element} is present but its inverse {missing} is not"
    )]
    AsymmetricSet {
        element: GroupElement,
        missing: GroupElement,
    },

    #[error("{element} has order {order}, not 2")]
    NotAnInvolution { element: GroupElement, order: u64 },

    #[error("spectrum is not integral")]
    NonIntegralSpectrum,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("parameter outside the family's domain: {0}")]
    ParameterDomain(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("function is not a class function")]
    NotClassFunction,

    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension {n} exceeds the guard of {max}")]
    DimensionGuard { n: usize, max: usize },

    #[error("invalid truth table: {0}")]
    TruthTable(String),

    #[error("invalid cyclotomic element: {0}")]
    Cyclotomic(String),

    #[error("invalid function values: {0}")]
    FunctionValues(String),
}

pub type Result<T> = std::result::Result<T, Error>;
