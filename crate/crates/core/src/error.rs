use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent user input (algebra spec, selectors, vertices).
    #[error("input error: {0}")]
    Input(String),
    /// The field is too small for a computation that needs `p > n`.
    #[error("prime {p} too small: need p > {needed}")]
    PrimeTooSmall { p: u32, needed: usize },
    /// A configured enumeration budget or cap was hit.
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    /// Randomized isomorphism search found no witness although every
    /// deterministic invariant agrees.
    #[error("isomorphism test ambiguous after {0} trials")]
    Ambiguous(usize),
    /// A summand of a module has no isomorphic catalog item.
    #[error(
        "summand with dimension vector {0:?} is not in the catalog (enumeration bound too small?)"
    )]
    NotInCatalog(Vec<usize>),
    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Internal consistency failure; should never happen.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
