use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("hessian determinant limited to {limit} variables, got {nvars}")]
    DimensionLimit { nvars: usize, limit: usize },

    #[error("all generators are zero")]
    AllGeneratorsZero,

    /// The Milnor algebra is infinite-dimensional. `missing` lists the
    /// (0-based) variables with no pure power in the leading ideal.
    #[error("non-isolated singularity: no pure power of {}", fmt_vars(.missing))]
    NonIsolated { missing: Vec<usize> },

    #[error("origin is not a critical point: linear term {term}")]
    NotACriticalPoint { term: String },

    #[error("germ is not invariant: monomial {monomial} has weight {weight} mod {modulus}")]
    NotInvariant {
        monomial: String,
        weight: u64,
        modulus: u64,
    },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("class `Other` has no expected multiset")]
    NoExpectedMultiset,

    #[error("invalid loop spec: {0}")]
    InvalidLoopSpec(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A mathematical claim that must hold for every valid input did not.
    #[error("claim violated ({claim}): {detail}")]
    ClaimViolated { claim: &'static str, detail: String },
}

fn fmt_vars(vars: &[usize]) -> String {
    vars.iter()
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join(", ")
}
