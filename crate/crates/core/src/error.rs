use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis index {index} is not valid for a ring with indices {lo}..{hi}")]
    InvalidBasis { index: usize, lo: usize, hi: usize },

    #[error("element has negative coefficient {coeff} at index {index}; not an object")]
    NotAnObject { index: usize, coeff: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: u64, lo: u64, hi: u64 },

    #[error("class v_{0} is negligible (index divisible by p)")]
    Negligible(u64),

    #[error("malformed factorized class: {0}")]
    MalformedClass(String),

    #[error("oracle cap exceeded: {a}x{b} = {size} > {cap}")]
    CapExceeded { a: u64, b: u64, size: u64, cap: u64 },

    #[error("not a representation: {0}")]
    NotARepresentation(String),

    #[error("representation does not restrict to a single simple factor: {0}")]
    NotSimple(String),

    #[error("proposition hypothesis fails at class {class}: {reason}")]
    PropInapplicable { class: String, reason: String },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quadrature did not converge: residual {residual:e} between orders")]
    Quadrature { residual: f64 },

    /// Violated internal invariant; indicates a bug or corrupt data, never user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::Quadrature { .. })
    }
}
