use thiserror::Error;

/// Errors produced by the graph-metric toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus {0} is not a prime")]
    NotPrime(u32),

    #[error("entry {value} is not a residue modulo {q}")]
    InvalidResidue { value: u32, q: u32 },

    #[error("moduli differ: {0} and {1}")]
    ModulusMismatch(u32, u32),

    #[error("linear map is singular")]
    Singular,

    #[error("enumeration of {what} exceeds the guard (2^{log2_size} > 2^{limit_log2})")]
    EnumerationTooLarge {
        what: &'static str,
        log2_size: u32,
        limit_log2: u32,
    },

    #[error("search too large: {0}")]
    SearchTooLarge(String),

    #[error("the zero code has no nonzero codeword")]
    ZeroCode,

    #[error("the reduced form is not hierarchical")]
    NotHierarchical,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("map is not a linear isometry of the graph metric")]
    NotAnIsometry,

    #[error("oracle answers are inconsistent: {0}")]
    InconsistentOracle(String),

    #[error("missing required weight for support {0}")]
    MissingRequiredWeight(String),

    #[error("the reduced form has {0} levels; a single level is required")]
    NotSingleLevel(usize),

    #[error("the unique decomposition property fails")]
    UdpViolated,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default cap on exhaustive enumerations, as a base-2 exponent.
pub const ENUMERATION_LIMIT_LOG2: u32 = 24;

/// Checks `base^exp <= 2^limit_log2` without overflow.
pub(crate) fn guard_power(what: &'static str, base: u64, exp: usize, limit_log2: u32) -> Result<()> {
    let limit = 1u128 << limit_log2;
    let mut size: u128 = 1;
    for _ in 0..exp {
        size = size.saturating_mul(base as u128);
        if size > limit {
            let log2_size = ((base as f64).log2() * exp as f64).ceil() as u32;
            return Err(Error::EnumerationTooLarge { what, log2_size, limit_log2 });
        }
    }
    Ok(())
}
