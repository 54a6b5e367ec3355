use thiserror::Error;

/// Errors produced by ring construction, linear algebra, and the complex
/// operations built on top of them.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be prime, got {0}")]
    NonPrime(u64),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("relation `{0}` is not homogeneous for the declared variable degrees")]
    NonHomogeneousRelation(String),

    #[error("rewriting system is not confluent: monomial `{0}` has normal forms `{1}` and `{2}`")]
    NonConfluent(String, String, String),

    #[error("unknown variable `{0}` in polynomial")]
    UnknownVariable(String),

    #[error("internal degree {degree} exceeds the ring degree bound {bound}")]
    DegreeBound { degree: i64, bound: i64 },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("matrix entry ({row},{col}) is not homogeneous of the forced degree {forced}")]
    Grading { row: usize, col: usize, forced: i64 },

    #[error("operands live over different rings")]
    RingMismatch,

    #[error("operation `{0}` is not supported over this coefficient backend")]
    Backend(String),

    #[error("homology at degree {0} is not determined: window edge without periodicity")]
    WindowEdge(i64),

    #[error("complex is not defined at degree {0}")]
    UndefinedDegree(i64),

    #[error("degreewise-infinite direct sum at degree {0}; both factors are unbounded (pass an explicit support truncation)")]
    InfiniteSum(i64),

    #[error("complex is not acyclic on the test window: homology is nonzero at degree {0}")]
    NotAcyclic(i64),

    #[error("coefficient backend is not self-injective Artinian")]
    NotSelfInjective,

    #[error("input sequence of modules is not exact: {0}")]
    NotExact(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("integer overflow during exact linear algebra")]
    Overflow,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
