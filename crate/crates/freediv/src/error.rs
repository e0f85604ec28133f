use thiserror::Error;

/// Errors raised by ring, polynomial, derivation and certification operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("variable {0} already exists in the ring")]
    NameCollision(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix shape violation: {0}")]
    MatrixShape(String),
    #[error("expected {expected} derivations, got {got}")]
    DerivationCount { expected: usize, got: usize },
    #[error("derivation is not weighted homogeneous")]
    InhomogeneousDerivation,
    #[error("derivation is not a member of Der(f)")]
    NotAMember,
    #[error("divisor is not reduced; pass its squarefree part instead")]
    NotReduced,
    #[error("divisor has weighted degree zero; Euler split undefined")]
    ZeroDegreeDivisor,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
