//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field context mismatch: {0}")]
    ContextMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic must be 0 or prime, got {0}")]
    NotPrime(u64),
    #[error("modulus polynomial is not irreducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("modulus polynomial must be monic of degree >= 1")]
    BadModulus,

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable x{0} already occurs; cannot homogenize with it")]
    VariableCollision(usize),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("polynomial is not bivariate (has {0} variables)")]
    NotBivariate(usize),
    #[error("dimension guard exceeded: {dim} > {guard}")]
    DimensionGuardExceeded { dim: String, guard: usize },
    #[error("search space guard exceeded at extension degree {ext}: {points} points > {guard}")]
    SearchSpaceGuardExceeded {
        ext: u32,
        points: String,
        guard: u64,
    },
    #[error("field has only {have} elements, {need} interpolation points required")]
    InsufficientFieldPoints { have: String, need: String },
    #[error("field too small: {have} elements, caller requires at least {need}")]
    FieldTooSmall { have: String, need: String },

    #[error("wrong shape for squarification: {0}")]
    WrongShape(String),
    #[error("operation requires a prime-field context, got {0}")]
    NotPrimeField(String),
    #[error("modulus guard exceeded: M = {m} but 2M must be <= {guard}")]
    ModulusGuardExceeded { m: u64, guard: u64 },
    #[error("assignment does not satisfy equation {index}")]
    InvalidAssignment { index: usize },

    #[error("vertex {0} has out-degree > 1")]
    OutDegreeViolation(String),
    #[error("digraph contains a directed cycle through vertex {0}")]
    CyclicDigraph(String),
    #[error("configuration space guard exceeded: {vertices} vertices > {guard}")]
    SpaceGuardExceeded { vertices: String, guard: u64 },
    #[error("machine has conflicting transitions for (state {state}, symbol {symbol})")]
    NondeterministicMachine { state: usize, symbol: usize },
    #[error("traversal guard exceeded: {vertices} vertices > {guard}")]
    GuardExceeded { vertices: String, guard: u64 },

    #[error("missing provenance header")]
    MissingProvenance,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
