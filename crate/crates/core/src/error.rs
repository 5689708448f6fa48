use thiserror::Error;

use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is degenerate (det = 0)")]
    Degenerate,
    #[error("odd diagonal entry at {0}: only even lattices are supported")]
    OddLattice(usize),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("vector {0} is not in the lattice (non-integer coordinates)")]
    NotInLattice(String),
    #[error("vector {0} is not in the dual lattice")]
    NotInDual(String),
    #[error("charge {0} is not congruent to the coset representative")]
    WrongCoset(String),
    #[error("element is not integral: coefficient {coeff} at {key}")]
    NotIntegral { key: String, coeff: Q },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("polynomial is not symmetric under variable permutations")]
    NotSymmetricPoly,
    #[error("exponential did not terminate within cap {cap}")]
    CapExceeded {
        cap: usize,
        partial: Box<crate::fock::FockElement>,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
