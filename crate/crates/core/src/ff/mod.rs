//! Exact arithmetic and dense linear algebra over GF(p^m).

mod field;
mod matrix;

pub use field::{is_prime, prime_power, Fe, FieldCtx};
pub use matrix::{in_row_span, FFMatrix, Rref};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{m}) exceeds the supported field size")]
    TooLarge { p: u64, m: u32 },
    #[error("not a field element: {0}")]
    BadElement(String),
    #[error("expected {expected:?} entries shape, found {found} entries")]
    Shape { expected: (usize, usize), found: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    Mismatch { left: (usize, usize), right: (usize, usize) },
}
