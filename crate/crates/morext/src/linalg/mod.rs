//! Exact scalars and dense exact linear algebra.
//!
//! Two coefficient fields are supported: the prime fields `F_p` for
//! `2 <= p < 2^31` (residues in a `u64`, so products never overflow) and the
//! rationals (arbitrary-precision, always in lowest terms).  Everything else
//! in the crate reduces to the kernels here: reduced row echelon form, null
//! spaces, linear solving and span membership, all of it exact and all of it
//! deterministic: pivots are chosen in column order and free variables are
//! zeroed, so repeated runs produce identical bases and identical
//! certificates.

mod matrix;
mod scalar;

pub use matrix::{add_scaled, span_membership, Matrix, RrefBuilder, SpanSolver};
pub use scalar::{FieldSpec, Scalar};

use thiserror::Error;

/// Errors from scalar construction and matrix-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} out of range (need 2 <= p < 2^31)")]
    PrimeOutOfRange(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
