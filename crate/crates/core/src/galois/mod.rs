//! Exact arithmetic in finite fields, and the invariant generators of a
//! twisted Galois action on a rational function field.
//!
//! A group `B` acts on the symbols `x^β` by right multiplication of the index
//! and on coefficients in `L` through Frobenius powers. For a subgroup `B₀`
//! the forms `t_{ρj} = Σ_{β∈B₀} w_j^β x^{ρβ}` are `B₀`-invariant and, because
//! the matrix `(w_j^β)` is invertible, span the same `L`-space as the `x`'s.

use thiserror::Error;

mod field;
mod matrix;
mod twisted;

pub use field::{FiniteField, MAX_FIELD_ORDER};
pub use matrix::Matrix;
pub use twisted::{
    invariant_generators, recovery_matrix, twisted_action, verify_construction, ConstructionReport, RecoveryMatrix,
    TwistedForm, TwistedSetup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("bad defining polynomial: {0}")]
    BadPolynomial(String),
    #[error("defining polynomial is reducible: monic factor {factor:?}")]
    Reducible { factor: Vec<u32> },
    #[error("field order exceeds {MAX_FIELD_ORDER}")]
    FieldTooLarge,
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("matrix is singular; the w's are not a basis")]
    SingularMatrix,
    #[error("{0} is not one of the coset representatives")]
    NotARepresentative(usize),
}
