//! Exact dense linear algebra over prime fields.

mod field;
mod gf2;
mod matrix;

use thiserror::Error;

pub use field::{PrimeField, MAX_MODULUS};
pub use matrix::{pullback_basis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime below 65536")]
    InvalidModulus(u32),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrices over different fields: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("entry {value} is not a residue modulo {modulus}")]
    EntryOutOfRange { value: u32, modulus: u32 },
    #[error("expected {expected} entries, got {actual}")]
    DataLength { expected: usize, actual: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("a block row or column has no sized block")]
    UndeterminedBlock,
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
}
