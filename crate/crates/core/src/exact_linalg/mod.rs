//! Exact integer and rational linear algebra over lattices.
//!
//! Everything here is exact: integers are arbitrary precision, rationals are
//! kept in lowest terms with positive denominators, so equality is
//! structural. The three layers are
//!
//! * [`IntMatrix`] / [`RatVector`] / [`RatMatrix`] — the data types;
//! * [`smith_normal_form`] and friends — unimodular normal forms, ranks,
//!   kernels, torsion, and congruence solving `A·x ≡ b (mod Z^k)`;
//! * [`z2_decomposition`] / [`adapted_basis`] — decomposition of `Z^k` under
//!   an integral involution `s` into swap pairs, fixed and anti-fixed
//!   summands, with a unimodular change of basis realizing the block form.

mod involution;
mod matrix;
mod snf;

pub use involution::{adapted_basis, canonical_involution, is_involution, z2_decomposition, Z2Decomposition};
pub use matrix::{IntMatrix, RatMatrix, RatVector};
pub use snf::{kernel_basis, rank, rank_mod2, smith_normal_form, solve_congruence, torsion_order, SnfResult};

use thiserror::Error;

/// Errors from exact linear algebra operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions must be positive")]
    EmptyDimensions,
    #[error("entry list has length {got}, expected {expected}")]
    BadEntryCount { expected: usize, got: usize },
    #[error("matrix is not an involution (s*s != identity)")]
    NotInvolution,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
