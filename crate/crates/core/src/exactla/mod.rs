//! Exact dense linear algebra over the rationals.

mod elim;
mod mat;
mod poly;
mod scalar;
mod spectrum;
mod subspace;

pub use elim::{nullspace_vectors, rref, rref_rows, Echelon};
pub use mat::Mat;
pub use poly::Poly;
pub use scalar::{q, ParseScalarError, Scalar};
pub use spectrum::{
    charpoly, conjugate_partition, eigenspace, is_semisimple, jordan_partition, rational_spectrum, Spectrum,
};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ragged rows: every row must have the same length")]
    Ragged,
    #[error("shape mismatch: {left:?} times {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}
