//! Exact linear algebra over the rationals.

pub mod form;
pub mod io;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod subspace;

pub use form::{BilinearForm, Symmetry};
pub use matrix::{kernel_image, KernelImage, QMatrix};
pub use rational::Rational;
pub use sparse::{Echelon, LoggedEchelon, SparseVec};
pub use subspace::{quotient, Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("form is {found}, expected {wanted}")]
    Symmetry { wanted: Symmetry, found: Symmetry },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Signature of a symmetric form given by its Gram matrix.
pub fn signature(f: &BilinearForm) -> Result<i64, LinalgError> {
    f.signature()
}

/// Sum and intersection of two subspaces.
pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace), LinalgError> {
    Ok((a.sum(b)?, a.intersection(b)?))
}

/// Restriction of `f` to `u`.
pub fn restrict_form(f: &BilinearForm, u: &Subspace) -> Result<BilinearForm, LinalgError> {
    f.restrict(u)
}
