//! Perverse signatures, Wall's Maslov triple index and the non-additivity
//! check on decomposed spaces.

pub mod maslov;
mod wall;

use crate::complex::ComplexError;
use crate::ichain::IchainError;
use crate::pairing::{middle_pairing, relative_middle_pairing, PairingError};
use crate::qlinalg::LinalgError;
use crate::complex::{Perversity, Space};

pub use maslov::{maslov, maslov_index, MaslovOutcome, MaslovProblem};
pub use wall::{
    restratification_dims, verify_wall, verify_wall_boundary, wall_defect, BoundaryDecomposition, BoundaryWallReport,
    DimensionCheck, WallDefect, WallReport,
};

#[derive(Debug, thiserror::Error)]
pub enum SignatureError {
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("isotropy violated: {0}")]
    Isotropy(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Ichain(#[from] IchainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `σ_{p̄→q̄}(X)` for an s-closed oriented `4k`-space.
pub fn perverse_signature(x: &Space, p: &Perversity, q: &Perversity, max_depth: usize) -> Result<i64, SignatureError> {
    Ok(middle_pairing(x, p, q, max_depth)?.signature()?)
}

/// `σ_{p̄↠q̄}(Y)` for a compact oriented `4k`-space with boundary.
pub fn relative_perverse_signature(
    y: &Space,
    p: &Perversity,
    q: &Perversity,
    max_depth: usize,
) -> Result<i64, SignatureError> {
    Ok(relative_middle_pairing(y, p, q, max_depth)?.signature()?)
}

#[cfg(test)]
mod tests;
