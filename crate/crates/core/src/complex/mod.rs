//! Oriented simplicial pseudomanifolds with a filtration by skeleta.
//!
//! A [`Space`] stores, for every simplex, the smallest skeleton `X^k` it lies
//! in. Singular strata are the connected pieces of each `X^k − X^{k−1}`; the
//! top level `n` is the regular part.

pub mod catalog;
pub mod construct;
pub mod glue;
pub mod simplicial;
pub mod space;
pub mod ssp;
pub mod subdivide;
pub mod validate;

pub use construct::{
    cone, cone_off_boundary, product_with_manifold, restratify_boundary, staircase_product, suspension, Restratification,
};
pub use glue::{glue, Decomposition};
pub use simplicial::{Simplex, SimplicialComplex};
pub use space::{closure_mask, Bicollar, Collar, Perversity, Space, Stratum, REGULAR};
pub use ssp::{emit_ssp, parse_perversity, parse_ssp, ParseError, PerversitySpec};
pub use subdivide::{barycentric_subdivide, Subdivision};
pub use validate::{validate, Check, Status, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("invalid space: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid perversity: {0}")]
    Perversity(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}
