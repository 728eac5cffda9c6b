//! Sparse multivariate polynomials and homogeneous forms.

mod hom;
mod mpoly;
mod singular;

pub use hom::{HomPoly, VAR_NAMES};
pub use mpoly::{determinant, resultant, MPoly};
pub use singular::{is_nonsingular, singular_witness};
