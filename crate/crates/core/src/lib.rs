//! Exact computation of Galois points and simultaneous Galois (SG) points
//! for reduced plane curves whose components are nonsingular.
//!
//! Everything is exact: numbers live in towers of simple algebraic
//! extensions of the rationals ([`field`]), curves are homogeneous forms in
//! X, Y, Z ([`poly`]), and points, lines and projective transformations are
//! handled in [`geom`]. Pairs of conics are treated completely by the dual
//! conic construction in [`conic`]; curves of degree at least 3 go through
//! the fiber-transformation solver in [`sg`]. The [`shell`] module parses
//! the text grammar and drives the `sgpoints` command line tool.

pub mod conic;
pub mod field;
pub mod geom;
pub mod poly;
pub mod sg;
pub mod shell;

pub use field::{FieldElement, FieldError, FieldTower, Rational};
pub use geom::{ProjLine, ProjPoint, ProjTransform};
pub use poly::{HomPoly, MPoly};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero vector is not a projective point or line")]
    ZeroVector,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("matrix is singular")]
    Singular,
    #[error("conic is singular")]
    SingularConic,
    #[error("conics have proportional forms")]
    CoincidentConics,
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("components have different degrees {0} and {1}; mixed-degree pairs are not supported")]
    MixedDegrees(u32, u32),
    #[error("no candidate source: the components match no normal form and no candidates were given")]
    NoCandidateSource,
    #[error("the system has infinitely many solutions")]
    PositiveDimensional,
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True when the failure means "could not decide inside the reachable
    /// tower" rather than a definite answer or bad input.
    pub fn is_unresolved(&self) -> bool {
        matches!(
            self,
            Error::Field(FieldError::Unresolved(_)) | Error::Field(FieldError::DegreeTooHigh(_))
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Runs `op` against the working tower, splitting a level and retrying
/// whenever a zero divisor turns up. `op` must lift its inputs into the
/// extender's current tower on every attempt.
pub(crate) fn with_splits<T>(
    ext: &mut field::Extender,
    mut op: impl FnMut(&mut field::Extender) -> Result<T>,
) -> Result<T> {
    const MAX_SPLITS: usize = 16;
    for _ in 0..MAX_SPLITS {
        match op(ext) {
            Err(Error::Field(FieldError::ZeroDivisor(info))) => ext.absorb(&info)?,
            other => return other,
        }
    }
    Err(FieldError::Unresolved("too many zero-divisor splits".into()).into())
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/conics.md")]
    mod conics {}
    #[doc = include_str!("../../../book/src/galois-points.md")]
    mod galois_points {}
    #[doc = include_str!("../../../book/src/sg-points.md")]
    mod sg_points {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/json-reports.md")]
    mod json_reports {}
}
