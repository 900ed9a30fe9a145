//! PSL(2,C) arithmetic and upper half-space geometry.

mod fuchsian;
mod moebius;
mod point;
mod representation;

pub use fuchsian::{fuchsian_surface, regular_polygon_generators};
pub use moebius::{Classification, FixedPoints, MoebiusMap, DET_TOL, EQ_TOL};
pub use point::{apply, dist, Boundary, H3Point};
pub use representation::Representation;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperbolicError {
    #[error("matrix is singular")]
    Singular,
    #[error("height must be positive, got {0}")]
    NonPositiveHeight(f64),
    #[error("the identity has no fixed points")]
    IdentityMap,
    #[error("letter code {0} is out of range for this group")]
    LetterOutOfRange(u16),
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("generator {0} is mapped to the identity")]
    IdentityGenerator(usize),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
}
