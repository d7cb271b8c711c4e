use thiserror::Error;

use crate::geometry::Vec2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or transforming shapes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("circles are degenerate: centers {a:?} and {b:?} coincide")]
    DegenerateCircles { a: Vec2, b: Vec2 },
    #[error("unit circles do not intersect: center distance {distance} is not below 2")]
    NoIntersection { distance: f64 },
    #[error("harmonic k={0} is even; width-1 support functions only admit odd harmonics")]
    EvenHarmonic(u32),
    #[error("harmonic k={0} appears more than once")]
    DuplicateHarmonic(u32),
    #[error("non-finite value: {0}")]
    NonFinite(&'static str),
    #[error("theta={theta} lies on a piece boundary; radius of curvature is two-valued there")]
    BreakpointAmbiguity { theta: f64 },
    #[error("invalid side count {0}: a Reuleaux polygon needs an odd number of vertices, at least 3")]
    InvalidSideCount(usize),
    #[error("constraint violated between vertices {i} and {j}: |v{i}-v{j}| = {distance}, expected {expected}")]
    ConstraintViolation {
        i: usize,
        j: usize,
        distance: f64,
        expected: &'static str,
    },
    #[error("invalid piecewise support function: {0}")]
    InvalidPieces(String),
    #[error("support function is not convex: min(h''+h) = {min_curvature}")]
    NotConvex { min_curvature: f64 },
    #[error("eps={0} out of range (0, 1]")]
    EpsOutOfRange(f64),
    #[error("assembly degenerated to {vertices} vertices")]
    AssemblyDegenerate { vertices: usize },
    #[error("polygon has {0} vertices; the operation needs at least 5")]
    TooFewVertices(usize),
    #[error("geometry failure: {0}")]
    GeometryFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed document: {0}")]
    Document(String),
}
