//! Planar curves of constant width, described by their support functions.
//!
//! A convex body of width one is determined by its support function
//! `h(θ) = max_{x∈K} x·u(θ)`, which satisfies `h(θ) + h(θ+π) = 1` and
//! `0 ≤ h″ + h ≤ 1`. This crate works with two concrete representations:
//!
//! * [`FourierWidthFunction`]: a truncated trigonometric series with mean `1/2`
//!   and odd harmonics only, used for smooth shapes;
//! * [`PiecewiseArcFunction`]: alternating vertex/arc pieces, which is the
//!   exact support function of a [`ReuleauxPolygon`].
//!
//! On top of those it provides constructors for the classical examples,
//! exact perimeter and area, the approximation of any shape by Reuleaux
//! polygons in the `C¹` norm, and the area-decreasing surgery that reduces a
//! Reuleaux polygon to the Reuleaux triangle.
//!
//! ```
//! use constwidth::{measures, shapes};
//!
//! let heptagon = shapes::regular_reuleaux(7).unwrap();
//! let shape = heptagon.to_shape();
//! assert!((measures::perimeter(&shape) - std::f64::consts::PI).abs() < 1e-12);
//! ```
//!
//! # Features
//!
//! `parallel` (default) evaluates sampling grids with rayon. Without it every
//! grid loop runs sequentially. Both paths reduce in a fixed order, so results
//! are bit-identical either way.

#![forbid(unsafe_code)]
#![allow(clippy::many_single_char_names, clippy::neg_cmp_op_on_partial_ord, clippy::manual_is_multiple_of)]

mod error;
pub mod approximation;
pub mod geometry;
pub mod io;
pub mod measures;
pub mod par;
pub mod reduction;
pub mod shapes;
pub mod support;

pub use error::{Error, Result};
pub use geometry::{unit_circle_intersection, unit_direction, unit_direction_derivative, Angle, Vec2};
pub use par::Exec;
pub use shapes::ReuleauxPolygon;
pub use support::{
    FourierWidthFunction, Harmonic, Piece, PieceMode, PiecewiseArcFunction, Shape, SupportFunction,
    SupportRep,
};
