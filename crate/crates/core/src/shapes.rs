//! Constructors for the standard families of constant-width shapes and
//! conversions between representations.

use std::f64::consts::{PI, TAU};

use crate::geometry::{wrap_pi, Vec2};
use crate::par::{grid_angle, Exec};
use crate::support::{
    FourierWidthFunction, Harmonic, PieceMode, PiecewiseArcFunction, Shape, SupportRep, CURVATURE_GRID,
    STRUCTURAL_TOL,
};
use crate::{Error, Result};

/// Slack accepted on the unit-distance and diameter constraints of
/// user-supplied vertex lists.
pub const VERTEX_TOL: f64 = 1e-6;
/// Largest side count accepted by [`regular_reuleaux`].
pub const MAX_REGULAR_SIDES: usize = 10_001;
/// Odd-harmonic cutoff used when a piecewise shape enters a Minkowski combination.
pub const COMBINE_K_MAX: u32 = 64;

/// A Reuleaux polygon of width one.
///
/// Vertices are stored counterclockwise, starting from the lexicographically
/// smallest `(x, y)`. With `N = 2m + 1` vertices, the boundary arc from `v_j`
/// to `v_{j+1}` is centred at `v_{j-m}`, so every vertex sits at distance one
/// from `v_{i+m}` and `v_{i+m+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReuleauxPolygon {
    vertices: Vec<Vec2>,
    support: PiecewiseArcFunction,
}

impl ReuleauxPolygon {
    /// Validates `points` and builds the polygon with its support function.
    ///
    /// Orientation and starting vertex are canonicalised. Distances must match
    /// to within [`VERTEX_TOL`].
    pub fn from_vertices(points: Vec<Vec2>) -> Result<Self> {
        let n = points.len();
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidSideCount(n));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("vertex coordinate"));
        }
        let mut vertices = points;
        let doubled_area: f64 = (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum();
        if doubled_area < 0.0 {
            vertices.reverse();
        }
        let first = (0..n)
            .min_by(|&i, &j| {
                let (a, b) = (vertices[i], vertices[j]);
                a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
            })
            .unwrap_or(0);
        vertices.rotate_left(first);

        check_opposition(&vertices)?;
        check_diameter(&vertices)?;
        let support = support_from_vertices(&vertices)?;
        Ok(ReuleauxPolygon { vertices, support })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Index of the vertex at the centre of the arc from `v_i` to `v_{i+1}`.
    pub fn arc_center_index(&self, i: usize) -> usize {
        let n = self.vertices.len();
        (i + n - (n - 1) / 2) % n
    }

    pub fn support(&self) -> &PiecewiseArcFunction {
        &self.support
    }

    pub fn to_shape(&self) -> Shape {
        Shape::piecewise(self.support.clone(), format!("reuleaux-{}", self.len()))
    }

    pub fn into_shape(self, label: impl Into<String>) -> Shape {
        Shape::piecewise(self.support, label)
    }
}

fn check_opposition(v: &[Vec2]) -> Result<()> {
    let n = v.len();
    let m = (n - 1) / 2;
    let mut worst = (0.0, 0, 0, 1.0);
    for i in 0..n {
        for j in [(i + m) % n, (i + m + 1) % n] {
            let d = v[i].distance(v[j]);
            let dev = (d - 1.0).abs();
            if !(dev <= worst.0) {
                worst = (dev, i, j, d);
            }
        }
    }
    if !(worst.0 <= VERTEX_TOL) {
        let (_, i, j, distance) = worst;
        return Err(Error::ConstraintViolation { i, j, distance, expected: "= 1" });
    }
    Ok(())
}

fn check_diameter(v: &[Vec2]) -> Result<()> {
    let n = v.len();
    let rows = Exec::default().map(n, |i| {
        ((i + 1)..n)
            .map(|j| (v[i].distance(v[j]), j))
            .fold((0.0, i), |acc, x| if x.0 > acc.0 { x } else { acc })
    });
    let (i, (distance, j)) = rows
        .into_iter()
        .enumerate()
        .fold((0, (0.0, 0)), |acc, (i, r)| if r.0 > acc.1 .0 { (i, r) } else { acc });
    if distance > 1.0 + VERTEX_TOL {
        return Err(Error::ConstraintViolation { i, j, distance, expected: "<= 1" });
    }
    Ok(())
}

/// Normal cones in order: `V(v_0), A(v_{m+1}), V(v_1), A(v_{m+2}), …`.
fn support_from_vertices(v: &[Vec2]) -> Result<PiecewiseArcFunction> {
    let n = v.len();
    let m = (n - 1) / 2;
    let mut starts = Vec::with_capacity(2 * n);
    let mut modes = Vec::with_capacity(2 * n);
    let mut t = (v[0] - v[m]).angle();
    let first = t;
    for i in 0..n {
        let w = v[(i + m + 1) % n];
        let next = v[(i + 1) % n];
        starts.push(t);
        modes.push(PieceMode::Vertex(v[i]));
        let vertex_end = (v[i] - w).angle();
        let step = wrap_pi(vertex_end - t);
        if !(step > 0.0) {
            return Err(Error::InvalidPieces(format!("vertex {i} has an empty normal cone")));
        }
        t += step;
        starts.push(t);
        modes.push(PieceMode::Arc(w));
        let arc_end = (next - w).angle();
        let step = wrap_pi(arc_end - t);
        if !(step > 0.0) {
            return Err(Error::InvalidPieces(format!("arc after vertex {i} is empty")));
        }
        t += step;
    }
    if (t - first - TAU).abs() > VERTEX_TOL {
        return Err(Error::InvalidPieces(format!(
            "normal cones wind {} times instead of once",
            (t - first) / TAU
        )));
    }
    PiecewiseArcFunction::from_breakpoints(starts, modes, VERTEX_TOL)
}

/// Disk of diameter one centred at `center`: `h(θ) = 1/2 + center·u(θ)`.
pub fn disk(center: Vec2) -> Shape {
    let f = FourierWidthFunction::new([Harmonic::new(1, center.x, center.y)])
        .expect("k = 1 is an odd harmonic");
    Shape::fourier(f, "disk")
}

pub fn reuleaux_triangle() -> ReuleauxPolygon {
    let s3 = 3f64.sqrt();
    ReuleauxPolygon::from_vertices(vec![
        Vec2::new(0.5, 0.5 / s3),
        Vec2::new(-0.5, 0.5 / s3),
        Vec2::new(0.0, -1.0 / s3),
    ])
    .expect("the equilateral triangle of side one is a Reuleaux polygon")
}

/// Points `x_k`, `k = 1..=2N`, whose odd-indexed members are the vertices of
/// the regular Reuleaux `N`-gon.
pub fn regular_reuleaux_points(n: usize) -> Vec<Vec2> {
    let step = PI / n as f64;
    let denom = 2.0 * step.sin();
    (1..=2 * n)
        .map(|k| {
            let (s1, c1) = (k as f64 * step).sin_cos();
            let (s0, c0) = ((k - 1) as f64 * step).sin_cos();
            Vec2::new((s1 - s0) / denom, -(c1 - c0) / denom)
        })
        .collect()
}

/// Regular Reuleaux polygon with `n` sides, `n` odd in `3..=10001`.
pub fn regular_reuleaux(n: usize) -> Result<ReuleauxPolygon> {
    if n < 3 || n % 2 == 0 || n > MAX_REGULAR_SIDES {
        return Err(Error::InvalidSideCount(n));
    }
    let points = regular_reuleaux_points(n);
    ReuleauxPolygon::from_vertices(points.into_iter().step_by(2).collect())
}

pub fn reuleaux_from_vertices(points: Vec<Vec2>) -> Result<ReuleauxPolygon> {
    ReuleauxPolygon::from_vertices(points)
}

/// `g″ + g` for odd-harmonic terms without constant.
fn perturbation_curvature(terms: &[Harmonic], theta: f64) -> f64 {
    terms
        .iter()
        .map(|t| {
            let (s, c) = (t.k as f64 * theta).sin_cos();
            (1.0 - (t.k as f64).powi(2)) * (t.a * c + t.b * s)
        })
        .sum()
}

/// `h(θ) = 1/2 + δ·g(θ)`.
pub fn perturbed_circle(g: &[Harmonic], delta: f64) -> Result<Shape> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("delta must be finite and >= 0, got {delta}")));
    }
    let f = FourierWidthFunction::new(g.iter().copied())?.scaled(delta);
    let shape = Shape::fourier(f, "perturbed-circle");
    let report = shape.validate_convexity();
    if !report.pass() {
        return Err(Error::NotConvex { min_curvature: report.min_curvature });
    }
    Ok(shape)
}

/// Largest `δ` with `1/2 + δ(g″ + g) ≥ 0` on the curvature grid, or `+∞`
/// if `g″ + g` is nowhere negative.
pub fn max_admissible_delta(g: &[Harmonic]) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::InvalidArgument("perturbation needs at least one term".into()));
    }
    FourierWidthFunction::new(g.iter().copied())?;
    let min = Exec::default().min(CURVATURE_GRID, |j| perturbation_curvature(g, grid_angle(j, CURVATURE_GRID)));
    Ok(if min >= 0.0 { f64::INFINITY } else { 0.5 / -min })
}

/// `g(θ) = cos 3θ + sin 7θ`.
pub fn figure_one_terms() -> Vec<Harmonic> {
    vec![Harmonic::new(3, 1.0, 0.0), Harmonic::new(7, 0.0, 1.0)]
}

/// The perturbed circle with `δ = 1/160` and `g = cos 3θ + sin 7θ`.
pub fn figure_one_shape() -> Shape {
    let mut s = perturbed_circle(&figure_one_terms(), 1.0 / 160.0).expect("admissible perturbation");
    s.label = "figure-1".into();
    s
}

/// Shape with support function `(1 − λ)h₁ + λh₂`.
///
/// Piecewise inputs are projected onto odd harmonics up to [`COMBINE_K_MAX`]
/// first, so the result is always a Fourier shape.
pub fn minkowski_combine(s1: &Shape, s2: &Shape, lambda: f64) -> Result<Shape> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let as_fourier = |s: &Shape| match &s.rep {
        SupportRep::Fourier(f) => f.clone(),
        SupportRep::Piecewise(p) => fourier_projection(p, COMBINE_K_MAX).function,
    };
    let f = as_fourier(s1).combine(&as_fourier(s2), lambda);
    Ok(Shape::fourier(f, format!("({})*{} + ({})*{}", 1.0 - lambda, s1.label, lambda, s2.label)))
}

/// Odd-harmonic Fourier projection of a piecewise support function.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub function: FourierWidthFunction,
    /// Largest `|a_k|`, `|b_k|` over even `k ≥ 2`; zero up to rounding for
    /// valid inputs.
    pub max_even_coefficient: f64,
    /// `(1/2π)∫h`, which must equal `1/2`.
    pub mean: f64,
    /// Sampled minimum of `h″ + h`; truncation can push it below zero.
    pub min_curvature: f64,
}

/// `∫ cos(mθ)` and `∫ sin(mθ)` over `[t0, t1]`.
fn trig_integrals(m: i64, t0: f64, t1: f64) -> (f64, f64) {
    if m == 0 {
        return (t1 - t0, 0.0);
    }
    let mf = m as f64;
    let (s1, c1) = (mf * t1).sin_cos();
    let (s0, c0) = (mf * t0).sin_cos();
    ((s1 - s0) / mf, (c0 - c1) / mf)
}

/// Coefficients `(∫h cos kθ, ∫h sin kθ)` over one period, piece by piece.
fn piecewise_moments(p: &PiecewiseArcFunction, k: i64) -> (f64, f64) {
    let mut cos_part = 0.0;
    let mut sin_part = 0.0;
    for piece in p.pieces() {
        let (t0, t1) = (piece.start, piece.end);
        let kappa = if piece.mode.is_vertex() { 0.0 } else { 1.0 };
        let c = piece.mode.point();
        let (ck, sk) = trig_integrals(k, t0, t1);
        let (cm, sm) = trig_integrals(k - 1, t0, t1);
        let (cp, sp) = trig_integrals(k + 1, t0, t1);
        cos_part += kappa * ck + 0.5 * c.x * (cm + cp) + 0.5 * c.y * (sp - sm);
        sin_part += kappa * sk + 0.5 * c.x * (sp + sm) + 0.5 * c.y * (cm - cp);
    }
    (cos_part, sin_part)
}

/// Projects `p` onto odd harmonics `k ≤ k_max` by exact per-piece integration.
pub fn fourier_projection(p: &PiecewiseArcFunction, k_max: u32) -> Projection {
    let k_max = k_max.max(1) as i64;
    let mean = piecewise_moments(p, 0).0 / TAU;
    let mut terms = Vec::new();
    let mut max_even_coefficient: f64 = 0.0;
    for k in 1..=k_max {
        let (c, s) = piecewise_moments(p, k);
        let (a, b) = (c / PI, s / PI);
        if k % 2 == 0 {
            max_even_coefficient = max_even_coefficient.max(a.abs()).max(b.abs());
        } else {
            terms.push(Harmonic::new(k as u32, a, b));
        }
    }
    debug_assert!(max_even_coefficient < STRUCTURAL_TOL, "even harmonics {max_even_coefficient}");
    debug_assert!((mean - 0.5).abs() < STRUCTURAL_TOL, "mean {mean}");
    let function = FourierWidthFunction::new(terms).expect("odd, distinct, finite harmonics");
    let min_curvature = function.min_curvature_on_grid(CURVATURE_GRID, Exec::default());
    Projection { function, max_even_coefficient, mean, min_curvature }
}
