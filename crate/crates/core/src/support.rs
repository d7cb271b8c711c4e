//! Support-function representations, evaluation and validity checks.
//!
//! For a body of width one, `h(θ) + h(θ+π) = 1` and the radius of curvature
//! `h″ + h` lies in `[0, 1]`. The boundary point with outward normal `u(θ)` is
//! `γ(θ) = h(θ)u(θ) + h′(θ)u′(θ)`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::geometry::{unit_direction, unit_direction_derivative, wrap_pi, Vec2};
use crate::par::{grid_angle, Exec};
use crate::{Error, Result};

/// Tolerance for the structural checks on exact representations.
pub const STRUCTURAL_TOL: f64 = 1e-9;
/// Grid used for the width check.
pub const WIDTH_GRID: usize = 4096;
/// Grid used for curvature minimisation on smooth representations.
pub const CURVATURE_GRID: usize = 8192;
/// Angular grid of the sampled Kallay inequality.
pub const KALLAY_THETA_GRID: usize = 512;
/// Number of `φ` samples in `[-π/2, π/2]` for the Kallay inequality.
pub const KALLAY_PHI_GRID: usize = 257;
/// Distance to a breakpoint at which the radius of curvature is ambiguous.
pub const BREAKPOINT_TOL: f64 = 1e-12;

/// Anything that can evaluate a support function and its first derivative.
pub trait SupportFunction {
    fn h(&self, theta: f64) -> f64;

    fn h_prime(&self, theta: f64) -> f64;

    /// `γ(θ) = h(θ)u(θ) + h′(θ)u′(θ)`.
    fn boundary_point(&self, theta: f64) -> Vec2 {
        unit_direction(theta) * self.h(theta) + unit_direction_derivative(theta) * self.h_prime(theta)
    }

    /// Distance between the two supporting lines with normals `±u(θ)`.
    fn width(&self, theta: f64) -> f64 {
        self.h(theta) + self.h(theta + PI)
    }
}

/// One term `a cos kθ + b sin kθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

impl Harmonic {
    pub fn new(k: u32, a: f64, b: f64) -> Self {
        Harmonic { k, a, b }
    }

    #[inline]
    fn cos_sin(&self, theta: f64) -> (f64, f64) {
        let (s, c) = (self.k as f64 * theta).sin_cos();
        (c, s)
    }
}

/// `h(θ) = 1/2 + Σ a_k cos kθ + b_k sin kθ` over odd `k`.
///
/// The constant term is fixed and even harmonics are rejected, so
/// `h(θ) + h(θ+π) = 1` holds identically. Terms are kept sorted by `k`;
/// all-zero terms are dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierWidthFunction {
    terms: Vec<Harmonic>,
}

impl FourierWidthFunction {
    pub fn new(terms: impl IntoIterator<Item = Harmonic>) -> Result<Self> {
        let mut terms: Vec<Harmonic> = terms.into_iter().collect();
        for t in &terms {
            if t.k % 2 == 0 {
                return Err(Error::EvenHarmonic(t.k));
            }
            if !(t.a.is_finite() && t.b.is_finite()) {
                return Err(Error::NonFinite("harmonic coefficient"));
            }
        }
        terms.sort_by_key(|t| t.k);
        if let Some(w) = terms.windows(2).find(|w| w[0].k == w[1].k) {
            return Err(Error::DuplicateHarmonic(w[0].k));
        }
        terms.retain(|t| t.a != 0.0 || t.b != 0.0);
        Ok(FourierWidthFunction { terms })
    }

    /// The disk of diameter one centred at the origin.
    pub fn half() -> Self {
        FourierWidthFunction { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[Harmonic] {
        &self.terms
    }

    pub fn max_harmonic(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.k)
    }

    /// `h″(θ) + h(θ) = 1/2 + Σ (1 − k²)(a_k cos kθ + b_k sin kθ)`.
    pub fn radius_of_curvature(&self, theta: f64) -> f64 {
        0.5 + self
            .terms
            .iter()
            .map(|t| {
                let (c, s) = t.cos_sin(theta);
                let k2 = (t.k as f64).powi(2);
                (1.0 - k2) * (t.a * c + t.b * s)
            })
            .sum::<f64>()
    }

    /// Every coefficient multiplied by `factor`; the constant stays `1/2`.
    pub fn scaled(&self, factor: f64) -> Self {
        let terms = self.terms.iter().map(|t| Harmonic::new(t.k, t.a * factor, t.b * factor));
        FourierWidthFunction { terms: terms.filter(|t| t.a != 0.0 || t.b != 0.0).collect() }
    }

    /// Coefficients of `(1 − λ)·self + λ·other`.
    pub fn combine(&self, other: &Self, lambda: f64) -> Self {
        let mut out: Vec<Harmonic> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let mu = 1.0 - lambda;
        while i < self.terms.len() || j < other.terms.len() {
            let ki = self.terms.get(i).map_or(u32::MAX, |t| t.k);
            let kj = other.terms.get(j).map_or(u32::MAX, |t| t.k);
            let term = if ki < kj {
                i += 1;
                let t = self.terms[i - 1];
                Harmonic::new(t.k, mu * t.a, mu * t.b)
            } else if kj < ki {
                j += 1;
                let t = other.terms[j - 1];
                Harmonic::new(t.k, lambda * t.a, lambda * t.b)
            } else {
                let (s, o) = (self.terms[i], other.terms[j]);
                i += 1;
                j += 1;
                Harmonic::new(s.k, mu * s.a + lambda * o.a, mu * s.b + lambda * o.b)
            };
            if term.a != 0.0 || term.b != 0.0 {
                out.push(term);
            }
        }
        FourierWidthFunction { terms: out }
    }

    /// Minimum of `h″ + h` over the uniform grid of `n` points.
    pub fn min_curvature_on_grid(&self, n: usize, exec: Exec) -> f64 {
        exec.min(n, |j| self.radius_of_curvature(grid_angle(j, n)))
    }

    pub fn max_curvature_on_grid(&self, n: usize, exec: Exec) -> f64 {
        exec.max(n, |j| self.radius_of_curvature(grid_angle(j, n)))
    }
}

impl SupportFunction for FourierWidthFunction {
    fn h(&self, theta: f64) -> f64 {
        0.5 + self
            .terms
            .iter()
            .map(|t| {
                let (c, s) = t.cos_sin(theta);
                t.a * c + t.b * s
            })
            .sum::<f64>()
    }

    fn h_prime(&self, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let (c, s) = t.cos_sin(theta);
                t.k as f64 * (t.b * c - t.a * s)
            })
            .sum()
    }
}

/// What the support function looks like on one piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceMode {
    /// `h(θ) = p·u(θ)`: every normal in the piece touches the vertex `p`.
    Vertex(Vec2),
    /// `h(θ) = 1 + z·u(θ)`: a unit arc centred at `z`.
    Arc(Vec2),
}

impl PieceMode {
    pub fn point(&self) -> Vec2 {
        match *self {
            PieceMode::Vertex(p) | PieceMode::Arc(p) => p,
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, PieceMode::Vertex(_))
    }

    /// Antipodal counterpart: `Vertex(p)` on `θ` pairs with `Arc(p)` on `θ+π`.
    pub fn antipode(&self) -> PieceMode {
        match *self {
            PieceMode::Vertex(p) => PieceMode::Arc(p),
            PieceMode::Arc(p) => PieceMode::Vertex(p),
        }
    }

    #[inline]
    fn h(&self, theta: f64) -> f64 {
        match *self {
            PieceMode::Vertex(p) => p.dot(unit_direction(theta)),
            PieceMode::Arc(z) => 1.0 + z.dot(unit_direction(theta)),
        }
    }

    #[inline]
    fn h_prime(&self, theta: f64) -> f64 {
        self.point().dot(unit_direction_derivative(theta))
    }

    #[inline]
    fn boundary_point(&self, theta: f64) -> Vec2 {
        match *self {
            PieceMode::Vertex(p) => p,
            PieceMode::Arc(z) => z + unit_direction(theta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub mode: PieceMode,
}

impl Piece {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }
}

/// Exact support function of a Reuleaux polygon: alternating vertex and arc
/// pieces over one period.
///
/// Breakpoints are stored in canonical rotation: the first piece contains
/// `θ = 0` (or begins exactly there), so `starts[0] ∈ (-2π, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseArcFunction {
    starts: Vec<f64>,
    modes: Vec<PieceMode>,
}

impl PiecewiseArcFunction {
    /// Builds from cyclically ordered pieces given by their start angles.
    ///
    /// `starts` must be strictly increasing and span less than `2π`; piece `j`
    /// ends where piece `j + 1` starts and the last piece ends at
    /// `starts[0] + 2π`. Junction continuity and antipodal pairing are
    /// checked to `tol`.
    pub fn from_breakpoints(starts: Vec<f64>, modes: Vec<PieceMode>, tol: f64) -> Result<Self> {
        let n = starts.len();
        if n != modes.len() {
            return Err(Error::InvalidPieces("start and mode counts differ".into()));
        }
        if n < 6 || n % 2 != 0 || (n / 2) % 2 == 0 {
            return Err(Error::InvalidPieces(format!(
                "{n} pieces; need 2N pieces for an odd vertex count N >= 3"
            )));
        }
        if starts.iter().any(|s| !s.is_finite()) || modes.iter().any(|m| !m.point().is_finite()) {
            return Err(Error::NonFinite("piece data"));
        }
        if starts.windows(2).any(|w| w[1] <= w[0]) || starts[n - 1] >= starts[0] + TAU {
            return Err(Error::InvalidPieces("breakpoints must increase within one period".into()));
        }
        if (0..n).any(|j| modes[j].is_vertex() == modes[(j + 1) % n].is_vertex()) {
            return Err(Error::InvalidPieces("vertex and arc pieces must alternate".into()));
        }

        let mut f = PiecewiseArcFunction { starts, modes };
        f.canonicalize();
        f.check_junctions(tol)?;
        f.check_antipodes(tol)?;
        Ok(f)
    }

    fn canonicalize(&mut self) {
        let shift = (self.starts[0] / TAU).floor() * TAU;
        for s in &mut self.starts {
            *s -= shift;
        }
        // starts[0] ∈ [0, 2π) now; find the piece covering 2π ≡ 0.
        if self.starts[0] == 0.0 {
            return;
        }
        let n = self.starts.len();
        let j = self.starts.partition_point(|&s| s <= TAU) - 1;
        let mut starts = Vec::with_capacity(n);
        starts.extend(self.starts[j..].iter().map(|s| s - TAU));
        starts.extend_from_slice(&self.starts[..j]);
        self.starts = starts;
        self.modes.rotate_left(j);
    }

    fn check_junctions(&self, tol: f64) -> Result<()> {
        let n = self.starts.len();
        for j in 0..n {
            let t = self.starts[j];
            let prev = self.modes[(j + n - 1) % n];
            let cur = self.modes[j];
            let gap = prev.boundary_point(t).distance(cur.boundary_point(t));
            if !(gap <= tol) {
                return Err(Error::InvalidPieces(format!(
                    "junction at theta={t} is discontinuous by {gap}"
                )));
            }
        }
        Ok(())
    }

    fn check_antipodes(&self, tol: f64) -> Result<()> {
        let n = self.starts.len();
        let half = n / 2;
        for j in 0..n {
            let k = (j + half) % n;
            let expected = self.modes[j].antipode();
            let got = self.modes[k];
            let shift = wrap_pi(self.starts[k] - self.starts[j] - PI);
            if got.is_vertex() != expected.is_vertex()
                || got.point().distance(expected.point()) > tol
                || shift.abs() > tol
            {
                return Err(Error::InvalidPieces(format!(
                    "piece {j} has no antipodal partner (offset {shift})"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.starts.len() / 2
    }

    /// Start of the canonical period; the period is `[t0, t0 + 2π)`.
    pub fn period_start(&self) -> f64 {
        self.starts[0]
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.starts
    }

    pub fn piece(&self, j: usize) -> Piece {
        let end = self.starts.get(j + 1).copied().unwrap_or(self.starts[0] + TAU);
        Piece { start: self.starts[j], end, mode: self.modes[j] }
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        (0..self.starts.len()).map(|j| self.piece(j))
    }

    /// Vertices in the order their normal cones appear.
    pub fn vertices(&self) -> Vec<Vec2> {
        self.modes.iter().filter(|m| m.is_vertex()).map(|m| m.point()).collect()
    }

    /// Reduces `theta` into the canonical period and returns the piece index.
    fn locate(&self, theta: f64) -> (usize, f64) {
        let t0 = self.starts[0];
        let mut r = (theta - t0).rem_euclid(TAU) + t0;
        if r >= t0 + TAU {
            r -= TAU;
        }
        let j = self.starts.partition_point(|&s| s <= r).saturating_sub(1);
        (j, r)
    }

    /// The piece covering `theta`.
    pub fn mode_at(&self, theta: f64) -> PieceMode {
        self.modes[self.locate(theta).0]
    }

    /// Angular distance from `theta` to the nearest breakpoint.
    pub fn distance_to_breakpoint(&self, theta: f64) -> f64 {
        let (j, r) = self.locate(theta);
        let p = self.piece(j);
        (r - p.start).min(p.end - r)
    }

    /// `0` on vertex pieces, `1` on arc pieces.
    pub fn radius_of_curvature(&self, theta: f64) -> Result<f64> {
        if self.distance_to_breakpoint(theta) <= BREAKPOINT_TOL {
            return Err(Error::BreakpointAmbiguity { theta });
        }
        Ok(if self.mode_at(theta).is_vertex() { 0.0 } else { 1.0 })
    }
}

impl SupportFunction for PiecewiseArcFunction {
    fn h(&self, theta: f64) -> f64 {
        self.mode_at(theta).h(theta)
    }

    fn h_prime(&self, theta: f64) -> f64 {
        self.mode_at(theta).h_prime(theta)
    }

    fn boundary_point(&self, theta: f64) -> Vec2 {
        self.mode_at(theta).boundary_point(theta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SupportRep {
    Fourier(FourierWidthFunction),
    Piecewise(PiecewiseArcFunction),
}

/// A body of constant width one, identified with its support function.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    pub rep: SupportRep,
    pub label: String,
}

impl Shape {
    pub fn fourier(f: FourierWidthFunction, label: impl Into<String>) -> Self {
        Shape { rep: SupportRep::Fourier(f), label: label.into() }
    }

    pub fn piecewise(p: PiecewiseArcFunction, label: impl Into<String>) -> Self {
        Shape { rep: SupportRep::Piecewise(p), label: label.into() }
    }

    pub fn as_fourier(&self) -> Option<&FourierWidthFunction> {
        match &self.rep {
            SupportRep::Fourier(f) => Some(f),
            SupportRep::Piecewise(_) => None,
        }
    }

    pub fn as_piecewise(&self) -> Option<&PiecewiseArcFunction> {
        match &self.rep {
            SupportRep::Piecewise(p) => Some(p),
            SupportRep::Fourier(_) => None,
        }
    }

    pub fn eval_h(&self, theta: f64) -> f64 {
        self.h(theta)
    }

    pub fn eval_h_prime(&self, theta: f64) -> f64 {
        self.h_prime(theta)
    }

    /// `h″(θ) + h(θ)`. Piecewise shapes report
    /// [`Error::BreakpointAmbiguity`] within `1e-12` of a breakpoint.
    pub fn radius_of_curvature(&self, theta: f64) -> Result<f64> {
        match &self.rep {
            SupportRep::Fourier(f) => Ok(f.radius_of_curvature(theta)),
            SupportRep::Piecewise(p) => p.radius_of_curvature(theta),
        }
    }

    /// `(min, max)` of the radius of curvature: exact for piecewise shapes,
    /// sampled on [`CURVATURE_GRID`] points otherwise.
    pub fn curvature_range(&self, exec: Exec) -> (f64, f64) {
        match &self.rep {
            SupportRep::Fourier(f) => (
                f.min_curvature_on_grid(CURVATURE_GRID, exec),
                f.max_curvature_on_grid(CURVATURE_GRID, exec),
            ),
            SupportRep::Piecewise(_) => (0.0, 1.0),
        }
    }

    pub fn validate_width(&self) -> WidthReport {
        self.validate_width_with(Exec::default())
    }

    pub fn validate_width_with(&self, exec: Exec) -> WidthReport {
        let max_deviation =
            exec.max(WIDTH_GRID, |j| (self.width(grid_angle(j, WIDTH_GRID)) - 1.0).abs());
        WidthReport { max_deviation, pass: max_deviation <= STRUCTURAL_TOL }
    }

    pub fn validate_convexity(&self) -> ConvexityReport {
        self.validate_convexity_with(Exec::default())
    }

    pub fn validate_convexity_with(&self, exec: Exec) -> ConvexityReport {
        let (min_curvature, max_curvature) = self.curvature_range(exec);
        let rows = exec.map(KALLAY_THETA_GRID, |i| {
            let theta = grid_angle(i, KALLAY_THETA_GRID);
            let h0 = self.h(theta);
            (0..KALLAY_PHI_GRID)
                .map(|j| {
                    let phi = -FRAC_PI_2 + PI * j as f64 / (KALLAY_PHI_GRID - 1) as f64;
                    self.h(theta + phi) + self.h(theta - phi) - 2.0 * h0 * phi.cos()
                })
                .fold(f64::INFINITY, f64::min)
        });
        let kallay_min_slack = rows.into_iter().fold(f64::INFINITY, f64::min);
        ConvexityReport {
            min_curvature,
            max_curvature,
            curvature_pass: min_curvature >= -STRUCTURAL_TOL,
            kallay_min_slack,
            kallay_pass: kallay_min_slack >= -STRUCTURAL_TOL,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport { width: self.validate_width(), convexity: self.validate_convexity() }
    }
}

impl SupportFunction for Shape {
    fn h(&self, theta: f64) -> f64 {
        match &self.rep {
            SupportRep::Fourier(f) => f.h(theta),
            SupportRep::Piecewise(p) => p.h(theta),
        }
    }

    fn h_prime(&self, theta: f64) -> f64 {
        match &self.rep {
            SupportRep::Fourier(f) => f.h_prime(theta),
            SupportRep::Piecewise(p) => p.h_prime(theta),
        }
    }

    fn boundary_point(&self, theta: f64) -> Vec2 {
        match &self.rep {
            SupportRep::Fourier(f) => f.boundary_point(theta),
            SupportRep::Piecewise(p) => p.boundary_point(theta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthReport {
    /// `max |h(θ) + h(θ+π) − 1|` over the grid.
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityReport {
    pub min_curvature: f64,
    pub max_curvature: f64,
    pub curvature_pass: bool,
    /// `min h(θ+φ) + h(θ−φ) − 2h(θ)cos φ` over the sample grid.
    pub kallay_min_slack: f64,
    pub kallay_pass: bool,
}

impl ConvexityReport {
    pub fn pass(&self) -> bool {
        self.curvature_pass && self.kallay_pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub width: WidthReport,
    pub convexity: ConvexityReport,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.width.pass && self.convexity.pass()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn fourier(terms: &[(u32, f64, f64)]) -> FourierWidthFunction {
        FourierWidthFunction::new(terms.iter().map(|&(k, a, b)| Harmonic::new(k, a, b))).unwrap()
    }

    #[test]
    fn even_and_duplicate_harmonics_rejected() {
        assert_eq!(
            FourierWidthFunction::new([Harmonic::new(2, 0.1, 0.0)]),
            Err(Error::EvenHarmonic(2))
        );
        assert_eq!(
            FourierWidthFunction::new([Harmonic::new(0, 0.1, 0.0)]),
            Err(Error::EvenHarmonic(0))
        );
        assert_eq!(
            FourierWidthFunction::new([Harmonic::new(3, 0.1, 0.0), Harmonic::new(3, 0.0, 0.1)]),
            Err(Error::DuplicateHarmonic(3))
        );
        assert!(FourierWidthFunction::new([Harmonic::new(3, f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn terms_sorted_and_zero_terms_dropped() {
        let f = fourier(&[(7, 0.0, 0.1), (1, 0.0, 0.0), (3, 0.2, 0.0)]);
        let ks: Vec<u32> = f.terms().iter().map(|t| t.k).collect();
        assert_eq!(ks, vec![3, 7]);
    }

    #[test]
    fn fourier_derivative_vanishes_for_cosine_at_zero() {
        let f = fourier(&[(3, 0.01, 0.0)]);
        assert_eq!(f.h_prime(0.0), 0.0);
    }

    #[test]
    fn fourier_curvature_at_admissibility_edge() {
        let f = fourier(&[(3, 1.0 / 16.0, 0.0)]);
        assert!(f.radius_of_curvature(0.0).abs() < 1e-15);
    }

    #[test]
    fn combine_merges_harmonics() {
        let f = fourier(&[(3, 0.01, 0.0)]);
        let g = fourier(&[(5, 0.0, 0.02)]);
        let c = f.combine(&g, 0.25);
        assert_eq!(c.terms(), &[Harmonic::new(3, 0.0075, 0.0), Harmonic::new(5, 0.0, 0.005)]);
    }

    #[test]
    fn piecewise_rejects_non_alternating_pieces() {
        let starts: Vec<f64> = (0..6).map(|j| j as f64 * PI / 3.0).collect();
        let modes = vec![PieceMode::Vertex(Vec2::ZERO); 6];
        assert!(matches!(
            PiecewiseArcFunction::from_breakpoints(starts, modes, 1e-9),
            Err(Error::InvalidPieces(_))
        ));
    }

    #[test]
    fn piecewise_rejects_discontinuous_junctions() {
        let tri = shapes::reuleaux_triangle();
        let p = tri.support();
        let mut modes: Vec<PieceMode> = p.pieces().map(|q| q.mode).collect();
        modes[0] = PieceMode::Vertex(modes[0].point() + Vec2::new(1e-6, 0.0));
        assert!(PiecewiseArcFunction::from_breakpoints(p.breakpoints().to_vec(), modes, 1e-9).is_err());
    }

    #[test]
    fn canonical_rotation_starts_at_zero_piece() {
        let tri = shapes::reuleaux_triangle();
        let p = tri.support();
        assert!(p.period_start() <= 0.0);
        assert!(p.piece(0).end > 0.0);
        // Rebuilding from a rotated list lands on the same canonical form.
        let mut starts = p.breakpoints().to_vec();
        let mut modes: Vec<PieceMode> = p.pieces().map(|q| q.mode).collect();
        starts.rotate_left(2);
        let k = starts.len();
        for s in &mut starts[k - 2..] {
            *s += TAU;
        }
        modes.rotate_left(2);
        let q = PiecewiseArcFunction::from_breakpoints(starts, modes, 1e-9).unwrap();
        assert_eq!(q.vertices(), p.vertices());
        for (a, b) in q.breakpoints().iter().zip(p.breakpoints()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_support_values() {
        let tri = shapes::reuleaux_triangle().to_shape();
        let s3 = 3f64.sqrt();
        assert!((tri.eval_h(FRAC_PI_2) - (1.0 - 1.0 / s3)).abs() < 1e-15);
        assert!((tri.eval_h(0.0) - 0.5).abs() < 1e-15);
        assert!(tri.eval_h_prime(FRAC_PI_2).abs() < 1e-15);
        let v = tri.boundary_point(0.0);
        assert!(v.distance(Vec2::new(0.5, 0.5 / s3)) < 1e-15);
    }

    #[test]
    fn triangle_matches_six_branch_table() {
        let s3 = 3f64.sqrt();
        let v1 = Vec2::new(0.5, 0.5 / s3);
        let v2 = Vec2::new(-0.5, 0.5 / s3);
        let v3 = Vec2::new(0.0, -1.0 / s3);
        let table = |t: f64| -> f64 {
            let u = unit_direction(t);
            match (t / (PI / 3.0)).floor() as i32 {
                0 => u.dot(v1),
                1 => 1.0 + u.dot(v3),
                2 => u.dot(v2),
                3 => 1.0 + u.dot(v1),
                4 => u.dot(v3),
                _ => 1.0 + u.dot(v2),
            }
        };
        let tri = shapes::reuleaux_triangle().to_shape();
        for j in 0..600 {
            let t = TAU * (j as f64 + 0.5) / 600.0;
            assert!((tri.eval_h(t) - table(t)).abs() < 1e-14, "theta={t}");
        }
    }

    #[test]
    fn periodicity_of_evaluation() {
        let shapes = [shapes::regular_reuleaux(5).unwrap().to_shape(), shapes::figure_one_shape()];
        for s in &shapes {
            for j in 0..100 {
                let t = -10.0 + 0.2 * j as f64;
                assert!((s.eval_h(t) - s.eval_h(t + TAU)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn piecewise_curvature_values_and_breakpoint_error() {
        let p5 = shapes::regular_reuleaux(5).unwrap().to_shape();
        let pw = p5.as_piecewise().unwrap();
        for piece in pw.pieces() {
            let mid = 0.5 * (piece.start + piece.end);
            let expected = if piece.mode.is_vertex() { 0.0 } else { 1.0 };
            assert_eq!(p5.radius_of_curvature(mid).unwrap(), expected);
            assert!(matches!(
                p5.radius_of_curvature(piece.start),
                Err(Error::BreakpointAmbiguity { .. })
            ));
        }
    }

    #[test]
    fn disk_curvature_and_derivative() {
        let d = shapes::disk(Vec2::ZERO);
        for t in [0.0, 1.0, 2.5, -4.0] {
            assert_eq!(d.radius_of_curvature(t).unwrap(), 0.5);
            assert_eq!(d.eval_h_prime(t), 0.0);
            assert!(d.boundary_point(t).distance(unit_direction(t) * 0.5) < 1e-15);
        }
        assert_eq!(d.eval_h(1.234), 0.5);
    }

    #[test]
    fn width_validation() {
        let d = shapes::disk(Vec2::ZERO);
        let r = d.validate_width();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.pass);
        assert!(shapes::regular_reuleaux(7).unwrap().to_shape().validate_width().pass);
    }

    #[test]
    fn convexity_validation() {
        assert!(shapes::disk(Vec2::ZERO).validate_convexity().pass());
        let bad = Shape::fourier(fourier(&[(3, 0.2, 0.0)]), "bad");
        let report = bad.validate_convexity();
        assert!(!report.pass());
        assert!(!report.curvature_pass && !report.kallay_pass);
        assert!((report.min_curvature - (0.5 - 1.6)).abs() < 1e-12);
        assert!(shapes::figure_one_shape().validate_convexity().pass());
        assert!(shapes::regular_reuleaux(9).unwrap().to_shape().validate().pass());
    }

    #[test]
    fn parallel_validation_matches_sequential() {
        let s = shapes::figure_one_shape();
        assert_eq!(s.validate_convexity_with(Exec::Sequential), s.validate_convexity_with(Exec::Parallel));
        assert_eq!(s.validate_width_with(Exec::Sequential), s.validate_width_with(Exec::Parallel));
    }
}
