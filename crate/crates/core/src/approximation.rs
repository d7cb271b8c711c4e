//! Approximation of a constant-width shape by Reuleaux polygons in the `C¹`
//! norm.
//!
//! The construction first strictifies `h` to `h_δ = (h + δ)/(1 + 2δ)`, which
//! bounds the radius of curvature away from zero and makes the boundary map
//! `γ` injective. It then samples `γ` at `θ_i = iπ/n`, `i = 0..=n`, replaces
//! the boundary between consecutive samples by a unit arc centred at `z_i`,
//! and fills the opposite side with the vertices `z_i`.
//!
//! The error budget is split evenly: strictification costs at most `ε/2` in
//! both `h` and `h′`, and `π/n ≤ ε/2` bounds the polygonization error.

use std::f64::consts::{PI, TAU};

use crate::geometry::{unit_circle_intersection, wrap_pi, Vec2};
use crate::par::{grid_angle, Exec};
use crate::shapes::{fourier_projection, ReuleauxPolygon};
use crate::support::{PieceMode, Shape, SupportFunction, SupportRep};
use crate::{Error, Result};

/// Harmonic cutoff when a piecewise shape is strictified into Fourier form.
pub const STRICTIFY_K_MAX: u32 = 255;
/// Grid on which approximation errors are measured.
pub const ERROR_GRID: usize = 16_384;
/// Pieces shorter than this (radians) are dropped during assembly.
pub const MIN_PIECE: f64 = 1e-10;
/// Slack allowed on `θ_{i-1} ≤ φ_i ≤ ψ_i ≤ θ_i` before clamping.
pub const ANGLE_TOL: f64 = 1e-9;
const MERGE_TOL: f64 = 1e-9;

/// `(h + δ)/(1 + 2δ)` as a [`Shape`].
///
/// Piecewise inputs are projected onto odd harmonics up to
/// [`STRICTIFY_K_MAX`] first. [`build_plan`] does not go through this; it
/// uses the exact [`Strictified`] view instead.
pub fn strictify(shape: &Shape, delta: f64) -> Result<Shape> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let scale = 1.0 / (1.0 + 2.0 * delta);
    let f = match &shape.rep {
        SupportRep::Fourier(f) => f.scaled(scale),
        SupportRep::Piecewise(p) => fourier_projection(p, STRICTIFY_K_MAX).function.scaled(scale),
    };
    Ok(Shape::fourier(f, format!("strictified {}", shape.label)))
}

/// Exact strictification of any support function, evaluated lazily.
#[derive(Debug, Clone, Copy)]
pub struct Strictified<'a, S: ?Sized> {
    pub base: &'a S,
    pub delta: f64,
}

impl<'a, S: SupportFunction + ?Sized> Strictified<'a, S> {
    pub fn new(base: &'a S, delta: f64) -> Self {
        Strictified { base, delta }
    }

    fn scale(&self) -> f64 {
        1.0 / (1.0 + 2.0 * self.delta)
    }
}

impl Strictified<'_, Shape> {
    /// `(h″ + h + δ)/(1 + 2δ)`, which lies in `[δ/(1+2δ), (1+δ)/(1+2δ)]`.
    pub fn radius_of_curvature(&self, theta: f64) -> Result<f64> {
        Ok((self.base.radius_of_curvature(theta)? + self.delta) * self.scale())
    }
}

impl<S: SupportFunction + ?Sized> SupportFunction for Strictified<'_, S> {
    fn h(&self, theta: f64) -> f64 {
        (self.base.h(theta) + self.delta) * self.scale()
    }

    fn h_prime(&self, theta: f64) -> f64 {
        self.base.h_prime(theta) * self.scale()
    }

    fn boundary_point(&self, theta: f64) -> Vec2 {
        (self.base.boundary_point(theta) + crate::unit_direction(theta) * self.delta) * self.scale()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    pub strictification: f64,
    pub polygonization: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationPlan {
    /// The shape being approximated; errors are measured against it.
    pub source: Shape,
    pub eps: f64,
    pub delta: f64,
    pub n: usize,
    /// `θ_i = iπ/n`, `i = 0..=n`.
    pub thetas: Vec<f64>,
    /// `γ_δ(θ_i)` of the strictified shape.
    pub gammas: Vec<Vec2>,
    /// `z_i`, `i = 1..=n`, stored at index `i - 1`. Same for `phis`, `psis`.
    pub centers: Vec<Vec2>,
    pub phis: Vec<f64>,
    pub psis: Vec<f64>,
    pub eps_budget: ErrorBudget,
}

impl ApproximationPlan {
    /// Worst violation of the plan invariants: angle ordering, unit distance
    /// of each centre to its two samples, and the antipodal side rule.
    pub fn invariant_violation(&self) -> f64 {
        let strict = Strictified::new(&self.source, self.delta);
        (1..=self.n)
            .map(|i| {
                let z = self.centers[i - 1];
                let (phi, psi) = (self.phis[i - 1], self.psis[i - 1]);
                let (t0, t1) = (self.thetas[i - 1], self.thetas[i]);
                let order = [t0 - phi, phi - psi, psi - t1].into_iter().fold(0.0, f64::max);
                let unit = (z.distance(self.gammas[i]) - 1.0)
                    .abs()
                    .max((z.distance(self.gammas[i - 1]) - 1.0).abs());
                let side = (z.distance(strict.boundary_point(t1 + PI)) - 1.0)
                    .max(z.distance(strict.boundary_point(t0 + PI)) - 1.0)
                    .max(0.0);
                order.max(unit).max(side)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    pub polygon: ReuleauxPolygon,
    pub plan: ApproximationPlan,
    /// `sup |h − h_ε|` over [`ERROR_GRID`] points, against the original shape.
    pub sup_h_error: f64,
    pub sup_h_prime_error: f64,
}

fn grid_sup(exec: Exec, f: impl Fn(f64) -> f64 + Sync + Send) -> f64 {
    exec.max(ERROR_GRID, |j| f(grid_angle(j, ERROR_GRID)).abs())
}

/// Strictification parameter that keeps both `C¹` error terms within `budget`.
fn choose_delta(shape: &Shape, budget: f64, exec: Exec) -> f64 {
    let step = TAU / ERROR_GRID as f64;
    let sup_h = grid_sup(exec, |t| shape.h(t));
    let sup_dh = grid_sup(exec, |t| shape.h_prime(t));
    // Grid suprema, widened by a Lipschitz bound over half a grid step:
    // |h′| bounds the slope of h, and |h″| ≤ 1 + |h| bounds that of h′.
    let sup_dev = grid_sup(exec, |t| 2.0 * shape.h(t) - 1.0) + sup_dh * step;
    let sup_dh = sup_dh + (1.0 + sup_h) * step * 0.5;
    // δ/(1+2δ)·sup|2h−1| ≤ budget and 2δ/(1+2δ)·sup|h′| ≤ budget.
    let t = (budget / sup_dev).min(budget / (2.0 * sup_dh)).min(0.25);
    t / (1.0 - 2.0 * t)
}

/// Centre `z` and junction angles `(φ, ψ)` for the arc between samples
/// `i - 1` and `i`.
fn solve_arc(
    strict: &Strictified<'_, Shape>,
    t0: f64,
    t1: f64,
    g0: Vec2,
    g1: Vec2,
) -> Result<(Vec2, f64, f64)> {
    let (l, r) = unit_circle_intersection(g1, g0)?;
    let far = |z: Vec2| {
        z.distance(strict.boundary_point(t1 + PI)).max(z.distance(strict.boundary_point(t0 + PI)))
    };
    let z = if far(l) <= far(r) { l } else { r };
    let phi = t0 + wrap_pi((g0 - z).angle() - t0);
    let psi = t1 + wrap_pi((g1 - z).angle() - t1);
    if phi < t0 - ANGLE_TOL || psi > t1 + ANGLE_TOL || phi > psi + ANGLE_TOL {
        return Err(Error::GeometryFailure(format!(
            "junction angles out of order on [{t0}, {t1}]: phi={phi}, psi={psi}"
        )));
    }
    let phi = phi.clamp(t0, t1);
    let psi = psi.clamp(phi, t1);
    Ok((z, phi, psi))
}

pub fn build_plan(shape: &Shape, eps: f64) -> Result<ApproximationPlan> {
    build_plan_with(shape, eps, Exec::default())
}

pub fn build_plan_with(shape: &Shape, eps: f64, exec: Exec) -> Result<ApproximationPlan> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::EpsOutOfRange(eps));
    }
    let budget = ErrorBudget { strictification: 0.5 * eps, polygonization: 0.5 * eps };
    let delta = choose_delta(shape, budget.strictification, exec);
    let n = (TAU / eps).ceil() as usize;
    let strict = Strictified::new(shape, delta);
    let thetas: Vec<f64> = (0..=n).map(|i| PI * i as f64 / n as f64).collect();
    let gammas: Vec<Vec2> = thetas.iter().map(|&t| strict.boundary_point(t)).collect();

    let arcs = exec.map(n, |j| solve_arc(&strict, thetas[j], thetas[j + 1], gammas[j], gammas[j + 1]));
    let arcs = arcs.into_iter().collect::<Result<Vec<_>>>()?;
    let (mut centers, mut phis, mut psis) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (z, phi, psi) in arcs {
        centers.push(z);
        phis.push(phi);
        psis.push(psi);
    }
    Ok(ApproximationPlan {
        source: shape.clone(),
        eps,
        delta,
        n,
        thetas,
        gammas,
        centers,
        phis,
        psis,
        eps_budget: budget,
    })
}

/// Pieces of `h_ε` over `[0, 2π)` as `(start, mode)`: the three-branch table
/// on `[0, π]` followed by its antipodal copy.
fn raw_pieces(plan: &ApproximationPlan) -> Vec<(f64, PieceMode)> {
    let mut half = Vec::with_capacity(3 * plan.n);
    for i in 1..=plan.n {
        half.push((plan.thetas[i - 1], PieceMode::Vertex(plan.gammas[i - 1])));
        half.push((plan.phis[i - 1], PieceMode::Arc(plan.centers[i - 1])));
        half.push((plan.psis[i - 1], PieceMode::Vertex(plan.gammas[i])));
    }
    let mirrored: Vec<(f64, PieceMode)> = half.iter().map(|&(t, m)| (t + PI, m.antipode())).collect();
    half.extend(mirrored);
    half
}

fn same_piece(a: PieceMode, b: PieceMode) -> bool {
    a.is_vertex() == b.is_vertex() && a.point().distance(b.point()) <= MERGE_TOL
}

/// Drops near-empty pieces, merges repeated ones and returns the vertex cycle.
fn vertex_cycle(pieces: &[(f64, PieceMode)]) -> Result<Vec<Vec2>> {
    let n = pieces.len();
    let kept: Vec<PieceMode> = (0..n)
        .filter(|&j| {
            let end = if j + 1 < n { pieces[j + 1].0 } else { pieces[0].0 + TAU };
            end - pieces[j].0 >= MIN_PIECE
        })
        .map(|j| pieces[j].1)
        .collect();
    let mut merged: Vec<PieceMode> = Vec::with_capacity(kept.len());
    for m in kept {
        if merged.last().is_none_or(|&last| !same_piece(last, m)) {
            merged.push(m);
        }
    }
    while merged.len() > 1 && same_piece(merged[0], merged[merged.len() - 1]) {
        merged.pop();
    }
    let k = merged.len();
    if let Some(j) = (0..k).find(|&j| merged[j].is_vertex() == merged[(j + 1) % k].is_vertex()) {
        return Err(Error::GeometryFailure(format!(
            "pieces {j} and {} do not alternate after merging",
            (j + 1) % k
        )));
    }
    let vertices: Vec<Vec2> = merged.iter().filter(|m| m.is_vertex()).map(|m| m.point()).collect();
    if vertices.len() < 3 {
        return Err(Error::AssemblyDegenerate { vertices: vertices.len() });
    }
    Ok(vertices)
}

pub fn assemble(plan: ApproximationPlan) -> Result<ApproximationResult> {
    assemble_with(plan, Exec::default())
}

pub fn assemble_with(plan: ApproximationPlan, exec: Exec) -> Result<ApproximationResult> {
    let vertices = vertex_cycle(&raw_pieces(&plan))?;
    let polygon = ReuleauxPolygon::from_vertices(vertices)?;
    let source = &plan.source;
    let approx = polygon.support();
    let errors = exec.map(ERROR_GRID, |j| {
        let t = grid_angle(j, ERROR_GRID);
        ((source.h(t) - approx.h(t)).abs(), (source.h_prime(t) - approx.h_prime(t)).abs())
    });
    let (sup_h_error, sup_h_prime_error) =
        errors.into_iter().fold((0.0, 0.0), |(a, b), (x, y)| (f64::max(a, x), f64::max(b, y)));
    Ok(ApproximationResult { polygon, plan, sup_h_error, sup_h_prime_error })
}

/// Reuleaux polygon within `eps` of `shape` in both `h` and `h′`.
pub fn approximate(shape: &Shape, eps: f64) -> Result<ApproximationResult> {
    assemble(build_plan(shape, eps)?)
}
