//! Area-decreasing surgery on Reuleaux polygons.
//!
//! Take neighbouring vertices `c, d` at minimal distance and let `q` be the
//! vertex opposite the arc `cd`. The arcs adjacent to `q` run from `a` to `q`
//! (centred at `c`) and from `q` to `b` (centred at `d`). Replacing the arc
//! `cd` with arcs `cp ∪ pd` and the arcs `aq ∪ qb` with the single arc `ab`
//! centred at `p`, where `p` is the point at unit distance from `a` and `b` on
//! the side of `cd`, yields a Reuleaux polygon with two fewer vertices and no
//! larger area.

use crate::geometry::{unit_circle_intersection, Vec2};
use crate::measures::area;
use crate::shapes::ReuleauxPolygon;
use crate::{Error, Result};

/// Edge lengths within this of the minimum count as ties.
pub const TIE_TOL: f64 = 1e-12;
/// Slack on `|c − d| ≤ |a − b|`.
pub const LEMMA_TOL: f64 = 1e-9;
/// Slack on `A(P′) ≤ A(P)`.
pub const AREA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurgeryContext {
    /// Indices of `c` and `d` in the input polygon.
    pub edge: (usize, usize),
    pub c: Vec2,
    pub d: Vec2,
    pub q: Vec2,
    pub a: Vec2,
    pub b: Vec2,
    pub p: Vec2,
    /// Points on segment `pq` with `|s − p| = |r − q| = 1`.
    pub s: Vec2,
    pub r: Vec2,
}

impl SurgeryContext {
    /// Worst deviation from the unit-distance relations of the context.
    pub fn invariant_violation(&self) -> f64 {
        [
            self.a.distance(self.c),
            self.q.distance(self.c),
            self.q.distance(self.d),
            self.b.distance(self.d),
            self.b.distance(self.p),
            self.a.distance(self.p),
            self.s.distance(self.p),
            self.r.distance(self.q),
        ]
        .into_iter()
        .map(|d| (d - 1.0).abs())
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DescentTrace {
    pub polygons: Vec<ReuleauxPolygon>,
    pub areas: Vec<f64>,
    pub contexts: Vec<SurgeryContext>,
}

impl DescentTrace {
    pub fn steps(&self) -> usize {
        self.contexts.len()
    }

    pub fn last(&self) -> &ReuleauxPolygon {
        self.polygons.last().expect("a trace always holds its starting polygon")
    }
}

/// Adjacent pair `(i, i + 1 mod N)` with the smallest separation; ties go to
/// the smallest `i`.
pub fn find_minimal_edge(poly: &ReuleauxPolygon) -> Result<(usize, usize)> {
    let n = poly.len();
    if n < 5 {
        return Err(Error::TooFewVertices(n));
    }
    let lengths: Vec<f64> = (0..n).map(|i| poly.vertex(i).distance(poly.vertex(i + 1))).collect();
    let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    let i = lengths.iter().position(|&l| l <= min + TIE_TOL).unwrap_or(0);
    Ok((i, (i + 1) % n))
}

pub fn build_surgery(poly: &ReuleauxPolygon, edge: (usize, usize)) -> Result<SurgeryContext> {
    let n = poly.len();
    if n < 5 {
        return Err(Error::TooFewVertices(n));
    }
    let (i, j) = edge;
    if j != (i + 1) % n {
        return Err(Error::InvalidArgument(format!("({i}, {j}) is not a boundary edge")));
    }
    let m = (n - 1) / 2;
    let c = poly.vertex(i);
    let d = poly.vertex(i + 1);
    let q = poly.vertex(poly.arc_center_index(i));
    // Arc a→q is centred at c, arc q→b at d.
    let a = poly.vertex(i + m);
    let b = poly.vertex(i + m + 2);

    let (l, r) = unit_circle_intersection(a, b).map_err(|e| Error::GeometryFailure(e.to_string()))?;
    let bisector = (c - q) + (d - q);
    let arc_mid = q + bisector * (1.0 / bisector.norm());
    let p = if l.distance(arc_mid) <= r.distance(arc_mid) { l } else { r };

    let pq = q - p;
    let len = pq.norm();
    if !(len > 0.0) {
        return Err(Error::GeometryFailure("new vertex coincides with q".into()));
    }
    let dir = pq * (1.0 / len);
    Ok(SurgeryContext { edge, c, d, q, a, b, p, s: p + dir, r: q - dir })
}

/// `|c − d| ≤ |a − b|` up to [`LEMMA_TOL`].
pub fn check_distance_lemma(ctx: &SurgeryContext) -> bool {
    ctx.c.distance(ctx.d) <= ctx.a.distance(ctx.b) + LEMMA_TOL
}

/// One surgery step: `c`, `d` and `q` leave, `p` enters.
pub fn reduce_once(poly: &ReuleauxPolygon) -> Result<(ReuleauxPolygon, SurgeryContext)> {
    let edge = find_minimal_edge(poly)?;
    let ctx = build_surgery(poly, edge)?;
    if !check_distance_lemma(&ctx) {
        return Err(Error::GeometryFailure(format!(
            "minimal edge {:?} violates |c-d| <= |a-b|: {} > {}",
            edge,
            ctx.c.distance(ctx.d),
            ctx.a.distance(ctx.b)
        )));
    }
    let n = poly.len();
    let q_index = poly.arc_center_index(edge.0);
    let mut vertices = Vec::with_capacity(n - 2);
    for k in 0..n {
        if k == edge.0 {
            vertices.push(ctx.p);
        } else if k != edge.1 && k != q_index {
            vertices.push(poly.vertex(k));
        }
    }
    let reduced = ReuleauxPolygon::from_vertices(vertices)?;
    let (before, after) = (area(&poly.to_shape()), area(&reduced.to_shape()));
    if after > before + AREA_TOL {
        return Err(Error::GeometryFailure(format!("surgery increased area: {before} -> {after}")));
    }
    Ok((reduced, ctx))
}

/// Repeats [`reduce_once`] until a triangle remains.
pub fn descend_to_triangle(poly: &ReuleauxPolygon) -> Result<DescentTrace> {
    let mut trace = DescentTrace {
        polygons: vec![poly.clone()],
        areas: vec![area(&poly.to_shape())],
        contexts: Vec::new(),
    };
    while trace.last().len() > 3 {
        let (next, ctx) = reduce_once(trace.last())?;
        trace.areas.push(area(&next.to_shape()));
        trace.polygons.push(next);
        trace.contexts.push(ctx);
    }
    Ok(trace)
}
