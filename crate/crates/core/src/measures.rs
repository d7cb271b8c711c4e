//! Perimeter, area and width.
//!
//! Perimeter and area are computed from closed forms: term-wise for Fourier
//! shapes and by exact per-piece antiderivatives for piecewise shapes.
//! [`area_by_parts`] is an independent trapezoidal evaluation of
//! `½∫(h² − h′²)dθ`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use crate::geometry::Vec2;
use crate::par::{grid_angle, Exec};
use crate::support::{PiecewiseArcFunction, Shape, SupportFunction, SupportRep};
use crate::{Error, Result};

/// Default grid for the quadrature area.
pub const AREA_GRID: usize = 65_536;

/// `∫ u(θ) dθ` over `[t0, t1]`.
fn integral_of_u(t0: f64, t1: f64) -> Vec2 {
    let (s0, c0) = t0.sin_cos();
    let (s1, c1) = t1.sin_cos();
    Vec2::new(s1 - s0, c0 - c1)
}

fn piecewise_perimeter(p: &PiecewiseArcFunction) -> f64 {
    p.pieces()
        .map(|piece| {
            let lin = piece.mode.point().dot(integral_of_u(piece.start, piece.end));
            if piece.mode.is_vertex() {
                lin
            } else {
                piece.len() + lin
            }
        })
        .sum()
}

/// `½ Σ_arcs ∫ (1 + z·u) dθ`: vertex pieces carry zero curvature.
fn piecewise_area(p: &PiecewiseArcFunction) -> f64 {
    0.5 * p
        .pieces()
        .filter(|piece| !piece.mode.is_vertex())
        .map(|piece| piece.len() + piece.mode.point().dot(integral_of_u(piece.start, piece.end)))
        .sum::<f64>()
}

/// `∫₀^{2π} h dθ`, which equals π for every shape of width one.
pub fn perimeter(shape: &Shape) -> f64 {
    match &shape.rep {
        // Every harmonic integrates to zero.
        SupportRep::Fourier(_) => TAU * 0.5,
        SupportRep::Piecewise(p) => piecewise_perimeter(p),
    }
}

/// `½∫ h(h″ + h) dθ`.
///
/// Fourier shapes use `π/4 − (π/2) Σ (k² − 1)(a_k² + b_k²)`.
pub fn area(shape: &Shape) -> f64 {
    match &shape.rep {
        SupportRep::Fourier(f) => {
            let deficit: f64 = f
                .terms()
                .iter()
                .map(|t| ((t.k as f64).powi(2) - 1.0) * (t.a * t.a + t.b * t.b))
                .sum();
            FRAC_PI_4 - FRAC_PI_2 * deficit
        }
        SupportRep::Piecewise(p) => piecewise_area(p),
    }
}

/// Trapezoidal `½∫(h² − h′²)dθ` on `grid` uniform points.
pub fn area_by_parts(shape: &Shape, grid: usize) -> Result<f64> {
    area_by_parts_with(shape, grid, Exec::default())
}

pub fn area_by_parts_with(shape: &Shape, grid: usize, exec: Exec) -> Result<f64> {
    if grid < 64 || !grid.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("grid must be a power of two >= 64, got {grid}")));
    }
    let sum = exec.sum(grid, |j| {
        let t = grid_angle(j, grid);
        let h = shape.h(t);
        let dh = shape.h_prime(t);
        h * h - dh * dh
    });
    Ok(0.5 * sum * TAU / grid as f64)
}

/// `h(θ) + h(θ + π)`.
pub fn width(shape: &Shape, theta: f64) -> f64 {
    shape.width(theta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub perimeter: f64,
    pub area: f64,
    /// Quadrature of `½∫(h² − h′²)`.
    pub area_alt: f64,
    pub area_alt_grid: usize,
    pub min_curvature: f64,
    pub max_curvature: f64,
}

pub fn measure(shape: &Shape, grid: usize) -> Result<MeasureReport> {
    let exec = Exec::default();
    let (min_curvature, max_curvature) = shape.curvature_range(exec);
    Ok(MeasureReport {
        perimeter: perimeter(shape),
        area: area(shape),
        area_alt: area_by_parts_with(shape, grid, exec)?,
        area_alt_grid: grid,
        min_curvature,
        max_curvature,
    })
}

/// `(π/2)(1 − (1 − cos(π/N)) / ((π/N) sin(π/N)))`.
pub fn regular_reuleaux_area(n: usize) -> f64 {
    let t = PI / n as f64;
    FRAC_PI_2 * (1.0 - (1.0 - t.cos()) / (t * t.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{disk, figure_one_shape, regular_reuleaux, reuleaux_triangle};

    /// Independent area of a Reuleaux polygon: vertex polygon plus one
    /// circular segment of radius one per side.
    fn polygon_plus_segments(v: &[Vec2]) -> f64 {
        let n = v.len();
        (0..n)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let alpha = 2.0 * (0.5 * a.distance(b)).asin();
                0.5 * a.cross(b) + 0.5 * (alpha - alpha.sin())
            })
            .sum()
    }

    #[test]
    fn disk_measures() {
        for c in [Vec2::ZERO, Vec2::new(3.0, -4.0)] {
            let d = disk(c);
            assert_eq!(perimeter(&d), PI);
            assert_eq!(area(&d), FRAC_PI_4);
        }
        assert!((area_by_parts(&disk(Vec2::ZERO), 4096).unwrap() - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn translated_disk_area_by_parts() {
        let d = disk(Vec2::new(0.7, -0.2));
        assert!((area_by_parts(&d, 4096).unwrap() - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn regular_area_against_closed_form_and_segments() {
        for n in (3..=21).step_by(2) {
            let p = regular_reuleaux(n).unwrap();
            let a = area(&p.to_shape());
            assert!((a - regular_reuleaux_area(n)).abs() < 1e-12, "n={n}");
            assert!((a - polygon_plus_segments(p.vertices())).abs() < 1e-12, "n={n}");
            assert!((perimeter(&p.to_shape()) - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_reference_values() {
        // Values of the closed form evaluated independently.
        let expected = [
            (3, 0.704_770_923_010_458_1),
            (5, 0.758_497_086_212_630_8),
            (7, 0.771_944_166_429_371_9),
            (21, 0.783_930_106_594_481_8),
        ];
        for (n, v) in expected {
            assert!((regular_reuleaux_area(n) - v).abs() < 1e-15, "n={n}");
        }
        assert!((regular_reuleaux_area(3) - (PI - 3f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_area() {
        let a = area(&reuleaux_triangle().to_shape());
        assert!((a - (PI - 3f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fourier_area_by_parts_exact() {
        let s = figure_one_shape();
        assert!((area_by_parts(&s, 4096).unwrap() - area(&s)).abs() < 1e-12);
    }

    #[test]
    fn heptagon_area_by_parts() {
        let s = regular_reuleaux(7).unwrap().to_shape();
        assert!((area_by_parts(&s, 65_536).unwrap() - area(&s)).abs() < 1e-6);
    }

    #[test]
    fn widths() {
        let t = reuleaux_triangle().to_shape();
        assert!((width(&t, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(width(&disk(Vec2::ZERO), 2.0), 1.0);
    }

    #[test]
    fn grid_must_be_power_of_two() {
        let d = disk(Vec2::ZERO);
        assert!(area_by_parts(&d, 100).is_err());
        assert!(area_by_parts(&d, 32).is_err());
    }

    #[test]
    fn quadrature_is_bit_identical_across_strategies() {
        let s = regular_reuleaux(9).unwrap().to_shape();
        let a = area_by_parts_with(&s, 1 << 14, Exec::Sequential).unwrap();
        let b = area_by_parts_with(&s, 1 << 14, Exec::Parallel).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn report_fields() {
        let r = measure(&regular_reuleaux(5).unwrap().to_shape(), 4096).unwrap();
        assert_eq!((r.min_curvature, r.max_curvature), (0.0, 1.0));
        assert!((r.perimeter - PI).abs() < 1e-12);
    }
}
