//! Planar vectors, unit directions and the unit-circle intersection solver.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Angle in radians. Operations reduce modulo `2π` where they say so.
pub type Angle = f64;

/// Separation below which two unit circles are treated as coincident, and
/// above `2 - SEPARATION_TOL` as tangent or disjoint.
pub const SEPARATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// Polar angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by +90°.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Vec2 {
    fn from((x, y): (f64, f64)) -> Self {
        Vec2::new(x, y)
    }
}

/// `u(θ) = (cos θ, sin θ)`.
#[inline]
pub fn unit_direction(theta: Angle) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(c, s)
}

/// `u′(θ) = (-sin θ, cos θ)`.
#[inline]
pub fn unit_direction_derivative(theta: Angle) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(-s, c)
}

/// The two points at distance one from both `a` and `b`.
///
/// Returned as `(left, right)` relative to the directed segment `a → b`.
pub fn unit_circle_intersection(a: Vec2, b: Vec2) -> Result<(Vec2, Vec2)> {
    let ab = b - a;
    let d = ab.norm();
    if !(d > SEPARATION_TOL) {
        return Err(Error::DegenerateCircles { a, b });
    }
    if d >= 2.0 - SEPARATION_TOL {
        return Err(Error::NoIntersection { distance: d });
    }
    let mid = (a + b) * 0.5;
    let half = 0.5 * d;
    let offset = ((1.0 - half) * (1.0 + half)).sqrt();
    let normal = ab.perp() * (offset / d);
    Ok((mid + normal, mid - normal))
}

/// Maps `angle` into `(-π, π]`.
pub(crate) fn wrap_pi(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let r = (angle + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}
