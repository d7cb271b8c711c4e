#![allow(dead_code)]

use std::f64::consts::TAU;

use constwidth::approximation::approximate;
use constwidth::shapes::{disk, figure_one_shape, minkowski_combine, regular_reuleaux, reuleaux_triangle};
use constwidth::{FourierWidthFunction, Harmonic, Shape, Vec2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_c0de;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Odd harmonics up to 15 plus a random translation. One draw in twenty is a
/// translated disk. Draws are rejected until the curvature stays in `[0, 1]`.
pub fn random_fourier(rng: &mut impl Rng) -> Shape {
    loop {
        let mut terms = vec![Harmonic::new(1, rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))];
        if rng.gen_range(0..20) != 0 {
            let count = rng.gen_range(1..=4);
            let budget = rng.gen_range(0.05..0.7);
            let mut ks: Vec<u32> = (1..=7).map(|j| 2 * j + 1).collect();
            for _ in 0..count {
                let k = ks.swap_remove(rng.gen_range(0..ks.len()));
                let amp = budget / count as f64 / ((k * k - 1) as f64);
                let phase = rng.gen_range(0.0..TAU);
                terms.push(Harmonic::new(k, amp * phase.cos(), amp * phase.sin()));
            }
        }
        let f = FourierWidthFunction::new(terms).expect("odd distinct harmonics");
        let shape = Shape::fourier(f, "random");
        if shape.validate_convexity().pass() {
            return shape;
        }
    }
}

/// Shapes every invariant is checked on.
pub fn corpus() -> Vec<Shape> {
    let mut shapes = vec![disk(Vec2::ZERO), disk(Vec2::new(0.3, -0.7)), reuleaux_triangle().to_shape()];
    for n in (5..=21).step_by(2) {
        shapes.push(regular_reuleaux(n).unwrap().to_shape());
    }
    shapes.push(figure_one_shape());
    let heptagon = regular_reuleaux(7).unwrap().to_shape();
    shapes.push(minkowski_combine(&heptagon, &disk(Vec2::ZERO), 0.2).unwrap());
    shapes.push(approximate(&figure_one_shape(), 0.1).unwrap().polygon.to_shape());
    let mut r = rng(99);
    for _ in 0..4 {
        shapes.push(random_fourier(&mut r));
    }
    shapes
}
