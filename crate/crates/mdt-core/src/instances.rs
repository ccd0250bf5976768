//! Synthetic point sets.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;

/// `n` distinct points with integer coordinates drawn uniformly from
/// `[0, side)^2`, deterministic in `seed`.
pub fn random_points(n: usize, side: u32, seed: u64) -> Vec<Point> {
    assert!((n as u64) <= (side as u64) * (side as u64), "grid too small");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.gen_range(0..side);
        let y = rng.gen_range(0..side);
        if seen.insert((x, y)) {
            out.push(Point::new(x as f64, y as f64));
        }
    }
    out
}

/// Default coordinate range of [`random_points`] for generated benchmarks.
pub const DEFAULT_SIDE: u32 = 1_000_000;
