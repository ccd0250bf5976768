//! Quartic reference enumeration.

use std::cmp::Ordering;

use crate::geom::predicates::{on_open_segment, orient, segments_cross};
use crate::geom::{validate_points, violates_ellipse_property_exact, Edge, GeomError, Point};
use crate::par;

/// All edges without interior points that no crossing segment between input
/// points excludes by the ellipse property for `rho`.
pub fn brute_force_candidates(points: &[Point], rho: f64) -> Result<Vec<Edge>, GeomError> {
    validate_points(points)?;
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for s in 0..n {
        for t in s + 1..n {
            pairs.push(Edge::new(s, t));
        }
    }
    let keep = par::map_indices(pairs.len(), |k| survives(points, pairs[k], rho));
    Ok(pairs
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect())
}

fn survives(points: &[Point], e: Edge, rho: f64) -> bool {
    let (s, t) = (&points[e.u()], &points[e.v()]);
    if points.iter().any(|q| on_open_segment(s, t, q)) {
        return false;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, q) in points.iter().enumerate() {
        match orient(s, t, q) {
            Ordering::Greater => left.push(k),
            Ordering::Less => right.push(k),
            Ordering::Equal => {}
        }
    }
    for &l in &left {
        for &r in &right {
            let (pl, pr) = (&points[l], &points[r]);
            if segments_cross(s, t, pl, pr) && violates_ellipse_property_exact(s, t, pl, pr, rho) {
                return false;
            }
        }
    }
    true
}
