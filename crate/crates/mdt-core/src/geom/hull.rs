use std::cmp::Ordering;

use super::predicates::orient;
use super::Point;

fn chain(points: &[Point], keep_collinear: bool) -> Vec<usize> {
    let n = points.len();
    let mut ids: Vec<usize> = (0..n).collect();
    ids.sort_by(|&a, &b| points[a].lex_cmp(&points[b]).then(a.cmp(&b)));
    ids.dedup_by(|a, b| points[*a] == points[*b]);
    if ids.len() < 3 {
        return ids;
    }
    let pops = |o: Ordering| {
        if keep_collinear {
            o == Ordering::Less
        } else {
            o != Ordering::Greater
        }
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &ids {
        while lower.len() >= 2
            && pops(orient(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ))
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in ids.iter().rev() {
        while upper.len() >= 2
            && pops(orient(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ))
        {
            upper.pop();
        }
        upper.push(i);
    }
    if lower.len() == ids.len() && keep_collinear {
        // All points collinear: the chains coincide.
        return lower;
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Counterclockwise hull vertices starting at the lexicographically smallest
/// point. Points in the relative interior of hull edges are not vertices.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    chain(points, false)
}

/// All points on the hull boundary, including those interior to hull edges,
/// in counterclockwise order.
pub fn hull_boundary(points: &[Point]) -> Vec<usize> {
    chain(points, true)
}

/// Number of edges in any triangulation of `points`: `3n - h - 3` where `h`
/// counts every point on the hull boundary.
pub fn triangulation_edge_count(points: &[Point]) -> usize {
    let n = points.len();
    let h = hull_boundary(points).len();
    3 * n - h - 3
}
