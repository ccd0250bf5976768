//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use mdt_core::geom::{Edge, Point};

/// All-pairs shortest paths in f64.
pub fn floyd_warshall(points: &[Point], edges: &[Edge]) -> Vec<f64> {
    let n = points.len();
    let mut d = vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for e in edges {
        let w = points[e.u()].dist(&points[e.v()]);
        d[e.u() * n + e.v()] = w;
        d[e.v() * n + e.u()] = w;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let v = dik + d[k * n + j];
                if v < d[i * n + j] {
                    d[i * n + j] = v;
                }
            }
        }
    }
    d
}

pub fn dilation_f64(points: &[Point], edges: &[Edge]) -> f64 {
    let n = points.len();
    let d = floyd_warshall(points, edges);
    let mut best = 1.0f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max(d[i * n + j] / points[i].dist(&points[j]));
        }
    }
    best
}

fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    use mdt_core::geom::{orientation, Orientation};
    match orientation(a, b, c) {
        Orientation::Ccw => 1,
        Orientation::Cw => -1,
        Orientation::Collinear => 0,
    }
}

fn strictly_between(a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, c) == 0
        && c.x >= a.x.min(b.x)
        && c.x <= a.x.max(b.x)
        && c.y >= a.y.min(b.y)
        && c.y <= a.y.max(b.y)
        && c != a
        && c != b
}

/// Proper crossing or overlap of two segments without a shared endpoint.
fn conflict(points: &[Point], e: Edge, f: Edge) -> bool {
    if e.has(f.u()) || e.has(f.v()) {
        return false;
    }
    let (a, b, c, d) = (&points[e.u()], &points[e.v()], &points[f.u()], &points[f.v()]);
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    strictly_between(a, b, c) || strictly_between(a, b, d) || strictly_between(c, d, a) || strictly_between(c, d, b)
}

/// Segments between input points that contain no other input point.
pub fn valid_edges(points: &[Point]) -> Vec<Edge> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !(0..n).any(|k| strictly_between(&points[i], &points[j], &points[k])) {
                out.push(Edge::new(i, j));
            }
        }
    }
    out
}

/// Every plane triangulation, as sorted edge lists: the maximal
/// non-crossing subsets of the valid segments.
pub fn all_triangulations(points: &[Point]) -> Vec<Vec<Edge>> {
    let edges = valid_edges(points);
    let m = edges.len();
    let mut clash = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            clash[i][j] = conflict(points, edges[i], edges[j]);
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(k: usize, edges: &[Edge], clash: &[Vec<bool>], chosen: &mut Vec<usize>, out: &mut Vec<Vec<Edge>>) {
        if k == edges.len() {
            // Maximal: every unchosen edge clashes with a chosen one.
            let maximal = (0..edges.len())
                .filter(|i| !chosen.contains(i))
                .all(|i| chosen.iter().any(|&c| clash[i][c]));
            if maximal {
                out.push(chosen.iter().map(|&i| edges[i]).collect());
            }
            return;
        }
        if chosen.iter().all(|&c| !clash[k][c]) {
            chosen.push(k);
            rec(k + 1, edges, clash, chosen, out);
            chosen.pop();
            // Skipping k only helps if something chosen later will block it.
            if (k + 1..edges.len()).any(|j| clash[k][j]) {
                rec(k + 1, edges, clash, chosen, out);
            }
        } else {
            rec(k + 1, edges, clash, chosen, out);
        }
    }
    rec(0, &edges, &clash, &mut chosen, &mut out);
    out
}
