use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::hull::hull_boundary;
use super::predicates::{cmp_polar, orient, segments_cross};
use super::{Edge, Point};

/// A triangulation, stored as its sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {0:?} references a missing point")]
    UnknownPoint(Edge),
    #[error("edges {0:?} and {1:?} leave a point in the same direction")]
    Overlap(Edge, Edge),
    #[error("face through {0:?} is not a counterclockwise triangle")]
    BadFace(Vec<usize>),
    #[error("outer face does not match the convex hull")]
    OuterFace,
    #[error("edges {0:?} and {1:?} cross")]
    Crossing(Edge, Edge),
}

/// Compressed adjacency lists, neighbors sorted by id.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn new(n: usize, edges: &[Edge]) -> Self {
        let mut deg = vec![0u32; n + 1];
        for e in edges {
            deg[e.u() + 1] += 1;
            deg[e.v() + 1] += 1;
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let offsets = deg.clone();
        let mut fill = deg;
        let mut targets = vec![0u32; edges.len() * 2];
        for e in edges {
            targets[fill[e.u()] as usize] = e.b;
            fill[e.u()] += 1;
            targets[fill[e.v()] as usize] = e.a;
            fill[e.v()] += 1;
        }
        for i in 0..n {
            targets[offsets[i] as usize..offsets[i + 1] as usize].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

impl Triangulation {
    /// Wraps an edge list without checking it; see [`Triangulation::check`].
    pub fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Triangulation { edges }
    }

    pub(crate) fn from_sorted_edges(edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Triangulation { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn adjacency(&self, n: usize) -> Adjacency {
        Adjacency::new(n, &self.edges)
    }

    /// Verifies that the edges form a triangulation of `points`: the edge
    /// count matches, no two edges cross, and the set is therefore maximal.
    ///
    /// Runs in `O(m log m)` by tracing the faces of the rotation system: a
    /// planar rotation system whose inner faces are all counterclockwise
    /// triangles and whose outer face is the hull boundary is a straight-line
    /// triangulation.
    pub fn check(&self, points: &[Point]) -> Result<(), TriangulationError> {
        let n = points.len();
        let boundary = hull_boundary(points);
        let expected = 3 * n - boundary.len() - 3;
        if self.edges.len() != expected {
            return Err(TriangulationError::EdgeCount {
                expected,
                found: self.edges.len(),
            });
        }
        if let Some(e) = self.edges.iter().find(|e| e.v() >= n) {
            return Err(TriangulationError::UnknownPoint(*e));
        }
        // Rotation system: neighbors in counterclockwise order.
        let adj = self.adjacency(n);
        let mut rot: Vec<Vec<u32>> = (0..n).map(|v| adj.neighbors(v).to_vec()).collect();
        for (v, list) in rot.iter_mut().enumerate() {
            let o = &points[v];
            list.sort_by(|&a, &b| cmp_polar(o, &points[a as usize], &points[b as usize]));
            for w in 0..list.len() {
                let (a, b) = (list[w], list[(w + 1) % list.len()]);
                if list.len() > 1 && cmp_polar(o, &points[a as usize], &points[b as usize]) == Ordering::Equal {
                    return Err(TriangulationError::Overlap(
                        Edge::new(v, a as usize),
                        Edge::new(v, b as usize),
                    ));
                }
            }
        }
        // Position of each directed edge v -> w within rot[v].
        let pos = |v: usize, w: u32| rot[v].iter().position(|&x| x == w).expect("symmetric adjacency");

        let mut seen: Vec<Vec<bool>> = rot.iter().map(|l| vec![false; l.len()]).collect();
        let mut faces = 0usize;
        let mut outer = None;
        for v in 0..n {
            for k in 0..rot[v].len() {
                if seen[v][k] {
                    continue;
                }
                let mut cyc = Vec::new();
                let (mut a, mut ka) = (v, k);
                loop {
                    seen[a][ka] = true;
                    cyc.push(a);
                    let b = rot[a][ka] as usize;
                    // The face on the left continues with the neighbor of b
                    // just clockwise of a.
                    let kb = pos(b, a as u32);
                    let len = rot[b].len();
                    let kn = (kb + len - 1) % len;
                    a = b;
                    ka = kn;
                    if a == v && ka == k {
                        break;
                    }
                    if cyc.len() > 2 * self.edges.len() {
                        return Err(TriangulationError::BadFace(cyc));
                    }
                }
                faces += 1;
                let is_triangle =
                    cyc.len() == 3 && orient(&points[cyc[0]], &points[cyc[1]], &points[cyc[2]]) == Ordering::Greater;
                if !is_triangle {
                    if outer.is_some() {
                        return Err(TriangulationError::BadFace(cyc));
                    }
                    outer = Some(cyc);
                }
            }
        }
        // Euler: a connected planar map has m - n + 2 faces.
        if faces + n != self.edges.len() + 2 {
            return Err(TriangulationError::BadFace(Vec::new()));
        }
        let outer = outer.ok_or(TriangulationError::OuterFace)?;
        // The outer face runs clockwise along the boundary.
        let mut expect: Vec<usize> = boundary.clone();
        expect.reverse();
        if !same_cycle(&outer, &expect) {
            return Err(TriangulationError::OuterFace);
        }
        Ok(())
    }

    /// Quadratic crossing check, for tests and small inputs.
    pub fn first_crossing(&self, points: &[Point]) -> Option<(Edge, Edge)> {
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if segments_cross(&points[e.u()], &points[e.v()], &points[f.u()], &points[f.v()]) {
                    return Some((*e, *f));
                }
            }
        }
        None
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        None => false,
        Some(off) => (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()]),
    }
}

/// Asserts the triangulation invariants in builds with debug assertions.
#[inline]
pub fn debug_check(t: &Triangulation, points: &[Point]) {
    if cfg!(debug_assertions) {
        if let Err(e) = t.check(points) {
            panic!("invalid triangulation: {e}");
        }
    }
}
