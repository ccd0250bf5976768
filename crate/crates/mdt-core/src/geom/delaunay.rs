//! Delaunay and constrained Delaunay triangulations by incremental insertion
//! and edge flipping.
//!
//! Points are inserted in lexicographic order, so each new point lies outside
//! the current hull and only needs to be connected to the visible hull edges.
//! Co-circular ties are resolved as if each point `i` were lifted by an
//! infinitesimal amount decreasing with `i`: of the two diagonals of a
//! co-circular quadrilateral, the one incident to the smallest id wins.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use super::predicates::{incircle, on_open_segment, orient, segments_cross, segments_cross_properly};
use super::{validate_points, Edge, GeomError, Point, Triangulation};

const NONE: u32 = u32::MAX;

pub(crate) struct Mesh<'a> {
    pts: &'a [Point],
    tri: Vec<[u32; 3]>,
    nbr: Vec<[u32; 3]>,
    vtri: Vec<u32>,
    constrained: HashSet<Edge>,
}

#[inline]
fn idx(t: &[u32; 3], v: u32) -> usize {
    if t[0] == v {
        0
    } else if t[1] == v {
        1
    } else {
        debug_assert_eq!(t[2], v);
        2
    }
}

impl<'a> Mesh<'a> {
    pub(crate) fn delaunay(pts: &'a [Point]) -> Result<Self, GeomError> {
        validate_points(pts)?;
        let n = pts.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| pts[a as usize].lex_cmp(&pts[b as usize]).then(a.cmp(&b)));

        let p = |i: u32| &pts[i as usize];
        let k = (2..n)
            .find(|&k| orient(p(order[0]), p(order[1]), p(order[k])) != Ordering::Equal)
            .ok_or(GeomError::AllCollinear)?;

        let mut mesh = Mesh {
            pts,
            tri: Vec::with_capacity(2 * n),
            nbr: Vec::with_capacity(2 * n),
            vtri: vec![NONE; n],
            constrained: HashSet::new(),
        };
        let mut next = vec![NONE; n];
        let mut prev = vec![NONE; n];

        // Fan from the first off-line point over the collinear prefix.
        let apex = order[k];
        let ccw = orient(p(order[0]), p(order[1]), p(apex)) == Ordering::Greater;
        let mut queue = VecDeque::new();
        for i in 0..k - 1 {
            let (u, v) = (order[i], order[i + 1]);
            let t = mesh.tri.len() as u32;
            let verts = if ccw { [u, v, apex] } else { [v, u, apex] };
            mesh.tri.push(verts);
            mesh.nbr.push([NONE; 3]);
            if i > 0 {
                // Shared edge u-apex with the previous fan triangle.
                let prev_t = t - 1;
                let vi = idx(&mesh.tri[t as usize], v);
                mesh.nbr[t as usize][vi] = prev_t;
                let pi = idx(&mesh.tri[prev_t as usize], order[i - 1]);
                mesh.nbr[prev_t as usize][pi] = t;
                queue.push_back(Edge::new(u as usize, apex as usize));
            }
            for w in verts {
                mesh.vtri[w as usize] = t;
            }
        }
        let mut cycle: Vec<u32> = order[..k].to_vec();
        cycle.push(apex);
        if !ccw {
            cycle.reverse();
        }
        for w in 0..cycle.len() {
            let a = cycle[w];
            let b = cycle[(w + 1) % cycle.len()];
            next[a as usize] = b;
            prev[b as usize] = a;
        }
        mesh.legalize(&mut queue);

        let mut last = apex;
        for &q in &order[k + 1..] {
            mesh.insert_outside(q, last, &mut next, &mut prev);
            last = q;
        }
        Ok(mesh)
    }

    fn visible(&self, a: u32, b: u32, q: u32) -> bool {
        let p = |i: u32| &self.pts[i as usize];
        orient(p(a), p(b), p(q)) == Ordering::Less
    }

    fn insert_outside(&mut self, q: u32, last: u32, next: &mut [u32], prev: &mut [u32]) {
        let mut x = last;
        let mut steps = 0usize;
        while !self.visible(x, next[x as usize], q) {
            x = next[x as usize];
            steps += 1;
            assert!(steps <= self.pts.len(), "no visible hull edge");
        }
        let mut s = x;
        while self.visible(prev[s as usize], s, q) {
            s = prev[s as usize];
        }
        let mut e = next[x as usize];
        while self.visible(e, next[e as usize], q) {
            e = next[e as usize];
        }
        let mut chain = vec![s];
        let mut v = s;
        while v != e {
            v = next[v as usize];
            chain.push(v);
        }

        let first = self.tri.len() as u32;
        let m = chain.len() - 1;
        let mut queue = VecDeque::with_capacity(m);
        let inner: Vec<(u32, usize)> = chain
            .windows(2)
            .map(|w| self.find_directed(w[0], w[1]).expect("hull edge has an inner triangle"))
            .collect();
        for (i, &(t_in, k)) in inner.iter().enumerate() {
            let (a, b) = (chain[i], chain[i + 1]);
            let t = first + i as u32;
            // Opposite the hull edge a-b in t_in is the vertex at k + 2.
            let opp = (k + 2) % 3;
            self.nbr[t_in as usize][opp] = t;
            let left = if i > 0 { t - 1 } else { NONE };
            let right = if i + 1 < m { t + 1 } else { NONE };
            self.tri.push([a, q, b]);
            self.nbr.push([right, t_in, left]);
            queue.push_back(Edge::new(a as usize, b as usize));
        }
        self.vtri[q as usize] = first;
        for i in 1..m {
            next[chain[i] as usize] = NONE;
            prev[chain[i] as usize] = NONE;
        }
        next[s as usize] = q;
        prev[q as usize] = s;
        next[q as usize] = e;
        prev[e as usize] = q;
        self.legalize(&mut queue);
    }

    /// Triangles around `u` with the position of `u` in each.
    fn star(&self, u: u32) -> Vec<(u32, usize)> {
        let t0 = self.vtri[u as usize];
        let mut out = Vec::with_capacity(8);
        let mut t = t0;
        loop {
            let k = idx(&self.tri[t as usize], u);
            out.push((t, k));
            let nt = self.nbr[t as usize][(k + 1) % 3];
            if nt == NONE {
                break;
            }
            if nt == t0 {
                return out;
            }
            t = nt;
        }
        let mut t = t0;
        loop {
            let k = idx(&self.tri[t as usize], u);
            let nt = self.nbr[t as usize][(k + 2) % 3];
            if nt == NONE {
                break;
            }
            t = nt;
            out.push((t, idx(&self.tri[t as usize], u)));
        }
        out
    }

    /// Triangle containing the counterclockwise edge `u -> v`, with the index of `u`.
    fn find_directed(&self, u: u32, v: u32) -> Option<(u32, usize)> {
        self.star(u)
            .into_iter()
            .find(|&(t, k)| self.tri[t as usize][(k + 1) % 3] == v)
    }

    /// A triangle containing edge `u-v` and the index of its third vertex.
    fn find_edge(&self, u: u32, v: u32) -> Option<(u32, usize)> {
        for (t, k) in self.star(u) {
            let tr = &self.tri[t as usize];
            if tr[(k + 1) % 3] == v {
                return Some((t, (k + 2) % 3));
            }
            if tr[(k + 2) % 3] == v {
                return Some((t, (k + 1) % 3));
            }
        }
        None
    }

    fn should_flip(&self, t: u32, i: usize) -> bool {
        let o = self.nbr[t as usize][i];
        if o == NONE {
            return false;
        }
        let tr = self.tri[t as usize];
        let (a, b, c) = (tr[i], tr[(i + 1) % 3], tr[(i + 2) % 3]);
        if self.constrained.contains(&Edge::new(b as usize, c as usize)) {
            return false;
        }
        let j = idx(&self.nbr[o as usize], t);
        let d = self.tri[o as usize][j];
        let p = |i: u32| &self.pts[i as usize];
        match incircle(p(a), p(b), p(c), p(d)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.min(d) < b.min(c),
        }
    }

    /// Flips the edge opposite vertex `i` of triangle `t`. Returns the four
    /// outer edges of the quadrilateral.
    fn flip(&mut self, t: u32, i: usize) -> [Edge; 4] {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let o = self.nbr[t as usize][i];
        let tr = self.tri[t as usize];
        let (a, b, c) = (tr[i], tr[i1], tr[i2]);
        let n_ca = self.nbr[t as usize][i1];
        let n_ab = self.nbr[t as usize][i2];
        let j = idx(&self.nbr[o as usize], t);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        let d = self.tri[o as usize][j];
        debug_assert_eq!(self.tri[o as usize][j1], c);
        debug_assert_eq!(self.tri[o as usize][j2], b);
        let n_bd = self.nbr[o as usize][j1];
        let n_dc = self.nbr[o as usize][j2];

        self.tri[t as usize] = [a, b, d];
        self.nbr[t as usize] = [n_bd, o, n_ab];
        self.tri[o as usize] = [a, d, c];
        self.nbr[o as usize] = [n_dc, n_ca, t];
        if n_bd != NONE {
            let k = idx(&self.nbr[n_bd as usize], o);
            self.nbr[n_bd as usize][k] = t;
        }
        if n_ca != NONE {
            let k = idx(&self.nbr[n_ca as usize], t);
            self.nbr[n_ca as usize][k] = o;
        }
        self.vtri[a as usize] = t;
        self.vtri[b as usize] = t;
        self.vtri[d as usize] = t;
        self.vtri[c as usize] = o;
        let e = |x: u32, y: u32| Edge::new(x as usize, y as usize);
        [e(a, b), e(b, d), e(d, c), e(c, a)]
    }

    fn legalize(&mut self, queue: &mut VecDeque<Edge>) {
        while let Some(e) = queue.pop_front() {
            let Some((t, i)) = self.find_edge(e.a, e.b) else {
                continue;
            };
            if self.should_flip(t, i) {
                queue.extend(self.flip(t, i));
            }
        }
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// Forces the segment `a-b` into the mesh, then restores the constrained
    /// Delaunay property around it.
    fn insert_constraint(&mut self, e: Edge) {
        let (a, b) = (e.a, e.b);
        if self.has_edge(a, b) {
            self.constrained.insert(e);
            return;
        }
        let p = |i: u32| self.pts[i as usize];
        let (pa, pb) = (p(a), p(b));
        let mut crossing: VecDeque<Edge> = self
            .edges()
            .into_iter()
            .filter(|f| segments_cross_properly(&pa, &pb, &p(f.a), &p(f.b)))
            .collect();
        let mut created = VecDeque::new();
        let mut stalls = 0usize;
        while let Some(f) = crossing.pop_front() {
            let (t, i) = self.find_edge(f.a, f.b).expect("crossing edge present");
            let o = self.nbr[t as usize][i];
            debug_assert_ne!(o, NONE, "a hull edge cannot cross an inner segment");
            let x = self.tri[t as usize][i];
            let j = idx(&self.nbr[o as usize], t);
            let y = self.tri[o as usize][j];
            if !segments_cross_properly(&p(x), &p(y), &p(f.a), &p(f.b)) {
                crossing.push_back(f);
                stalls += 1;
                // Some crossing edge always has a convex quadrilateral.
                assert!(stalls <= crossing.len() + 1, "constraint insertion stalled");
                continue;
            }
            stalls = 0;
            self.flip(t, i);
            let g = Edge::new(x as usize, y as usize);
            if g != e && segments_cross_properly(&pa, &pb, &p(x), &p(y)) {
                crossing.push_back(g);
            } else if g != e {
                created.push_back(g);
            }
        }
        self.constrained.insert(e);
        self.legalize(&mut created);
    }

    pub(crate) fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.tri.len() * 3 / 2 + 3);
        for (t, (tr, nb)) in self.tri.iter().zip(&self.nbr).enumerate() {
            for k in 0..3 {
                if nb[k] == NONE || nb[k] as usize > t {
                    out.push(Edge::new(tr[(k + 1) % 3] as usize, tr[(k + 2) % 3] as usize));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn triangles(&self) -> &[[u32; 3]] {
        &self.tri
    }

    /// Whether every unconstrained interior edge passes the in-circle test.
    pub(crate) fn is_locally_delaunay(&self) -> bool {
        (0..self.tri.len() as u32).all(|t| (0..3).all(|i| !self.should_flip(t, i)))
    }
}

/// Delaunay triangulation of a valid point set.
pub fn delaunay(points: &[Point]) -> Result<Triangulation, GeomError> {
    let mesh = Mesh::delaunay(points)?;
    Ok(Triangulation::from_sorted_edges(mesh.edges()))
}

/// Delaunay triangulation together with its triangles.
pub fn delaunay_triangles(points: &[Point]) -> Result<Vec<[u32; 3]>, GeomError> {
    Ok(Mesh::delaunay(points)?.triangles().to_vec())
}

/// Checks constraints against each other and against the point set.
pub fn validate_constraints(points: &[Point], constraints: &[Edge]) -> Result<(), GeomError> {
    for (i, e) in constraints.iter().enumerate() {
        if e.v() >= points.len() {
            return Err(GeomError::UnknownPoint(e.v()));
        }
        let (pa, pb) = (&points[e.u()], &points[e.v()]);
        for (k, q) in points.iter().enumerate() {
            if on_open_segment(pa, pb, q) {
                return Err(GeomError::ConstraintThroughPoint(*e, k));
            }
        }
        for f in &constraints[..i] {
            if f == e || f.has(e.u()) || f.has(e.v()) {
                continue;
            }
            if segments_cross(pa, pb, &points[f.u()], &points[f.v()]) {
                return Err(GeomError::CrossingConstraints(*f, *e));
            }
        }
    }
    Ok(())
}

/// Constrained Delaunay triangulation containing every constraint segment.
pub fn constrained_delaunay(points: &[Point], constraints: &[Edge]) -> Result<Triangulation, GeomError> {
    validate_constraints(points, constraints)?;
    let mut mesh = Mesh::delaunay(points)?;
    for &e in constraints {
        mesh.insert_constraint(e);
    }
    debug_assert!(mesh.is_locally_delaunay());
    Ok(Triangulation::from_sorted_edges(mesh.edges()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::predicates::incircle;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn empty_circles(points: &[Point], tris: &[[u32; 3]]) -> bool {
        tris.iter().all(|t| {
            let (a, b, c) = (&points[t[0] as usize], &points[t[1] as usize], &points[t[2] as usize]);
            points.iter().all(|d| incircle(a, b, c, d) != Ordering::Greater)
        })
    }

    #[test]
    fn rectangle_diagonal() {
        let p = pts(&[(0., 0.), (2., 0.), (2., 1.), (0., 1.)]);
        let t = delaunay(&p).unwrap();
        assert_eq!(t.edges().len(), 5);
        // Co-circular: the diagonal through point 0 wins.
        assert!(t.contains(Edge::new(0, 2)));
        t.check(&p).unwrap();
    }

    #[test]
    fn hexagon_with_center() {
        let mut v: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let a = k as f64 * std::f64::consts::PI / 3.0;
                (a.cos(), a.sin())
            })
            .collect();
        v.push((0.0, 0.0));
        let p = pts(&v);
        let tris = delaunay_triangles(&p).unwrap();
        assert_eq!(tris.len(), 6);
        assert!(tris.iter().all(|t| t.contains(&6)));
        assert!(empty_circles(&p, &tris));
    }

    #[test]
    fn collinear_prefix_and_boundary() {
        let p = pts(&[(0., 0.), (0., 1.), (0., 2.), (0., 3.), (1., 1.5), (2., 0.), (-1., 1.)]);
        let t = delaunay(&p).unwrap();
        t.check(&p).unwrap();
        assert!(empty_circles(&p, &delaunay_triangles(&p).unwrap()));
    }

    #[test]
    fn all_collinear_rejected() {
        let p = pts(&[(0., 0.), (1., 1.), (2., 2.)]);
        assert_eq!(delaunay(&p).unwrap_err(), GeomError::AllCollinear);
    }

    #[test]
    fn forced_diagonal() {
        let p = pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let t = constrained_delaunay(&p, &[Edge::new(1, 3)]).unwrap();
        assert!(t.contains(Edge::new(1, 3)));
        assert!(!t.contains(Edge::new(0, 2)));
    }

    #[test]
    fn crossing_constraints_rejected() {
        let p = pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let err = constrained_delaunay(&p, &[Edge::new(1, 3), Edge::new(0, 2)]).unwrap_err();
        assert!(matches!(err, GeomError::CrossingConstraints(..)));
    }
}
