//! Crossing computation, certificate elimination, thresholds and lower bounds.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exact::{ExactValue, Interval};
use crate::geom::predicates::segments_cross;
use crate::geom::{
    dist_exact, dist_interval, sq_dist_exact, triangulation_edge_count, violates_ellipse_property_exact, Edge, Point,
};
use crate::par;

/// Candidate edges with their mutual crossings and thresholds.
#[derive(Clone, Debug)]
pub struct CandidateGraph {
    pub edges: Vec<Edge>,
    /// `crossings[e]` lists the indices of the candidates crossing `edges[e]`, sorted.
    pub crossings: Vec<Vec<u32>>,
    /// Enclosure of the threshold of each edge.
    pub thresholds: Vec<Interval>,
    /// Number of enumerated edges removed by elimination.
    pub eliminated: usize,
}

impl CandidateGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges crossed by no other candidate.
    pub fn certain_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_empty()).count()
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }
}

/// All pairs `(i, j)`, `i < j`, of crossing segments, sorted.
pub fn crossing_pairs(points: &[Point], edges: &[Edge]) -> Vec<(u32, u32)> {
    let span = |e: &Edge| {
        let (a, b) = (points[e.u()], points[e.v()]);
        (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
    };
    let spans: Vec<_> = edges.iter().map(span).collect();
    let mut order: Vec<u32> = (0..edges.len() as u32).collect();
    order.sort_by(|&a, &b| spans[a as usize].0.total_cmp(&spans[b as usize].0));

    // Sweep over x to form the groups of candidates; the orientation tests
    // then run in parallel.
    let mut active: Vec<u32> = Vec::new();
    let mut overlaps: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    for &i in &order {
        let si = spans[i as usize];
        active.retain(|&j| spans[j as usize].1 >= si.0);
        for &j in &active {
            let sj = spans[j as usize];
            if sj.2 <= si.3 && si.2 <= sj.3 {
                overlaps[i as usize].push(j);
            }
        }
        active.push(i);
    }
    let per = par::map_indices(edges.len(), |i| {
        let e = edges[i];
        let (a, b) = (&points[e.u()], &points[e.v()]);
        let mut out: Vec<(u32, u32)> = overlaps[i]
            .iter()
            .filter(|&&j| {
                let f = edges[j as usize];
                !(e.has(f.u()) || e.has(f.v())) && segments_cross(a, b, &points[f.u()], &points[f.v()])
            })
            .map(|&j| ((i as u32).min(j), (i as u32).max(j)))
            .collect();
        out.sort_unstable();
        out
    });
    let mut all: Vec<(u32, u32)> = per.into_iter().flatten().collect();
    all.sort_unstable();
    all
}

/// Whether `f` is an exclusion certificate for `e` under the bound `rho`.
pub fn excludes(points: &[Point], f: Edge, e: Edge, rho: f64) -> bool {
    violates_ellipse_property_exact(&points[e.u()], &points[e.v()], &points[f.u()], &points[f.v()], rho)
}

/// Removes every candidate excluded by a crossing candidate, then computes
/// crossings and thresholds of the survivors.
///
/// A certificate only depends on the point set, so one pass reaches the
/// fixpoint.
pub fn postprocess(points: &[Point], edges: Vec<Edge>, rho: f64) -> CandidateGraph {
    let pairs = crossing_pairs(points, &edges);
    let mut dead = vec![false; edges.len()];
    if rho.is_finite() {
        let verdicts = par::map_indices(pairs.len(), |k| {
            let (i, j) = pairs[k];
            let (ei, ej) = (edges[i as usize], edges[j as usize]);
            (excludes(points, ej, ei, rho), excludes(points, ei, ej, rho))
        });
        for (&(i, j), (di, dj)) in pairs.iter().zip(verdicts) {
            dead[i as usize] |= di;
            dead[j as usize] |= dj;
        }
    }
    let mut remap = vec![u32::MAX; edges.len()];
    let mut kept = Vec::new();
    for (k, e) in edges.iter().enumerate() {
        if !dead[k] {
            remap[k] = kept.len() as u32;
            kept.push(*e);
        }
    }
    let mut crossings = vec![Vec::new(); kept.len()];
    for &(i, j) in &pairs {
        let (a, b) = (remap[i as usize], remap[j as usize]);
        if a != u32::MAX && b != u32::MAX {
            crossings[a as usize].push(b);
            crossings[b as usize].push(a);
        }
    }
    for c in &mut crossings {
        c.sort_unstable();
    }
    let thresholds = par::map_indices(kept.len(), |k| {
        threshold(points, kept[k], crossings[k].iter().map(|&j| kept[j as usize]))
    });
    CandidateGraph {
        eliminated: edges.len() - kept.len(),
        edges: kept,
        crossings,
        thresholds,
    }
}

/// Enclosure of `min(d(l,s) + d(s,r), d(l,t) + d(t,r)) / d(l,r)`.
pub fn min_detour_ratio(points: &[Point], e: Edge, f: Edge) -> Interval {
    let (s, t) = (&points[e.u()], &points[e.v()]);
    let (l, r) = (&points[f.u()], &points[f.v()]);
    let ds = dist_interval(l, s) + dist_interval(s, r);
    let dt = dist_interval(l, t) + dist_interval(t, r);
    ds.min(dt) / dist_interval(l, r)
}

/// Enclosure of the threshold of `e` given its crossing edges; `[1, 1]` if none.
pub fn threshold(points: &[Point], e: Edge, crossers: impl Iterator<Item = Edge>) -> Interval {
    crossers.fold(Interval::ONE, |acc, f| acc.max(min_detour_ratio(points, e, f)))
}

/// Whether the threshold of `e` is provably at least `bound`, deciding
/// undecided crossers exactly. Equality counts as at least.
pub fn threshold_at_least(points: &[Point], e: Edge, crossers: impl Iterator<Item = Edge>, bound: &ExactValue) -> bool {
    let b = bound.interval();
    let mut undecided = Vec::new();
    for f in crossers {
        let m = min_detour_ratio(points, e, f);
        if m.lo() >= b.hi() {
            return true;
        }
        if m.hi() >= b.lo() {
            undecided.push(f);
        }
    }
    undecided.into_iter().any(|f| {
        let (l, r) = (&points[f.u()], &points[f.v()]);
        let rhs = bound.times_sqrt(&sq_dist_exact(l, r));
        [e.u(), e.v()].iter().all(|&x| {
            let p = &points[x];
            let detour = dist_exact(l, p) + dist_exact(p, r);
            crate::exact::compare_sqrt_sums(&detour, &rhs) != Ordering::Less
        })
    })
}

/// Lower bounds on the dilation of any triangulation using only candidates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBounds {
    /// Max over edges of the smallest threshold among the edge and its crossers.
    pub per_edge: f64,
    /// Smallest threshold that a full edge set must reach.
    pub kth: f64,
    /// Bottleneck threshold of a spanning tree.
    pub bottleneck: f64,
}

impl LowerBounds {
    pub fn best(&self) -> f64 {
        self.per_edge.max(self.kth).max(self.bottleneck)
    }

    /// Bound valid for all triangulations, given the enclosure of an initial
    /// dilation whose triangulation justified the candidate set.
    pub fn combined(&self, initial: Interval) -> f64 {
        initial.lo().min(self.best()).max(1.0)
    }
}

pub fn lower_bounds(points: &[Point], graph: &CandidateGraph) -> LowerBounds {
    let theta: Vec<f64> = graph.thresholds.iter().map(|t| t.lo()).collect();
    let per_edge = (0..graph.len())
        .map(|e| {
            graph.crossings[e]
                .iter()
                .fold(theta[e], |m, &f| m.min(theta[f as usize]))
        })
        .fold(1.0f64, f64::max);

    let g = triangulation_edge_count(points);
    let mut sorted = theta.clone();
    sorted.sort_by(f64::total_cmp);
    let kth = if sorted.len() < g {
        f64::INFINITY
    } else if g == 0 {
        1.0
    } else {
        sorted[g - 1]
    };

    let mut order: Vec<usize> = (0..graph.len()).collect();
    order.sort_by(|&a, &b| theta[a].total_cmp(&theta[b]));
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = points.len();
    let mut bottleneck = f64::INFINITY;
    for e in order {
        let (a, b) = (
            find(&mut parent, graph.edges[e].u()),
            find(&mut parent, graph.edges[e].v()),
        );
        if a != b {
            parent[a] = b;
            components -= 1;
            if components == 1 {
                bottleneck = theta[e];
                break;
            }
        }
    }
    if points.len() <= 1 {
        bottleneck = 1.0;
    }
    LowerBounds {
        per_edge,
        kth,
        bottleneck,
    }
}
