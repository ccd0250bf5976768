//! Clauses separating a triangulation from all triangulations below a bound.

use std::cmp::Ordering;

use thiserror::Error;

use super::dijkstra::{Mode, Search};
use super::graph::WeightedGraph;
use crate::exact::{compare_sqrt_sums, ExactValue};
use crate::geom::{dist_interval, sq_dist_exact, Edge, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum SeparationError {
    /// The triangulation itself has an `s-t` path below the bound.
    #[error("triangulation already has a short path from {s} to {t}")]
    NotViolated { s: usize, t: usize },
}

/// Computes edges `E'`, none of them in the triangulation, such that every
/// `s-t` path in the allowed part of `edges` shorter than `bound * d(s, t)`
/// uses an edge of `E'`.
///
/// `allowed` and `in_tri` are indexed like `edges`. An empty result means no
/// such path exists at all.
pub fn separate(
    points: &[Point],
    edges: &[Edge],
    allowed: &[bool],
    in_tri: &[bool],
    s: usize,
    t: usize,
    bound: &ExactValue,
) -> Result<Vec<usize>, SeparationError> {
    let n = points.len();
    let limit = bound.interval() * dist_interval(&points[s], &points[t]);
    let too_long = |x: crate::exact::Interval| x.lo() >= limit.hi();

    let g = WeightedGraph::new(n, points, edges, |k| allowed[k]);
    let mut fw = Search::new(&g, points, s, Mode::Enclosure);
    let mut near_s = vec![false; n];
    while let Some(u) = fw.next() {
        if too_long(fw.dist[u] + dist_interval(&points[u], &points[t])) {
            continue;
        }
        near_s[u] = true;
        fw.relax(u, |_, _| true);
    }
    if !near_s[t] {
        return Ok(Vec::new());
    }

    let mut bw = Search::new(&g, points, t, Mode::Enclosure);
    let mut useful = vec![false; n];
    while let Some(u) = bw.next() {
        if too_long(fw.dist[u] + bw.dist[u]) {
            continue;
        }
        useful[u] = true;
        bw.relax(u, |v, _| near_s[v]);
    }

    let keep: Vec<bool> = (0..edges.len())
        .map(|k| {
            let (a, b) = (edges[k].u(), edges[k].v());
            if !allowed[k] || !useful[a] || !useful[b] {
                return false;
            }
            let len = dist_interval(&points[a], &points[b]);
            !(too_long(fw.dist[a] + len + bw.dist[b]) && too_long(fw.dist[b] + len + bw.dist[a]))
        })
        .collect();
    let h = WeightedGraph::new(n, points, edges, |k| keep[k]);
    let exact_limit = bound.times_sqrt(&sq_dist_exact(&points[s], &points[t]));
    let mut removed = vec![false; edges.len()];
    let mut out = Vec::new();
    let run = |mode: Mode, removed: &[bool]| {
        let mut sp = Search::new(&h, points, s, mode);
        while let Some(u) = sp.next() {
            if u == t {
                break;
            }
            sp.relax(u, |_, id| !removed[id]);
        }
        sp
    };
    // Whether the current path to t is provably shorter than the limit.
    let is_short = |sp: &Search| {
        let len = sp.plen[t];
        if len.hi() < limit.lo() {
            true
        } else if len.lo() >= limit.hi() {
            false
        } else {
            compare_sqrt_sums(&sp.path_len(t), &exact_limit) == Ordering::Less
        }
    };
    loop {
        let mut sp = run(Mode::Enclosure, &removed);
        if !sp.is_settled(t) || too_long(sp.dist[t]) {
            break;
        }
        if !is_short(&sp) {
            // Only an exact shortest path settles whether a short one exists.
            sp = run(Mode::Exact, &removed);
            if !sp.is_settled(t) || !is_short(&sp) {
                break;
            }
        }
        let Some(k) = sp.path_edges(t).into_iter().find(|&id| !in_tri[id]) else {
            return Err(SeparationError::NotViolated { s, t });
        };
        removed[k] = true;
        out.push(k);
    }
    out.sort_unstable();
    Ok(out)
}
