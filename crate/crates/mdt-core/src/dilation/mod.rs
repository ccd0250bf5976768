//! Exact dilation, dilation sampling and dilation path separation.

mod dijkstra;
mod graph;
mod separation;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use dijkstra::path_length;
pub use graph::WeightedGraph;
pub use separation::{separate, SeparationError};

use crate::exact::{ExactValue, Interval};
use crate::geom::{dist_interval, sq_dist_exact, Edge, Point};
use crate::par;
use dijkstra::{Mode, Search};

/// The dilation of a graph with a witness pair and path.
#[derive(Clone, Debug)]
pub struct Dilation {
    pub value: ExactValue,
    pub s: usize,
    pub t: usize,
    /// Shortest `s-t` path, `s < t`, starting at `s`.
    pub path: Vec<u32>,
    pub decided: Decided,
}

/// How the maximum was established against its closest competitors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decided {
    /// Every comparison was settled by interval enclosures.
    Interval,
    /// Some comparison needed the exact sqrt-sum comparator.
    Exact,
}

struct Best {
    ratio: Interval,
    t: usize,
    path: Vec<u32>,
    exact: bool,
}

/// Whether candidate `a` ranks above `b`: larger dilation, ties broken by the
/// lexicographically smaller witness path. The second value tells whether
/// exact arithmetic was needed.
fn outranks(points: &[Point], a: (&Interval, &[u32]), b: (&Interval, &[u32])) -> (bool, bool) {
    let (o, exact) = match a.0.certainly_cmp(b.0) {
        Some(o) if o != Ordering::Equal => (o, false),
        _ => (exact_ratio(points, a.1).cmp_exact(&exact_ratio(points, b.1)), true),
    };
    let wins = match o {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1 < b.1,
    };
    (wins, exact)
}

/// Keeps the higher-ranked of `cur` and `cand`.
fn keep_best<T>(points: &[Point], cur: &mut Option<(T, Best)>, cand: (T, Best)) {
    match cur {
        None => *cur = Some(cand),
        Some((_, b)) => {
            let (wins, exact) = outranks(points, (&cand.1.ratio, &cand.1.path), (&b.ratio, &b.path));
            if wins {
                let mut cand = cand;
                cand.1.exact |= exact;
                *cur = Some(cand);
            } else {
                b.exact |= exact;
            }
        }
    }
}

fn exact_ratio(points: &[Point], path: &[u32]) -> ExactValue {
    let s = points[path[0] as usize];
    let t = points[*path.last().expect("non-empty path") as usize];
    ExactValue::ratio(&path_length(points, path), &sq_dist_exact(&s, &t))
}

/// Exact dilation of the graph `(points, edges)`; `None` if it is disconnected.
pub fn exact_dilation(points: &[Point], edges: &[Edge]) -> Option<Dilation> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let g = WeightedGraph::new(n, points, edges, |_| true);
    let per_source = par::map_indices(n - 1, |s| source_dilation(&g, points, s));
    let mut best: Option<(usize, Best)> = None;
    for (s, b) in per_source.into_iter().enumerate() {
        keep_best(points, &mut best, (s, b?));
    }
    let (s, b) = best?;
    Some(Dilation {
        value: exact_ratio(points, &b.path),
        s,
        t: b.t,
        path: b.path,
        decided: if b.exact { Decided::Exact } else { Decided::Interval },
    })
}

/// Largest dilation over pairs `(s, t)` with `t > s`; `None` if some such
/// `t` is unreachable.
fn source_dilation(g: &WeightedGraph, points: &[Point], s: usize) -> Option<Best> {
    let n = points.len();
    let mut search = Search::new(g, points, s, Mode::Exact);
    let mut remaining = n - 1 - s;
    let mut best: Option<((), Best)> = None;
    while remaining > 0 {
        let u = search.next()?;
        search.relax(u, |_, _| true);
        if u <= s {
            continue;
        }
        remaining -= 1;
        let ratio = search.dist[u] / dist_interval(&points[s], &points[u]);
        if let Some((_, b)) = &best {
            if ratio.hi() < b.ratio.lo() {
                continue;
            }
        }
        let path = search.path(u);
        let exact = false;
        keep_best(
            points,
            &mut best,
            (
                (),
                Best {
                    ratio,
                    t: u,
                    path,
                    exact,
                },
            ),
        );
    }
    best.map(|(_, b)| b)
}

/// A pair whose dilation provably reaches the bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub s: usize,
    pub t: usize,
    pub ratio: Interval,
}

/// Sampling limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Vertices settled per source.
    pub expansions: usize,
    pub max_violations: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            expansions: 32,
            max_violations: 8,
        }
    }
}

/// Finds pairs `(s, t)` with dilation at least `bound` by running a few
/// Dijkstra steps from every vertex.
///
/// Returns at most `max_violations` pairs, largest ratios first.
pub fn sample_violations(
    points: &[Point],
    edges: &[Edge],
    bound: &ExactValue,
    config: SamplingConfig,
) -> Vec<Violation> {
    let n = points.len();
    let g = WeightedGraph::new(n, points, edges, |_| true);
    let per_source = par::map_indices(n, |s| {
        let mut search = Search::new(&g, points, s, Mode::Enclosure);
        let mut out = Vec::new();
        for _ in 0..=config.expansions {
            let Some(u) = search.next() else { break };
            search.relax(u, |_, _| true);
            if u == s {
                continue;
            }
            let ratio = search.dist[u] / dist_interval(&points[s], &points[u]);
            // Labels only enclose distances here, so undecided pairs are skipped.
            if ratio.lo() >= bound.interval().hi() {
                out.push(Violation {
                    s: s.min(u),
                    t: s.max(u),
                    ratio,
                });
            }
        }
        out
    });
    let mut all: Vec<Violation> = per_source.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        b.ratio
            .lo()
            .total_cmp(&a.ratio.lo())
            .then(a.s.cmp(&b.s))
            .then(a.t.cmp(&b.t))
    });
    let mut seen = std::collections::HashSet::new();
    all.retain(|v| seen.insert((v.s, v.t)));
    all.truncate(config.max_violations);
    all
}
