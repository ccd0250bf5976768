//! Dijkstra's algorithm with interval labels.
//!
//! In [`Mode::Exact`] a label encloses the length of a concrete predecessor
//! path, overlapping candidates are compared exactly and equal lengths are
//! broken toward the lexicographically smaller path. The queue is ordered by
//! lower endpoints, which settles vertices in exact order as long as label
//! widths stay below the shortest edge; wider labels are resolved by exact
//! comparison before settling.
//!
//! In [`Mode::Enclosure`] a label only encloses the shortest distance, and
//! overlapping candidates are merged instead of compared.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::graph::WeightedGraph;
use crate::exact::{compare_sqrt_sums, Interval, SqrtSum};
use crate::geom::Point;

pub(crate) const NO_PRED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    Exact,
    Enclosure,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Unseen,
    Queued,
    Settled,
}

pub(crate) struct Search<'a> {
    graph: &'a WeightedGraph,
    points: &'a [Point],
    mode: Mode,
    pub dist: Vec<Interval>,
    /// Enclosure of the length of the predecessor path; equals `dist` in
    /// exact mode.
    pub plen: Vec<Interval>,
    pub pred: Vec<u32>,
    pred_edge: Vec<u32>,
    state: Vec<State>,
    heap: BinaryHeap<Reverse<(u64, u32)>>,
}

fn key(x: f64) -> u64 {
    debug_assert!(x >= 0.0);
    x.max(0.0).to_bits()
}

impl<'a> Search<'a> {
    pub fn new(graph: &'a WeightedGraph, points: &'a [Point], source: usize, mode: Mode) -> Self {
        let n = graph.len();
        let mut s = Search {
            graph,
            points,
            mode,
            dist: vec![Interval::UNBOUNDED_ABOVE; n],
            plen: vec![Interval::UNBOUNDED_ABOVE; n],
            pred: vec![NO_PRED; n],
            pred_edge: vec![NO_PRED; n],
            state: vec![State::Unseen; n],
            heap: BinaryHeap::new(),
        };
        s.dist[source] = Interval::ZERO;
        s.plen[source] = Interval::ZERO;
        s.state[source] = State::Queued;
        s.heap.push(Reverse((0, source as u32)));
        s
    }

    pub fn is_settled(&self, v: usize) -> bool {
        self.state[v] == State::Settled
    }

    /// Vertices of the current path to `v`, starting at the source.
    pub fn path(&self, v: usize) -> Vec<u32> {
        let mut out = vec![v as u32];
        let mut x = v;
        while self.pred[x] != NO_PRED {
            x = self.pred[x] as usize;
            out.push(x as u32);
        }
        out.reverse();
        out
    }

    /// Edge ids of the current path to `v`, from the source.
    pub fn path_edges(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = v;
        while self.pred[x] != NO_PRED {
            out.push(self.pred_edge[x] as usize);
            x = self.pred[x] as usize;
        }
        out.reverse();
        out
    }

    fn sum_edges(&self, ids: &[usize]) -> SqrtSum {
        ids.iter().fold(SqrtSum::zero(), |acc, &id| {
            acc + self.graph.exact_len(self.points, id).clone()
        })
    }

    /// Exact length of the current path to `v`.
    pub fn path_len(&self, v: usize) -> SqrtSum {
        self.sum_edges(&self.path_edges(v))
    }

    fn pop_valid(&mut self) -> Option<usize> {
        while let Some(Reverse((k, v))) = self.heap.pop() {
            let v = v as usize;
            if self.state[v] == State::Queued && key(self.dist[v].lo()) == k {
                return Some(v);
            }
        }
        None
    }

    /// Settles and returns the next vertex.
    pub fn next(&mut self) -> Option<usize> {
        let popped = self.pop_valid()?;
        let mut u = popped;
        let limit = self.dist[u].hi() - self.graph.min_len();
        if self.mode == Mode::Exact && self.dist[u].lo() <= limit {
            // Queued labels close enough to interfere are compared exactly.
            let mut window = Vec::new();
            while let Some(&Reverse((k, w))) = self.heap.peek() {
                if f64::from_bits(k) > limit {
                    break;
                }
                self.heap.pop();
                let w = w as usize;
                if self.state[w] == State::Queued && key(self.dist[w].lo()) == k && w != popped {
                    window.push(w);
                }
            }
            for &w in &window {
                if self.cmp_labels(w, u) == Ordering::Less {
                    u = w;
                }
            }
            window.push(popped);
            for w in window {
                if w != u {
                    self.heap.push(Reverse((key(self.dist[w].lo()), w as u32)));
                }
            }
        }
        self.state[u] = State::Settled;
        Some(u)
    }

    fn cmp_labels(&self, a: usize, b: usize) -> Ordering {
        match self.dist[a].certainly_cmp(&self.dist[b]) {
            Some(o) if o != Ordering::Equal => o,
            _ => compare_sqrt_sums(&self.path_len(a), &self.path_len(b)),
        }
    }

    /// Relaxes the edges of the settled vertex `u` accepted by `edge_ok`.
    pub fn relax(&mut self, u: usize, edge_ok: impl Fn(usize, usize) -> bool) {
        let graph = self.graph;
        for (v, len, id) in graph.neighbors(u) {
            if self.state[v] == State::Settled || !edge_ok(v, id) {
                continue;
            }
            let cand = self.dist[u] + len;
            let cand_path = self.plen[u] + len;
            if self.state[v] == State::Unseen {
                self.set(v, u, id, cand, cand_path);
                continue;
            }
            match (cand.certainly_cmp(&self.dist[v]), self.mode) {
                (Some(Ordering::Less), _) => self.set(v, u, id, cand, cand_path),
                (Some(Ordering::Greater), _) => {}
                (_, Mode::Enclosure) => {
                    if cand_path.hi() < self.plen[v].hi() {
                        self.pred[v] = u as u32;
                        self.pred_edge[v] = id as u32;
                        self.plen[v] = cand_path;
                    }
                    let cur = self.dist[v];
                    let merged = Interval::new(cur.lo().min(cand.lo()), cur.hi().min(cand.hi()));
                    if merged.lo() < cur.lo() || merged.hi() < cur.hi() {
                        self.dist[v] = merged;
                        self.heap.push(Reverse((key(merged.lo()), v as u32)));
                    }
                }
                (_, Mode::Exact) => {
                    if self.exact_better(u, v, id) {
                        self.set(v, u, id, cand, cand_path);
                    }
                }
            }
        }
    }

    fn set(&mut self, v: usize, u: usize, id: usize, label: Interval, path: Interval) {
        self.dist[v] = label;
        self.plen[v] = path;
        self.pred[v] = u as u32;
        self.pred_edge[v] = id as u32;
        self.state[v] = State::Queued;
        self.heap.push(Reverse((key(label.lo()), v as u32)));
    }

    /// Whether the path through `u` to `v` beats the current one: shorter,
    /// or equally long and lexicographically smaller.
    fn exact_better(&self, u: usize, v: usize, id: usize) -> bool {
        let mut via = self.path(u);
        via.push(v as u32);
        let cur = self.path(v);
        let mut via_edges = self.path_edges(u);
        via_edges.push(id);
        let cur_edges = self.path_edges(v);
        // Both paths start at the source; the shared prefix cancels.
        let common = via.iter().zip(&cur).take_while(|(a, b)| a == b).count();
        let skip = common.saturating_sub(1);
        let a = self.sum_edges(&via_edges[skip.min(via_edges.len())..]);
        let b = self.sum_edges(&cur_edges[skip.min(cur_edges.len())..]);
        match compare_sqrt_sums(&a, &b) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => via < cur,
        }
    }
}

/// Exact length of a polyline through the given point ids.
pub fn path_length(points: &[Point], path: &[u32]) -> SqrtSum {
    path.windows(2).fold(SqrtSum::zero(), |acc, w| {
        acc + crate::geom::dist_exact(&points[w[0] as usize], &points[w[1] as usize])
    })
}
