//! Compressed adjacency with interval edge lengths.

use std::sync::OnceLock;

use crate::exact::{Interval, SqrtSum};
use crate::geom::{dist_exact, dist_interval, Edge, Point};

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    lens: Vec<Interval>,
    /// Index of the edge in the slice the graph was built from.
    edge_ids: Vec<u32>,
    min_len: f64,
    ends: Vec<(u32, u32)>,
    exact: Vec<OnceLock<SqrtSum>>,
}

impl WeightedGraph {
    /// Builds the graph on `n` vertices from those `edges` accepted by `keep`.
    pub fn new(n: usize, points: &[Point], edges: &[Edge], keep: impl Fn(usize) -> bool) -> Self {
        let mut deg = vec![0u32; n + 1];
        let mut used = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            if keep(k) {
                deg[e.u()] += 1;
                deg[e.v()] += 1;
                used.push(k);
            }
        }
        let mut offsets = vec![0u32; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let total = offsets[n] as usize;
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; total];
        let mut lens = vec![Interval::ZERO; total];
        let mut edge_ids = vec![0u32; total];
        let mut min_len = f64::INFINITY;
        for k in used {
            let e = edges[k];
            let len = dist_interval(&points[e.u()], &points[e.v()]);
            min_len = min_len.min(len.lo());
            for (a, b) in [(e.u(), e.v()), (e.v(), e.u())] {
                let slot = fill[a] as usize;
                targets[slot] = b as u32;
                lens[slot] = len;
                edge_ids[slot] = k as u32;
                fill[a] += 1;
            }
        }
        // Sorted neighbor lists keep every traversal independent of input order.
        for v in 0..n {
            let (s, e) = (offsets[v] as usize, offsets[v + 1] as usize);
            let mut idx: Vec<usize> = (s..e).collect();
            idx.sort_by_key(|&i| targets[i]);
            let t: Vec<u32> = idx.iter().map(|&i| targets[i]).collect();
            let l: Vec<Interval> = idx.iter().map(|&i| lens[i]).collect();
            let id: Vec<u32> = idx.iter().map(|&i| edge_ids[i]).collect();
            targets[s..e].copy_from_slice(&t);
            lens[s..e].copy_from_slice(&l);
            edge_ids[s..e].copy_from_slice(&id);
        }
        WeightedGraph {
            ends: edges.iter().map(|e| (e.u() as u32, e.v() as u32)).collect(),
            exact: (0..edges.len()).map(|_| OnceLock::new()).collect(),
            offsets,
            targets,
            lens,
            edge_ids,
            min_len,
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(neighbor, length, edge id)` triples of `v`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, Interval, usize)> + '_ {
        let (s, e) = (self.offsets[v] as usize, self.offsets[v + 1] as usize);
        (s..e).map(move |i| (self.targets[i] as usize, self.lens[i], self.edge_ids[i] as usize))
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    /// Exact length of edge `id`, computed once.
    pub fn exact_len(&self, points: &[Point], id: usize) -> &SqrtSum {
        self.exact[id].get_or_init(|| {
            let (a, b) = self.ends[id];
            dist_exact(&points[a as usize], &points[b as usize])
        })
    }

    /// Lower bound on the shortest edge length.
    pub fn min_len(&self) -> f64 {
        self.min_len
    }
}
