//! The triangulation supergraph: candidate edges with their statuses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{threshold_at_least, CandidateGraph};
use crate::exact::{ExactValue, Interval};
use crate::geom::{Edge, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeStatus {
    Possible,
    Impossible,
    Certain,
}

/// Raised when an edge would have to be both in and out of every remaining
/// triangulation, which proves that none exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("edge {edge:?} is both required and excluded")]
pub struct EdgeConflict {
    pub edge: Edge,
}

#[derive(Clone, Debug)]
pub struct Supergraph {
    graph: CandidateGraph,
    status: Vec<EdgeStatus>,
    /// Crossers of each edge that are not impossible.
    alive: Vec<u32>,
}

impl Supergraph {
    /// Edges without crossers start out certain.
    pub fn new(graph: CandidateGraph) -> Self {
        let alive: Vec<u32> = graph.crossings.iter().map(|c| c.len() as u32).collect();
        let status = alive
            .iter()
            .map(|&a| {
                if a == 0 {
                    EdgeStatus::Certain
                } else {
                    EdgeStatus::Possible
                }
            })
            .collect();
        Supergraph { graph, status, alive }
    }

    pub fn len(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.graph.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.graph.edges[e]
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.graph.index_of(e)
    }

    pub fn crossings(&self, e: usize) -> &[u32] {
        &self.graph.crossings[e]
    }

    pub fn threshold(&self, e: usize) -> Interval {
        self.graph.thresholds[e]
    }

    pub fn status(&self, e: usize) -> EdgeStatus {
        self.status[e]
    }

    pub fn candidate_graph(&self) -> &CandidateGraph {
        &self.graph
    }

    pub fn count(&self, s: EdgeStatus) -> usize {
        self.status.iter().filter(|&&x| x == s).count()
    }

    /// Marks `e` impossible and propagates: a crosser left without live
    /// crossers becomes certain. Returns the edges that became certain.
    pub fn mark_impossible(&mut self, e: usize) -> Result<Vec<usize>, EdgeConflict> {
        match self.status[e] {
            EdgeStatus::Impossible => return Ok(Vec::new()),
            EdgeStatus::Certain => {
                return Err(EdgeConflict {
                    edge: self.graph.edges[e],
                })
            }
            EdgeStatus::Possible => {}
        }
        self.status[e] = EdgeStatus::Impossible;
        if self.alive[e] == 0 {
            return Err(EdgeConflict {
                edge: self.graph.edges[e],
            });
        }
        let mut certain = Vec::new();
        for k in 0..self.graph.crossings[e].len() {
            let f = self.graph.crossings[e][k] as usize;
            self.alive[f] -= 1;
            if self.alive[f] == 0 {
                match self.status[f] {
                    EdgeStatus::Impossible => {
                        return Err(EdgeConflict {
                            edge: self.graph.edges[f],
                        })
                    }
                    EdgeStatus::Possible => {
                        self.status[f] = EdgeStatus::Certain;
                        certain.push(f);
                    }
                    EdgeStatus::Certain => {}
                }
            }
        }
        Ok(certain)
    }

    /// Marks every non-impossible edge whose threshold is provably at least
    /// `bound` as impossible. Returns the newly impossible edges.
    pub fn apply_threshold_cut(&mut self, points: &[Point], bound: &ExactValue) -> Result<Vec<usize>, EdgeConflict> {
        let b = bound.interval();
        let mut cut = Vec::new();
        for e in 0..self.len() {
            if self.status[e] == EdgeStatus::Impossible || self.graph.thresholds[e].hi() < b.lo() {
                continue;
            }
            let edge = self.graph.edges[e];
            let crossers = self.graph.crossings[e].iter().map(|&f| self.graph.edges[f as usize]);
            if threshold_at_least(points, edge, crossers, bound) {
                cut.push(e);
            }
        }
        for &e in &cut {
            self.mark_impossible(e)?;
        }
        Ok(cut)
    }
}
