//! Candidate edge enumeration by filtered incremental search.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::sector::{dead_sector, ArcSet};
use crate::exact::pseudo_angle_f64;
use crate::geom::predicates::on_open_segment;
use crate::geom::{delaunay, validate_points, Edge, GeomError, Point};
use crate::par;
use crate::spatial::{BBox, EventKind, IncrementalSearch, Quadtree, DEFAULT_LEAF_CAPACITY};

/// Which neighbors of a newly reported point are paired with it to form
/// dead sectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub nearest_neighbors: usize,
    pub delaunay_neighbors: bool,
    /// Previously reported points angularly closest around the source.
    pub angular_neighbors: usize,
    pub leaf_capacity: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            nearest_neighbors: 6,
            delaunay_neighbors: true,
            angular_neighbors: 4,
            leaf_capacity: DEFAULT_LEAF_CAPACITY,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub points_reached: u64,
    pub nodes_expanded: u64,
    pub nodes_pruned: u64,
    pub sectors: u64,
    /// Ordered pairs `(p, t)` with `t` reported from `p`.
    pub reported: u64,
    /// Edges reported from one end only.
    pub one_sided: u64,
    /// Edges dropped because a point lies in their interior.
    pub through_points: u64,
}

#[derive(Clone, Debug)]
pub struct Candidates {
    /// Sorted candidate edges.
    pub edges: Vec<Edge>,
    pub stats: EnumerationStats,
}

struct Context<'a> {
    points: &'a [Point],
    tree: Quadtree,
    neighbors: Vec<Vec<u32>>,
    rho: f64,
    angular: usize,
}

#[derive(Default)]
struct SourceResult {
    reported: Vec<u32>,
    points_reached: u64,
    nodes_expanded: u64,
    nodes_pruned: u64,
    sectors: u64,
}

/// Enumerates a superset of the edges that can appear in a triangulation of
/// dilation below `rho`.
///
/// An edge is kept only if it is reported from both endpoints and contains
/// no input point in its interior.
pub fn enumerate_candidates(points: &[Point], rho: f64, config: &EnumerationConfig) -> Result<Candidates, GeomError> {
    validate_points(points)?;
    let n = points.len();
    let tree = Quadtree::build(points, config.leaf_capacity);
    let neighbors = interesting_neighbors(points, &tree, config)?;
    let ctx = Context {
        points,
        tree,
        neighbors,
        rho,
        angular: config.angular_neighbors,
    };
    let mut results = par::map_indices(n, |p| search_from(&ctx, p));
    for r in &mut results {
        r.reported.sort_unstable();
    }

    let mut stats = EnumerationStats::default();
    let mut edges = Vec::new();
    for (p, r) in results.iter().enumerate() {
        stats.points_reached += r.points_reached;
        stats.nodes_expanded += r.nodes_expanded;
        stats.nodes_pruned += r.nodes_pruned;
        stats.sectors += r.sectors;
        stats.reported += r.reported.len() as u64;
        for &t in &r.reported {
            let t = t as usize;
            let back = results[t].reported.binary_search(&(p as u32)).is_ok();
            if !back {
                stats.one_sided += 1;
            } else if p < t {
                edges.push(Edge::new(p, t));
            }
        }
    }
    let keep = par::map_indices(edges.len(), |k| !passes_through_point(&ctx.tree, points, edges[k]));
    let before = edges.len();
    let edges: Vec<Edge> = edges
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();
    stats.through_points = (before - edges.len()) as u64;
    Ok(Candidates { edges, stats })
}

/// Whether some input point lies in the interior of the segment `e`.
pub fn passes_through_point(tree: &Quadtree, points: &[Point], e: Edge) -> bool {
    let (a, b) = (points[e.u()], points[e.v()]);
    let bbox = BBox {
        min_x: a.x.min(b.x),
        min_y: a.y.min(b.y),
        max_x: a.x.max(b.x),
        max_y: a.y.max(b.y),
    };
    tree.query_box(&bbox)
        .into_iter()
        .any(|k| k != e.u() && k != e.v() && on_open_segment(&a, &b, &points[k]))
}

fn interesting_neighbors(
    points: &[Point],
    tree: &Quadtree,
    config: &EnumerationConfig,
) -> Result<Vec<Vec<u32>>, GeomError> {
    let n = points.len();
    let k = config.nearest_neighbors.min(n - 1);
    let mut lists = par::map_indices(n, |t| {
        let mut out = Vec::with_capacity(k + 8);
        let mut search = IncrementalSearch::new(tree, t, points[t]);
        while out.len() < k {
            let Some(ev) = search.next_event() else { break };
            match ev.kind {
                EventKind::NodeReached => search.expand(ev.id),
                EventKind::PointReached => out.push(ev.id as u32),
                EventKind::SectorActivated => {}
            }
        }
        out
    });
    if config.delaunay_neighbors {
        let dt = delaunay(points)?;
        for e in dt.edges() {
            lists[e.u()].push(e.v() as u32);
            lists[e.v()].push(e.u() as u32);
        }
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    Ok(lists)
}

fn search_from(ctx: &Context, p: usize) -> SourceResult {
    let points = ctx.points;
    let src = points[p];
    let mut res = SourceResult::default();
    let mut search = IncrementalSearch::new(&ctx.tree, p, src);
    let mut arcs = ArcSet::new(src);
    let mut sectors = Vec::new();
    let mut paired: HashSet<(u32, u32)> = HashSet::new();
    // Reported points sorted by approximate angle around the source.
    let mut around: Vec<(f64, u32)> = Vec::new();
    let mut partners: Vec<u32> = Vec::new();

    while let Some(ev) = search.next_event() {
        match ev.kind {
            EventKind::SectorActivated => {
                let s: &super::DeadSector = &sectors[ev.id];
                arcs.insert(s.l, s.r);
                if arcs.is_full() {
                    break;
                }
            }
            EventKind::NodeReached => {
                if arcs.covers_box(&ctx.tree.node(ev.id).bbox) {
                    res.nodes_pruned += 1;
                } else {
                    search.expand(ev.id);
                }
            }
            EventKind::PointReached => {
                let t = ev.id;
                if arcs.covers_point(&points[t]) {
                    continue;
                }
                res.reported.push(t as u32);
                let ang = pseudo_angle_f64(src, points[t]);
                partners.clear();
                partners.extend_from_slice(&ctx.neighbors[t]);
                let pos = around.partition_point(|&(a, _)| a < ang);
                if !around.is_empty() {
                    let m = around.len();
                    let half = ctx.angular.div_ceil(2).min(m);
                    for d in 0..half {
                        partners.push(around[(pos + d) % m].1);
                        partners.push(around[(pos + m - 1 - d) % m].1);
                    }
                }
                around.insert(pos, (ang, t as u32));
                if !ctx.rho.is_finite() {
                    continue;
                }
                for &q in &partners {
                    let q = q as usize;
                    if q == p || q == t {
                        continue;
                    }
                    let key = (t.min(q) as u32, t.max(q) as u32);
                    if !paired.insert(key) {
                        continue;
                    }
                    if let Some(s) = dead_sector(&src, &points[t], &points[q], ctx.rho) {
                        search.schedule(sectors.len(), s.activation_sq);
                        sectors.push(s);
                    }
                }
            }
        }
    }
    res.points_reached = search.points_reached() as u64;
    res.nodes_expanded = search.nodes_expanded() as u64;
    res.sectors = sectors.len() as u64;
    res
}
