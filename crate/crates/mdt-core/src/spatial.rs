//! Quadtree with contiguous point storage and a best-first event stream.
//!
//! The tree splits each node at the midpoint of its tight bounding box. The
//! search from a source point delivers points, nodes and externally scheduled
//! activation events by exact squared distance, breaking ties by event kind
//! (activations, then nodes, then points) and then by id.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::exact::{rational, Interval};
use crate::geom::{sq_dist_exact, sq_dist_interval, Point};

pub const DEFAULT_LEAF_CAPACITY: usize = 8;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BBox {
    fn of(points: &[Point]) -> BBox {
        let mut b = BBox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        b
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.min_x <= p.x && p.x <= self.max_x && self.min_y <= p.y && p.y <= self.max_y
    }

    /// The point of the box nearest to `p`; its coordinates are exact.
    pub fn nearest(&self, p: &Point) -> Point {
        Point::new(p.x.clamp(self.min_x, self.max_x), p.y.clamp(self.min_y, self.max_y))
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.min_x, self.min_y),
            Point::new(self.max_x, self.min_y),
            Point::new(self.max_x, self.max_y),
            Point::new(self.min_x, self.max_y),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub bbox: BBox,
    pub start: u32,
    pub end: u32,
    children: [u32; 4],
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children[0] == NONE
    }

    pub fn children(&self) -> impl Iterator<Item = usize> + '_ {
        self.children.iter().take_while(|&&c| c != NONE).map(|&c| c as usize)
    }
}

#[derive(Clone, Debug)]
pub struct Quadtree {
    points: Vec<Point>,
    ids: Vec<u32>,
    nodes: Vec<Node>,
    leaf_capacity: usize,
}

impl Quadtree {
    pub fn build(points: &[Point], leaf_capacity: usize) -> Quadtree {
        assert!(!points.is_empty(), "empty point set");
        let cap = leaf_capacity.max(1);
        let mut ids: Vec<u32> = (0..points.len() as u32).collect();
        let mut nodes = vec![Node {
            bbox: BBox::of(points),
            start: 0,
            end: points.len() as u32,
            children: [NONE; 4],
        }];
        let mut stack = vec![0usize];
        let mut scratch: Vec<u32> = Vec::new();
        while let Some(v) = stack.pop() {
            let (s, e) = (nodes[v].start as usize, nodes[v].end as usize);
            if e - s <= cap {
                continue;
            }
            let bb = nodes[v].bbox;
            let mx = 0.5 * (bb.min_x + bb.max_x);
            let my = 0.5 * (bb.min_y + bb.max_y);
            let quad = |i: u32| {
                let p = &points[i as usize];
                (p.x >= mx) as usize + 2 * (p.y >= my) as usize
            };
            let mut counts = [0usize; 4];
            for &i in &ids[s..e] {
                counts[quad(i)] += 1;
            }
            let mut groups: Vec<(usize, usize)> = Vec::with_capacity(4);
            if counts.iter().filter(|&&c| c > 0).count() >= 2 {
                scratch.clear();
                for q in 0..4 {
                    let begin = s + scratch.len();
                    scratch.extend(ids[s..e].iter().copied().filter(|&i| quad(i) == q));
                    if counts[q] > 0 {
                        groups.push((begin, s + scratch.len()));
                    }
                }
                ids[s..e].copy_from_slice(&scratch);
            } else {
                // Midpoint rounding put everything on one side; halve along
                // the wider extent instead.
                let by_x = bb.max_x - bb.min_x >= bb.max_y - bb.min_y;
                ids[s..e].sort_by(|&a, &b| {
                    let (pa, pb) = (&points[a as usize], &points[b as usize]);
                    if by_x {
                        pa.lex_cmp(pb)
                    } else {
                        pa.y.total_cmp(&pb.y).then(pa.x.total_cmp(&pb.x))
                    }
                });
                let m = s + (e - s) / 2;
                groups.push((s, m));
                groups.push((m, e));
            }
            let mut children = [NONE; 4];
            for (k, &(gs, ge)) in groups.iter().enumerate() {
                let sub: Vec<Point> = ids[gs..ge].iter().map(|&i| points[i as usize]).collect();
                children[k] = nodes.len() as u32;
                stack.push(nodes.len());
                nodes.push(Node {
                    bbox: BBox::of(&sub),
                    start: gs as u32,
                    end: ge as u32,
                    children: [NONE; 4],
                });
            }
            nodes[v].children = children;
        }
        let reordered = ids.iter().map(|&i| points[i as usize]).collect();
        Quadtree {
            points: reordered,
            ids,
            nodes,
            leaf_capacity: cap,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn leaf_capacity(&self) -> usize {
        self.leaf_capacity
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &Node {
        &self.nodes[v]
    }

    /// Points in storage order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Original id of the point at storage position `k`.
    pub fn id_at(&self, k: usize) -> usize {
        self.ids[k] as usize
    }

    /// Ids of the points below node `v`.
    pub fn subtree_ids(&self, v: usize) -> &[u32] {
        let n = &self.nodes[v];
        &self.ids[n.start as usize..n.end as usize]
    }

    /// Ids of all points inside `bbox`, found by descending the tree.
    pub fn query_box(&self, bbox: &BBox) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let nb = &self.nodes[v].bbox;
            if nb.max_x < bbox.min_x || nb.min_x > bbox.max_x || nb.max_y < bbox.min_y || nb.min_y > bbox.max_y {
                continue;
            }
            let node = &self.nodes[v];
            if node.is_leaf() {
                for k in node.start as usize..node.end as usize {
                    if bbox.contains(&self.points[k]) {
                        out.push(self.ids[k] as usize);
                    }
                }
            } else {
                stack.extend(node.children());
            }
        }
        out
    }
}

/// Squared-distance key of an event.
#[derive(Clone, Copy, Debug)]
pub enum Key {
    /// Exact squared distance from the source to this point.
    Dist(Point),
    /// A squared-distance value given directly, taken as exact.
    Value(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    SectorActivated = 0,
    NodeReached = 1,
    PointReached = 2,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchEvent {
    pub kind: EventKind,
    pub key: Key,
    /// Point id, node index or caller-chosen sector id.
    pub id: usize,
    approx: Interval,
}

impl SearchEvent {
    /// Enclosure of the squared-distance key.
    pub fn key_interval(&self) -> Interval {
        self.approx
    }
}

struct Entry {
    ev: SearchEvent,
    source: Point,
}

fn exact_key(source: &Point, k: &Key) -> num_rational::BigRational {
    match k {
        Key::Dist(q) => sq_dist_exact(source, q),
        Key::Value(v) => rational(*v),
    }
}

fn cmp_keys(source: &Point, a: &SearchEvent, b: &SearchEvent) -> Ordering {
    match a.approx.certainly_cmp(&b.approx) {
        Some(o) => o,
        None => exact_key(source, &a.key).cmp(&exact_key(source, &b.key)),
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    /// Reversed, so that the max-heap pops the smallest event first.
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_keys(&self.source, &self.ev, &other.ev)
            .then(self.ev.kind.cmp(&other.ev.kind))
            .then(self.ev.id.cmp(&other.ev.id))
            .reverse()
    }
}

/// Pull-based best-first search from one source point.
///
/// Node events are not expanded automatically: the consumer either calls
/// [`IncrementalSearch::expand`] or drops the node, which prunes its subtree.
pub struct IncrementalSearch<'a> {
    tree: &'a Quadtree,
    source: Point,
    source_id: usize,
    heap: BinaryHeap<Entry>,
    nodes_expanded: usize,
    points_reached: usize,
}

impl<'a> IncrementalSearch<'a> {
    pub fn new(tree: &'a Quadtree, source_id: usize, source: Point) -> Self {
        let mut s = IncrementalSearch {
            tree,
            source,
            source_id,
            heap: BinaryHeap::new(),
            nodes_expanded: 0,
            points_reached: 0,
        };
        s.push_node(0);
        s
    }

    pub fn source(&self) -> Point {
        self.source
    }

    fn push(&mut self, kind: EventKind, key: Key, id: usize) {
        let approx = match key {
            Key::Dist(q) => sq_dist_interval(&self.source, &q),
            Key::Value(v) => Interval::point(v),
        };
        self.heap.push(Entry {
            ev: SearchEvent { kind, key, id, approx },
            source: self.source,
        });
    }

    fn push_node(&mut self, v: usize) {
        let q = self.tree.nodes[v].bbox.nearest(&self.source);
        self.push(EventKind::NodeReached, Key::Dist(q), v);
    }

    /// Schedules an activation event at squared distance `key`, which the
    /// caller guarantees to be an upper bound of the true activation.
    pub fn schedule(&mut self, sector_id: usize, key: f64) {
        self.push(EventKind::SectorActivated, Key::Value(key), sector_id);
    }

    /// Replaces a reached node by its children or its points.
    pub fn expand(&mut self, v: usize) {
        self.nodes_expanded += 1;
        let node = &self.tree.nodes[v];
        if node.is_leaf() {
            for k in node.start as usize..node.end as usize {
                let id = self.tree.ids[k] as usize;
                if id != self.source_id {
                    self.push(EventKind::PointReached, Key::Dist(self.tree.points[k]), id);
                }
            }
        } else {
            let children: Vec<usize> = node.children().collect();
            for c in children {
                self.push_node(c);
            }
        }
    }

    pub fn next_event(&mut self) -> Option<SearchEvent> {
        let e = self.heap.pop()?;
        if e.ev.kind == EventKind::PointReached {
            self.points_reached += 1;
        }
        Some(e.ev)
    }

    pub fn nodes_expanded(&self) -> usize {
        self.nodes_expanded
    }

    pub fn points_reached(&self) -> usize {
        self.points_reached
    }

    /// Number of queued events.
    pub fn pending(&self) -> usize {
        self.heap.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_a_leaf() {
        let t = Quadtree::build(&[Point::new(1.0, 2.0)], 8);
        assert_eq!(t.nodes().len(), 1);
        assert!(t.node(0).is_leaf());
    }

    #[test]
    fn square_corners_split_into_four() {
        let p = [
            Point::new(0., 0.),
            Point::new(1., 0.),
            Point::new(0., 1.),
            Point::new(1., 1.),
        ];
        let t = Quadtree::build(&p, 1);
        assert_eq!(t.node(0).children().count(), 4);
        assert!(t.node(0).children().all(|c| t.node(c).is_leaf()));
    }

    #[test]
    fn collinear_order_and_ties() {
        let p = [
            Point::new(0., 0.),
            Point::new(3., 0.),
            Point::new(1., 0.),
            Point::new(2., 0.),
            Point::new(0., 1.),
        ];
        let t = Quadtree::build(&p, 1);
        let mut s = IncrementalSearch::new(&t, 0, p[0]);
        let mut order = Vec::new();
        while let Some(ev) = s.next_event() {
            match ev.kind {
                EventKind::NodeReached => s.expand(ev.id),
                EventKind::PointReached => order.push(ev.id),
                EventKind::SectorActivated => {}
            }
        }
        // Points 2 and 4 are both at distance 1; the smaller id comes first.
        assert_eq!(order, vec![2, 4, 3, 1]);
    }

    #[test]
    fn degenerate_midpoint_split() {
        let a = 1.0f64;
        let p: Vec<Point> = (0..20)
            .map(|k| Point::new(if k % 2 == 0 { a } else { a.next_up() }, k as f64))
            .collect();
        let t = Quadtree::build(&p, 2);
        for v in 0..t.nodes().len() {
            let node = t.node(v);
            for &i in t.subtree_ids(v) {
                assert!(node.bbox.contains(&p[i as usize]));
            }
            assert!(!node.is_leaf() || node.end - node.start <= 2);
        }
    }
}
