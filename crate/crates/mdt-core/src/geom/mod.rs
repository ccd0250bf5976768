//! Exact geometric primitives and triangulation construction.

mod delaunay;
mod ellipse;
mod hull;
mod point;
pub mod predicates;
mod triangulation;

pub use delaunay::{constrained_delaunay, delaunay, delaunay_triangles, validate_constraints};
pub use ellipse::{
    detour_excess, ellipse_rect, violates_ellipse_property, violates_ellipse_property_exact, EllipseCheck, EllipseRect,
};
pub use hull::{convex_hull, hull_boundary, triangulation_edge_count};
pub use point::{dist_exact, dist_interval, sq_dist_exact, sq_dist_interval, Edge, Point};
pub use predicates::{orientation, segments_cross, Orientation};
pub use triangulation::{debug_check, Adjacency, Triangulation, TriangulationError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("unknown point id {0}")]
    UnknownPoint(usize),
    #[error("constraints {0:?} and {1:?} cross")]
    CrossingConstraints(Edge, Edge),
    #[error("constraint {0:?} passes through point {1}")]
    ConstraintThroughPoint(Edge, usize),
}

/// Rejects point sets that admit no triangulation or have undefined dilation.
/// Collinearity of the whole set is detected by the triangulation builders.
pub fn validate_points(points: &[Point]) -> Result<(), GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints(points.len()));
    }
    if let Some(i) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(GeomError::NonFinite(i));
    }
    let mut ids: Vec<usize> = (0..points.len()).collect();
    ids.sort_by(|&a, &b| points[a].lex_cmp(&points[b]).then(a.cmp(&b)));
    for w in ids.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(GeomError::DuplicatePoint(w[0], w[1]));
        }
    }
    Ok(())
}
