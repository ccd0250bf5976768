//! Delaunay triangulation improved by shortcut constraints.

use std::cmp::Ordering;

use crate::dilation::{exact_dilation, sample_violations, Dilation, SamplingConfig};
use crate::enumeration::passes_through_point;
use crate::geom::predicates::segments_cross;
use crate::geom::{constrained_delaunay, debug_check, delaunay, Edge, GeomError, Point, Triangulation};
use crate::spatial::{Quadtree, DEFAULT_LEAF_CAPACITY};

#[derive(Clone, Debug)]
pub struct InitialSolution {
    pub triangulation: Triangulation,
    pub dilation: Dilation,
    pub delaunay_dilation: Dilation,
    /// Shortcut constraints that were accepted.
    pub constraints: Vec<Edge>,
    pub attempts: usize,
}

/// Delaunay triangulation, optionally improved by repeatedly forcing a
/// shortcut between two vertices of the current dilation-defining path.
///
/// A shortcut is kept only if the constrained Delaunay triangulation has an
/// exactly smaller dilation.
pub fn initial_solution(points: &[Point], improve: bool, rounds: usize) -> Result<InitialSolution, GeomError> {
    let dt = delaunay(points)?;
    debug_check(&dt, points);
    let d0 = exact_dilation(points, dt.edges()).expect("triangulations are connected");
    let mut sol = InitialSolution {
        triangulation: dt,
        dilation: d0.clone(),
        delaunay_dilation: d0,
        constraints: Vec::new(),
        attempts: 0,
    };
    if !improve || sol.dilation.value.is_one() {
        return Ok(sol);
    }
    let tree = Quadtree::build(points, DEFAULT_LEAF_CAPACITY);
    let probe = SamplingConfig {
        expansions: 32,
        max_violations: 1,
    };
    for _ in 0..rounds {
        let path = sol.dilation.path.clone();
        let mut shortcuts = Vec::new();
        for span in (2..path.len()).rev() {
            for i in 0..path.len() - span {
                let e = Edge::new(path[i] as usize, path[i + span] as usize);
                if !sol.triangulation.contains(e)
                    && !passes_through_point(&tree, points, e)
                    && !sol.constraints.iter().any(|c| crosses(points, *c, e))
                {
                    shortcuts.push(e);
                }
            }
        }
        let mut accepted = false;
        for e in shortcuts {
            sol.attempts += 1;
            let mut cons = sol.constraints.clone();
            cons.push(e);
            let t = constrained_delaunay(points, &cons)?;
            // Cheap rejection before the full computation.
            if !sample_violations(points, t.edges(), &sol.dilation.value, probe).is_empty() {
                continue;
            }
            let d = exact_dilation(points, t.edges()).expect("triangulations are connected");
            if d.value.cmp_exact(&sol.dilation.value) == Ordering::Less {
                debug_check(&t, points);
                sol.triangulation = t;
                sol.dilation = d;
                sol.constraints = cons;
                accepted = true;
                break;
            }
        }
        if !accepted || sol.dilation.value.is_one() {
            break;
        }
    }
    Ok(sol)
}

fn crosses(points: &[Point], a: Edge, b: Edge) -> bool {
    segments_cross(&points[a.u()], &points[a.v()], &points[b.u()], &points[b.v()])
}
