//! Small instances checked against exhaustive enumeration of triangulations.

mod common;

use std::cmp::Ordering;

use common::{all_triangulations, dilation_f64, valid_edges};
use mdt_core::dilation::exact_dilation;
use mdt_core::enumeration::postprocess;
use mdt_core::geom::{Edge, Point};
use mdt_core::instances::random_points;
use mdt_core::sat::EdgeModel;
use mdt_core::solver::{solve, Algorithm, SolverConfig, Status};
use mdt_core::supergraph::Supergraph;

fn instance(n: usize, seed: u64) -> Vec<Point> {
    // A coarse grid makes collinear triples and edges through points common.
    random_points(n, 12, seed)
}

fn collinear(pts: &[Point]) -> bool {
    use mdt_core::geom::{orientation, Orientation};
    pts[2..]
        .iter()
        .all(|c| orientation(&pts[0], &pts[1], c) == Orientation::Collinear)
}

#[test]
fn sat_solutions_are_exactly_the_triangulations() {
    let mut checked = 0;
    for seed in 0..40 {
        let n = 5 + (seed as usize % 5);
        let pts = instance(n, seed);
        if collinear(&pts) {
            continue;
        }
        let mut oracle: Vec<Vec<Edge>> = all_triangulations(&pts);
        oracle.sort();

        let sg = Supergraph::new(postprocess(&pts, valid_edges(&pts), f64::INFINITY));
        let mut model = EdgeModel::new(&sg);
        let mut found = Vec::new();
        while let Some(sel) = model.solve(None).unwrap() {
            let mut t: Vec<Edge> = sel.iter().map(|&e| sg.edge(e)).collect();
            t.sort();
            found.push(t);
            let others: Vec<usize> = (0..sg.len()).filter(|e| !sel.contains(e)).collect();
            model.require_any(&others);
            assert!(found.len() <= oracle.len(), "seed {seed}: too many solutions");
        }
        found.sort();
        assert_eq!(found, oracle, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn solvers_match_exhaustive_optimum() {
    for seed in 0..15 {
        let n = 6 + (seed as usize % 4);
        let pts = instance(n, 100 + seed);
        if collinear(&pts) {
            continue;
        }
        let tris = all_triangulations(&pts);
        let values: Vec<f64> = tris.iter().map(|t| dilation_f64(&pts, t)).collect();
        let best = values.iter().cloned().fold(f64::INFINITY, f64::min);
        for alg in [Algorithm::Inc, Algorithm::Bin] {
            let cfg = SolverConfig {
                algorithm: alg,
                ..SolverConfig::default()
            };
            let sol = solve(&pts, &cfg).unwrap();
            assert_eq!(sol.status, Status::Optimal);
            let v = sol.dilation.value.interval();
            assert!((v.mid() - best).abs() < 1e-9, "seed {seed} {alg:?}: {v} vs {best}");
            // Near-ties in floating point are settled exactly.
            for (t, &x) in tris.iter().zip(&values) {
                if x - best < 1e-9 {
                    let d = exact_dilation(&pts, t).unwrap();
                    assert_ne!(d.value.cmp_exact(&sol.dilation.value), Ordering::Less, "seed {seed}");
                }
            }
        }
    }
}
