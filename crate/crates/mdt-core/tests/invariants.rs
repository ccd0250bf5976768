//! Property tests for the geometric and arithmetic building blocks.

mod common;

use std::cmp::Ordering;

use common::valid_edges;
use mdt_core::enumeration::postprocess;
use mdt_core::exact::Interval;
use mdt_core::geom::{
    constrained_delaunay, delaunay, orientation, sq_dist_exact, sq_dist_interval, triangulation_edge_count,
    violates_ellipse_property, violates_ellipse_property_exact, EllipseCheck, Orientation, Point,
};
use mdt_core::instances::random_points;
use mdt_core::sat::EdgeModel;
use mdt_core::supergraph::Supergraph;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn grid_points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set((0i32..20, 0i32..20), 4..max)
        .prop_map(|s| s.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect())
}

fn not_collinear(p: &[Point]) -> bool {
    p[2..]
        .iter()
        .any(|c| orientation(&p[0], &p[1], c) != Orientation::Collinear)
}

fn point() -> impl Strategy<Value = Point> {
    (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| Point::new(x, y))
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn encloses(i: Interval, q: &BigRational) -> bool {
    rat(i.lo()) <= *q && *q <= rat(i.hi())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn delaunay_is_a_triangulation(pts in grid_points(40)) {
        prop_assume!(not_collinear(&pts));
        let t = delaunay(&pts).unwrap();
        prop_assert!(t.check(&pts).is_ok());
        prop_assert_eq!(t.len(), triangulation_edge_count(&pts));
    }

    #[test]
    fn constrained_delaunay_keeps_constraint(pts in grid_points(30), pick in any::<prop::sample::Index>()) {
        prop_assume!(not_collinear(&pts));
        let edges = valid_edges(&pts);
        let c = edges[pick.index(edges.len())];
        let t = constrained_delaunay(&pts, &[c]).unwrap();
        prop_assert!(t.check(&pts).is_ok());
        prop_assert!(t.contains(c));
    }

    #[test]
    fn orientation_flips_with_swap(a in point(), b in point(), c in point()) {
        let o = orientation(&a, &b, &c);
        let flipped = match o {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        };
        prop_assert_eq!(orientation(&b, &a, &c), flipped);
        prop_assert_eq!(orientation(&b, &c, &a), o);
    }

    #[test]
    fn interval_ops_enclose_exact(x in -1e6f64..1e6, y in -1e6f64..1e6, z in 1e-3f64..1e6) {
        let (a, b, c) = (Interval::point(x), Interval::point(y), Interval::point(z));
        let (qx, qy, qz) = (rat(x), rat(y), rat(z));
        prop_assert!(encloses(a + b, &(&qx + &qy)));
        prop_assert!(encloses(a - b, &(&qx - &qy)));
        prop_assert!(encloses(a * b, &(&qx * &qy)));
        prop_assert!(encloses(a / c, &(&qx / &qz)));
        let s = c.sqrt();
        prop_assert!(rat(s.lo()) * rat(s.lo()) <= qz && qz <= rat(s.hi()) * rat(s.hi()));
    }

    #[test]
    fn squared_distance_interval_encloses_exact(a in point(), b in point()) {
        prop_assert!(encloses(sq_dist_interval(&a, &b), &sq_dist_exact(&a, &b)));
    }

    #[test]
    fn ellipse_filter_agrees_with_exact(s in point(), t in point(), l in point(), r in point(), rho in 1.0f64..3.0) {
        prop_assume!(l != r);
        let exact = violates_ellipse_property_exact(&s, &t, &l, &r, rho);
        match violates_ellipse_property(&s, &t, &l, &r, rho) {
            EllipseCheck::Violates => prop_assert!(exact),
            EllipseCheck::Satisfies => prop_assert!(!exact),
            EllipseCheck::Undecided => {}
        }
    }
}

#[test]
fn ellipse_boundary_is_decided_exactly() {
    // s sits on the ellipse with foci l, r and rho = 2: the detour equals rho * d(l, r).
    let l = Point::new(0.0, 0.0);
    let r = Point::new(6.0, 0.0);
    let s = Point::new(3.0, 4.0);
    let t = Point::new(3.0, -4.0);
    let rho = 10.0 / 6.0;
    let exact = violates_ellipse_property_exact(&s, &t, &l, &r, rho);
    // rho is not representable, so the answer depends on which side of 5/3 the double lies.
    let q = rat(rho);
    assert_eq!(
        exact,
        q * BigRational::from_integer(6.into()) <= BigRational::from_integer(10.into())
    );
    assert!(violates_ellipse_property_exact(&s, &t, &l, &r, 1.5));
    assert!(!violates_ellipse_property_exact(&s, &t, &l, &r, 2.0));
}

#[test]
fn dimacs_header_matches_body() {
    for seed in 0..5 {
        let pts = random_points(12, 50, seed);
        let sg = Supergraph::new(postprocess(&pts, valid_edges(&pts), f64::INFINITY));
        let mut model = EdgeModel::new(&sg);
        model.require_any(&[0, 1]);
        let text = model.to_dimacs();
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
        assert_eq!(&header[..2], &["p", "cnf"]);
        let vars: usize = header[2].parse().unwrap();
        let clauses: usize = header[3].parse().unwrap();
        assert_eq!(vars, sg.len());
        assert_eq!(clauses, model.clause_count());
        let body: Vec<&str> = lines.collect();
        assert_eq!(body.len(), clauses);
        for c in body {
            let lits: Vec<i64> = c.split_whitespace().map(|w| w.parse().unwrap()).collect();
            assert_eq!(lits.last(), Some(&0));
            for &l in &lits[..lits.len() - 1] {
                assert!(l != 0 && l.unsigned_abs() as usize <= vars, "seed {seed}: literal {l}");
            }
        }
    }
}

#[test]
fn exact_square_distances_are_integers_on_grid() {
    let pts = random_points(30, 1000, 3);
    for a in &pts {
        for b in &pts {
            let d = sq_dist_exact(a, b);
            assert!(d.is_integer());
            assert_eq!(
                d.to_integer().to_f64().unwrap().partial_cmp(&a.sq_dist_f64(b)),
                Some(Ordering::Equal)
            );
        }
    }
}
