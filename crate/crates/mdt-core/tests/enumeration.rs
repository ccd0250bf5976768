use mdt_core::enumeration::{brute_force_candidates, enumerate_candidates, postprocess, EnumerationConfig};
use mdt_core::geom::{delaunay, Point};
use mdt_core::instances::random_points;

fn dilation_f64(points: &[Point], edges: &[mdt_core::geom::Edge]) -> f64 {
    // Floyd-Warshall in f64; only used to pick a bound.
    let n = points.len();
    let mut d = vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for e in edges {
        let w = points[e.u()].dist(&points[e.v()]);
        d[e.u() * n + e.v()] = w;
        d[e.v() * n + e.u()] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let v = d[i * n + k] + d[k * n + j];
                if v < d[i * n + j] {
                    d[i * n + j] = v;
                }
            }
        }
    }
    let mut best = 1.0f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max(d[i * n + j] / points[i].dist(&points[j]));
        }
    }
    best
}

#[test]
fn enumeration_contains_brute_force_small() {
    for seed in 0..12 {
        let pts = random_points(12 + seed as usize * 3, 100, seed);
        let dt = delaunay(&pts).unwrap();
        let rho = dilation_f64(&pts, dt.edges()) * 1.0001;
        let brute = brute_force_candidates(&pts, rho).unwrap();
        let fast = enumerate_candidates(&pts, rho, &EnumerationConfig::default()).unwrap();
        for e in &brute {
            assert!(fast.edges.binary_search(e).is_ok(), "seed {seed}: missing {e:?}");
        }
        let post = postprocess(&pts, fast.edges.clone(), rho);
        for e in &brute {
            assert!(post.index_of(*e).is_some(), "seed {seed}: postprocess dropped {e:?}");
        }
        for e in dt.edges() {
            assert!(post.index_of(*e).is_some() || rho < 1.0);
        }
        eprintln!(
            "n={} brute={} enum={} post={}",
            pts.len(),
            brute.len(),
            fast.edges.len(),
            post.len()
        );
    }
}
