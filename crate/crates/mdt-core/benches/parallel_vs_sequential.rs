use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mdt_core::dilation::exact_dilation;
use mdt_core::enumeration::{enumerate_candidates, EnumerationConfig};
use mdt_core::geom::delaunay;
use mdt_core::instances::random_points;
use mdt_core::par::with_threads;

const MODES: [(&str, Option<usize>); 2] = [("sequential", Some(1)), ("parallel", None)];

fn dilation(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact_dilation");
    g.sample_size(10);
    for n in [200, 800] {
        let pts = random_points(n, 1_000_000, 1);
        let t = delaunay(&pts).unwrap();
        for (name, threads) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| with_threads(threads, || exact_dilation(&pts, t.edges()).unwrap()))
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_candidates");
    g.sample_size(10);
    for n in [200, 800] {
        let pts = random_points(n, 1_000_000, 2);
        let rho = exact_dilation(&pts, delaunay(&pts).unwrap().edges())
            .unwrap()
            .value
            .interval()
            .hi();
        let cfg = EnumerationConfig::default();
        for (name, threads) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| with_threads(threads, || enumerate_candidates(&pts, rho, &cfg).unwrap()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, dilation, enumeration);
criterion_main!(benches);
