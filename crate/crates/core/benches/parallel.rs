use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqlab::hyp::{HPoint, UnitTangent};
use eqlab::lamination::{discretize_band, earthquake_map, UniformBand};
use eqlab::par;

fn earthquake_points(c: &mut Criterion) {
    let lam = discretize_band(&UniformBand::default(), 64).unwrap();
    let base = UnitTangent::at(&HPoint::new(-3.0, 1.0).unwrap(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut group = c.benchmark_group("earthquake_points");
    for n in [256usize, 4096] {
        let pts: Vec<HPoint> = (0..n)
            .map(|_| HPoint::new(rng.random_range(-4.0..4.0), rng.random_range(0.05..3.0)).unwrap())
            .collect();
        let work = |p: &HPoint| earthquake_map(&lam, 0.5, &base, p).ok();
        group.bench_with_input(BenchmarkId::new("parallel", n), &pts, |b, pts| {
            b.iter(|| par::map(pts, work))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &pts, |b, pts| {
            b.iter(|| par::map_sequential(pts, work))
        });
    }
    group.finish();
}

criterion_group!(benches, earthquake_points);
criterion_main!(benches);
