//! Measures the parallel execution strategy against the sequential one on
//! the three heaviest enumeration workloads in the crate.
//!
//! Each group pins its inputs with a fixed seed, so both strategies see
//! identical work. The interesting workloads all fan out over independent
//! branches: the six-vertex partition sum splits on the first lattice row,
//! the boxed Schur sum splits over shapes inside the bounding box, and the
//! plane partition count splits over admissible first columns.
//!
//! Run with `cargo bench --bench parallel`. Building with
//! `--no-default-features` degrades the parallel strategy to sequential
//! execution, which is a handy way to confirm the comparison baseline.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taubethe::exec::Strategy;
use taubethe::qzero::{boxed_schur_sum_with, plane_partition_count_with};
use taubethe::scalar::{Mode, Scalar};
use taubethe::sixvertex::{z_bruteforce_with, SixVertexParams};

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

/// Exact brute-force partition sums over all domain wall configurations.
fn bench_partition_sum(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut group = c.benchmark_group("six_vertex_partition_sum");
    group.sample_size(10);
    for n in [4usize, 5] {
        let p = SixVertexParams::random_exact(n, &mut rng);
        for strategy in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(strategy.to_string(), n), &p, |b, p| {
                b.iter(|| z_bruteforce_with(p, strategy).unwrap())
            });
        }
    }
    group.finish();
}

/// Sums of paired Schur polynomials over every shape in an n x N box.
fn bench_boxed_schur_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("boxed_schur_sum");
    group.sample_size(10);
    for (n, box_height) in [(3usize, 6usize), (4, 6)] {
        let a: Vec<Scalar> = (0..n).map(|i| Mode::Exact.ratio(i as i64 + 1, i as i64 + 2)).collect();
        let b: Vec<Scalar> = (0..n).map(|i| Mode::Exact.ratio(i as i64 + 2, i as i64 + 1)).collect();
        let id = format!("{n}x{box_height}");
        for strategy in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(strategy.to_string(), &id),
                &(&a, &b),
                |bench, (a, b)| {
                    bench.iter(|| boxed_schur_sum_with(strategy, n, box_height, a, b).unwrap())
                },
            );
        }
    }
    group.finish();
}

/// Backtracking enumeration of plane partitions in a box.
fn bench_plane_partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("plane_partitions");
    for (a, b, h) in [(4usize, 4usize, 3usize), (4, 4, 4)] {
        let id = format!("{a}x{b}x{h}");
        for strategy in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(strategy.to_string(), &id),
                &(a, b, h),
                |bench, &(a, b, h)| {
                    bench.iter(|| plane_partition_count_with(strategy, a, b, h).unwrap())
                },
            );
        }
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_partition_sum,
    bench_boxed_schur_sum,
    bench_plane_partitions
);
criterion_main!(benches);
