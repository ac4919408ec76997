//! Parallel vs sequential throughput on the data-parallel sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orthoeps::exactmath::gauss::{quadratic_sign_sweep, quadratic_sign_sweep_seq};

fn primes_up_to(n: u64) -> Vec<u64> {
    (3..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn bench_gauss_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratic_gauss_sweep");
    group.sample_size(10);
    for bound in [60u64, 120] {
        let primes = primes_up_to(bound);
        group.bench_with_input(BenchmarkId::new("parallel", bound), &primes, |b, ps| {
            b.iter(|| quadratic_sign_sweep(ps))
        });
        group.bench_with_input(BenchmarkId::new("sequential", bound), &primes, |b, ps| {
            b.iter(|| quadratic_sign_sweep_seq(ps))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_gauss_sweep);
criterion_main!(benches);
