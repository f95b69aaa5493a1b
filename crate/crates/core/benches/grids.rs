//! Grid-sweep benchmarks comparing the rayon path against a single-threaded
//! pool. Build without default features for a fully sequential library; here
//! the one-thread pool stands in for that baseline within a single binary.

use criterion::{criterion_group, criterion_main, Criterion};
use gbz_spectra::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn prototype() -> SymbolCoefficients {
    SymbolCoefficients::new(
        vec![c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(-2.0, 0.0), c(1.0, 0.0)],
        vec![c(-0.9, 0.0), c(-0.1, 0.0)],
    )
    .unwrap()
}

fn pseudospectrum_workload() -> PseudospectrumGrid {
    let rect = Rectangle::new(-2.5, 2.5, -1.5, 1.5).unwrap();
    pseudospectrum_grid(&prototype(), 6, rect, (24, 16)).unwrap()
}

fn sample_workload() -> SpectralSet {
    toeplitz_spectrum_sample(&prototype(), 96, 12).unwrap()
}

#[cfg(feature = "parallel")]
fn bench_grids(criterion: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let full = rayon::ThreadPoolBuilder::new().build().unwrap();

    let mut group = criterion.benchmark_group("pseudospectrum_grid");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| single.install(pseudospectrum_workload)));
    group.bench_function("parallel", |b| b.iter(|| full.install(pseudospectrum_workload)));
    group.finish();

    let mut group = criterion.benchmark_group("toeplitz_spectrum_sample");
    group.sample_size(20);
    group.bench_function("sequential", |b| b.iter(|| single.install(sample_workload)));
    group.bench_function("parallel", |b| b.iter(|| full.install(sample_workload)));
    group.finish();
}

#[cfg(not(feature = "parallel"))]
fn bench_grids(criterion: &mut Criterion) {
    let mut group = criterion.benchmark_group("pseudospectrum_grid");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(pseudospectrum_workload));
    group.finish();

    let mut group = criterion.benchmark_group("toeplitz_spectrum_sample");
    group.sample_size(20);
    group.bench_function("sequential", |b| b.iter(sample_workload));
    group.finish();
}

criterion_group!(benches, bench_grids);
criterion_main!(benches);
