//! Sequential against rayon execution for the two hot paths: assembling and
//! reducing the Coder complex, and drawing batches of deformations.
//!
//! Built with `--no-default-features` both variants run sequentially, which
//! gives the baseline for the fallback build.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coderco::catalog;
use coderco::cohomology::coder_cohomology_with;
use coderco::comodule::coadjoint;
use coderco::par::Exec;
use coderco::random::Order1Sampler;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("coder_cohomology");
    group.sample_size(10);
    for (family, args) in [("divided_power", vec![6]), ("comatrix", vec![3]), ("tensor", vec![2, 2])] {
        let ex = catalog::build(family, &args, false).unwrap();
        let mp = coadjoint(&ex.pair);
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, &ex.name), &exec, |b, &exec| {
                b.iter(|| coder_cohomology_with(black_box(&ex.pair), &mp, 3, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_batch");
    group.sample_size(10);
    for (family, args) in [("divided_power", vec![4]), ("comatrix", vec![2])] {
        let ex = catalog::build(family, &args, false).unwrap();
        let sampler = Order1Sampler::new(&ex.pair).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, &ex.name), &exec, |b, &exec| {
                b.iter(|| sampler.sample_batch(black_box(256), 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, cohomology, sampling);
criterion_main!(benches);
