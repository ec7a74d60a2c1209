use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use splab::eigencount::{count_bound_states_fn, poschl_teller, EigencountConfig};
use splab::glm::{neumann_solve, NeumannConfig, SpectralData};
use splab::numerics::upper_incomplete_gamma;

fn gamma(c: &mut Criterion) {
    c.bench_function("upper_incomplete_gamma sweep", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..100 {
                let z = 0.3 * i as f64;
                acc += upper_incomplete_gamma(black_box(0.5), z).unwrap();
            }
            acc
        })
    });
}

fn neumann(c: &mut Criterion) {
    let sd = SpectralData::single(1.0, 1.0).unwrap();
    let cfg = NeumannConfig::default();
    let mut group = c.benchmark_group("glm");
    group.sample_size(10);
    group.bench_function("neumann_solve 201x201 mu=6", |b| {
        b.iter(|| neumann_solve(black_box(&sd), &cfg).unwrap())
    });
    group.finish();
}

fn eigencount(c: &mut Criterion) {
    let cfg = EigencountConfig::default();
    c.bench_function("count_bound_states lambda=3", |b| {
        b.iter(|| {
            count_bound_states_fn(poschl_teller(black_box(3.0)), &cfg)
                .unwrap()
                .count
        })
    });
}

criterion_group!(benches, gamma, neumann, eigencount);
criterion_main!(benches);
