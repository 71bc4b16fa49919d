//! Compares one worker against the full pool on solving and on the
//! matching stage. Build with `--no-default-features` for the sequential
//! fallback; the group names carry the build flavour.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zeromatch::bench::{generate_instance, BenchConfig, Family};
use zeromatch::bound::{compute_params, EpsilonMode};
use zeromatch::isolation::isolate_real_roots;
use zeromatch::matcher::{match_all, MatchOptions};
use zeromatch::par;
use zeromatch::pipeline::{solve, SystemInput};
use zeromatch::resultant::project;

const FLAVOUR: &str = if cfg!(feature = "parallel") { "rayon" } else { "sequential" };

fn dense(degree: u32) -> SystemInput {
    let config = BenchConfig { family: Family::Dense, seed: 42, ..BenchConfig::default() };
    generate_instance(&config, degree, 0).expect("instance").input
}

fn workers() -> [(&'static str, usize); 2] {
    [("1-worker", 1), ("pool", 0)]
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group(format!("solve/{FLAVOUR}"));
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for degree in [3, 4, 5] {
        let input = dense(degree);
        for (label, w) in workers() {
            let mut input = input.clone();
            input.options.workers = w;
            group.bench_with_input(BenchmarkId::new(label, degree), &input, |b, input| b.iter(|| solve(input).unwrap()));
        }
    }
    group.finish();
}

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group(format!("match_all/{FLAVOUR}"));
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for degree in [4, 5] {
        let SystemInput { f, g, .. } = dense(degree);
        let (px, py) = project(&f, &g).unwrap();
        let params = compute_params(&f, &g, &px.square_free, &py.square_free, EpsilonMode::Safe, None).unwrap();
        let sx = isolate_real_roots(&px.square_free).unwrap();
        let sy = isolate_real_roots(&py.square_free).unwrap();
        let opts = MatchOptions::default();
        for (label, w) in workers() {
            group.bench_function(BenchmarkId::new(label, degree), |b| {
                b.iter(|| par::with_workers(w, || match_all(&f, &g, &sx, &sy, &params, &opts).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_solve, bench_matching);
criterion_main!(benches);
