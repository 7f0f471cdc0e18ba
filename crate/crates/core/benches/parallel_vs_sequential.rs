use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use graphcap::bipartite::{
    code_from_graph, monte_carlo_event_with, rejection_search_with, sample_bipartite,
    ConstraintSpec, McEvent, ModelParams,
};
use graphcap::capacity::{alpha_exact_with, restricted_power, SimpleGraph, DEFAULT_VERTEX_CAP};
use graphcap::gf2core::DEFAULT_ENUMERATION_CAP;
use graphcap::Backend;

const BACKENDS: [(&str, Backend); 2] = [
    ("sequential", Backend::Sequential),
    ("parallel", Backend::Parallel),
];

fn min_distance(c: &mut Criterion) {
    // n = 40 with 18 checks: a 2^22 codeword walk.
    let params = ModelParams {
        n: 40,
        epsilon: 0.45,
        p: 0.25,
        ..Default::default()
    };
    let code = code_from_graph(&sample_bipartite(&params, 11).unwrap());
    let mut group = c.benchmark_group("min_distance");
    group.sample_size(10);
    for (name, backend) in BACKENDS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                code.min_distance_with(backend, DEFAULT_ENUMERATION_CAP)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let params = ModelParams::default();
    let mut group = c.benchmark_group("monte_carlo_distance");
    group.sample_size(10);
    for (name, backend) in BACKENDS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                monte_carlo_event_with(
                    backend,
                    &params,
                    McEvent::MinDistanceGeTarget,
                    &ConstraintSpec::Always,
                    1000,
                    5,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let params = ModelParams::default();
    let mut group = c.benchmark_group("search_hn");
    group.sample_size(10);
    for (name, backend) in BACKENDS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                rejection_search_with(backend, &params, &ConstraintSpec::Hn, black_box(7), 2000)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn mis(c: &mut Criterion) {
    let pg = restricted_power(&SimpleGraph::cycle(5).unwrap(), 3, 2).unwrap();
    let mut group = c.benchmark_group("mis_c5_r3_k2");
    group.sample_size(10);
    for (name, backend) in BACKENDS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| alpha_exact_with(&pg.graph, backend, DEFAULT_VERTEX_CAP).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, min_distance, monte_carlo, search, mis);
criterion_main!(benches);
