use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torusbord::corpus;
use torusbord::localization::{laurent_check, vertex_data};
use torusbord::quasitoric::{add_pairs, realize_dim2};
use torusbord::{min_support_search, QuasitoricPair, TorusGraph};

fn pairs(n: usize, count: usize) -> Vec<QuasitoricPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    (0..count)
        .map(|_| corpus::random_pair(n, &mut rng))
        .collect()
}

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomial");
    for n in 1..=3 {
        let ps = pairs(n, 16);
        let graphs: Vec<TorusGraph> = ps.iter().map(|q| q.torus_graph().unwrap()).collect();
        group.bench_with_input(BenchmarkId::new("quasitoric", n), &ps, |b, ps| {
            b.iter(|| {
                ps.iter().for_each(|q| {
                    black_box(q.quasitoric_polynomial().unwrap());
                })
            })
        });
        group.bench_with_input(BenchmarkId::new("torus_graph", n), &graphs, |b, gs| {
            b.iter(|| {
                gs.iter().for_each(|g| {
                    black_box(g.torus_polynomial().unwrap());
                })
            })
        });
        let hs: Vec<_> = graphs
            .iter()
            .map(|g| g.torus_polynomial().unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::new("check_kn", n), &hs, |b, hs| {
            b.iter(|| hs.iter().filter(|h| h.in_kn().unwrap()).count())
        });
        group.bench_with_input(BenchmarkId::new("from_polynomial", n), &hs, |b, hs| {
            b.iter(|| {
                hs.iter().for_each(|h| {
                    black_box(TorusGraph::from_polynomial(h).unwrap());
                })
            })
        });
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let instances: Vec<_> = (0..8)
        .map(|_| corpus::random_connected_sum_instance(3, &mut rng).unwrap())
        .collect();
    c.bench_function("connected_sum/3", |b| {
        b.iter(|| {
            for (q1, v, q2, w) in &instances {
                black_box(QuasitoricPair::connected_sum(q1, *v, q2, *w).unwrap());
            }
        })
    });
    let hex = corpus::hexagon_pair();
    let other = pairs(2, 1).remove(0);
    c.bench_function("add_pairs/2", |b| {
        b.iter(|| add_pairs(black_box(&hex), &other).unwrap())
    });
    let h = corpus::random_k2_element(&mut rng).unwrap();
    c.bench_function("realize/2", |b| {
        b.iter(|| realize_dim2(black_box(&h)).unwrap())
    });
}

fn localization(c: &mut Criterion) {
    let mut group = c.benchmark_group("localize");
    for n in 1..=3 {
        let g = pairs(n, 1).remove(0).torus_graph().unwrap();
        let data = vertex_data(&g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, data| {
            b.iter(|| laurent_check(n, data, 1, 2, 0).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    c.bench_function("min_support_search/2x1", |b| {
        b.iter(|| min_support_search(2, 1).unwrap())
    });
}

criterion_group!(benches, polynomials, constructions, localization, search);
criterion_main!(benches);
