use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use posetcausal::blockmat::{structured_inverse, BlockMatrix};
use posetcausal::rational::int;
use posetcausal::reduction::poset_reduce;
use posetcausal::sim::{simulate, verify_trajectory_decomposition};
use posetcausal::{corpus, observability, reachability, verify_duality, Matrix, ReductionVariant};
use posetcausal_bench::{chain_system, random_input, random_poset_system};

fn corpus_examples(c: &mut Criterion) {
    let large = corpus::system("exLargeEx").unwrap();
    let obs = corpus::system("exObsEx").unwrap();
    c.bench_function("reachability profile, eleven-state example", |b| {
        b.iter(|| reachability::profile(&large).unwrap())
    });
    c.bench_function("observability profile, eleven-state example", |b| {
        b.iter(|| observability::profile(&obs).unwrap())
    });
    c.bench_function("duality identities, eleven-state example", |b| {
        b.iter(|| verify_duality(&obs).unwrap())
    });
}

fn scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain");
    group.sample_size(10);
    for p in [2, 4, 6] {
        let sys = chain_system(p, p as u64);
        group.bench_with_input(BenchmarkId::new("reachability", p), &sys, |b, s| {
            b.iter(|| reachability::profile(s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("duality", p), &sys, |b, s| b.iter(|| verify_duality(s).unwrap()));
        for v in ReductionVariant::ALL {
            group.bench_with_input(BenchmarkId::new(format!("reduce {v}"), p), &sys, |b, s| {
                b.iter(|| poset_reduce(s, v).unwrap())
            });
        }
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let sys = random_poset_system(6, 0.5, 5);
    let n = sys.n().clone();
    let shifted = sys.a().add(&Matrix::identity(n.total()).scale(&int(30))).unwrap();
    let k = BlockMatrix::new(shifted, n.clone(), n).unwrap();
    c.bench_function("structured inverse, six nodes", |b| {
        b.iter(|| structured_inverse(&k, sys.poset()).unwrap())
    });
}

fn simulation(c: &mut Criterion) {
    let sys = random_poset_system(5, 0.5, 9);
    let (x0, u) = random_input(&sys, 1e-2, 100, 9);
    c.bench_function("simulate 100 steps", |b| b.iter(|| simulate(&sys, &x0, &u).unwrap()));
    c.bench_function("trajectory decomposition 100 steps", |b| {
        b.iter(|| verify_trajectory_decomposition(&sys, &x0, &u, 1e-8).unwrap())
    });
}

criterion_group!(benches, corpus_examples, scaling, structure, simulation);
criterion_main!(benches);
