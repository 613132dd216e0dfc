//! Benchmarks for the brute-force axiom scans, sized so the data-parallel
//! dispatch matters. Run `cargo bench` for the default (rayon) build and
//! `cargo bench --no-default-features` for the sequential fallback; the
//! `dispatch/...` and `sequential/...` groups inside a single run compare the
//! raw scan substrate directly.

use criterion::{criterion_group, criterion_main, Criterion};

use qgroupoid::corpus::{groupoid_wba, GroupoidPattern};
use qgroupoid::par::{index_triples, map_collect, map_collect_seq};
use qgroupoid::scalar::Field;
use qgroupoid::wba::{check_wba, wba_to_bialgebroid};

fn field() -> Field {
    Field::prime(7).unwrap()
}

fn bench_check_wba(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_wba");
    for n in [3usize, 4] {
        let w = groupoid_wba(n, &GroupoidPattern::Pair, field()).unwrap();
        group.bench_function(format!("pair{n}_f7"), |b| {
            b.iter(|| {
                let report = check_wba(&w);
                assert!(report.passed());
            })
        });
    }
    let w = groupoid_wba(3, &GroupoidPattern::Pair, Field::Rationals).unwrap();
    group.bench_function("pair3_q", |b| {
        b.iter(|| {
            let report = check_wba(&w);
            assert!(report.passed());
        })
    });
    group.finish();
}

fn bench_derive_bialgebroid(c: &mut Criterion) {
    let mut group = c.benchmark_group("wba_to_bialgebroid");
    group.sample_size(10);
    for n in [2usize, 3] {
        let w = groupoid_wba(n, &GroupoidPattern::Pair, field()).unwrap();
        group.bench_function(format!("pair{n}_f7"), |b| {
            b.iter(|| {
                let b = wba_to_bialgebroid(&w).unwrap();
                assert_eq!(b.total.dim(), n * n);
            })
        });
    }
    group.finish();
}

fn bench_scan_substrate(c: &mut Criterion) {
    // the same workload through the feature-dispatched path and the
    // always-sequential path
    let w = groupoid_wba(4, &GroupoidPattern::Pair, field()).unwrap();
    let a = w.algebra().clone();
    let n = a.dim();
    let triples = index_triples(n, n, n);
    let work = |&(i, j, k): &(usize, usize, usize)| {
        let left = a.mul_vec(&a.mul_basis(i, j), &qgroupoid::linmap::basis_vec(a.field(), n, k));
        let right = a.mul_vec(&qgroupoid::linmap::basis_vec(a.field(), n, i), &a.mul_basis(j, k));
        left == right
    };

    let mut group = c.benchmark_group("associativity_scan_pair4_f7");
    group.bench_function("dispatch", |b| {
        b.iter(|| {
            let results = map_collect(&triples, work);
            assert!(results.into_iter().all(|ok| ok));
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let results = map_collect_seq(&triples, work);
            assert!(results.into_iter().all(|ok| ok));
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_check_wba,
    bench_derive_bialgebroid,
    bench_scan_substrate
);
criterion_main!(benches);
