use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use k3niem::cases::{record, verify_all};
use k3niem::catalog::build_niemeier;
use k3niem::linalg::{smith_normal_form, Int, IntMatrix};
use k3niem::padic::jordan_decompose;
use k3niem::{coinvariant_lattice, niemeier};

/// Deterministic dense 24×24 matrix with small entries.
fn dense_matrix(seed: u64) -> IntMatrix {
    let mut x = seed;
    let data = (0..24 * 24)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Int::from((x >> 59) as i64 - 16)
        })
        .collect();
    IntMatrix::from_vec(24, 24, data)
}

fn bench_smith(c: &mut Criterion) {
    let m = dense_matrix(7);
    c.bench_function("smith_normal_form 24x24", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn bench_catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_niemeier");
    for i in [1, 13, 23] {
        group.bench_with_input(BenchmarkId::from_parameter(i), &i, |b, &i| b.iter(|| build_niemeier(i).unwrap()));
    }
    group.finish();
    let n23 = &niemeier(23).unwrap().lattice;
    c.bench_function("root_components N23", |b| b.iter(|| n23.root_components().unwrap()));
}

fn bench_coinvariant(c: &mut Criterion) {
    let r = record("Case23/n=81/H_{81,1}").unwrap();
    let n = niemeier(r.niemeier_index).unwrap();
    let gens = r.resolve_generators().unwrap();
    c.bench_function("coinvariant_lattice n=81", |b| b.iter(|| coinvariant_lattice(n, black_box(&gens)).unwrap()));
    let l = coinvariant_lattice(n, &gens).unwrap().lattice;
    let g = l.int_gram().unwrap();
    c.bench_function("jordan_decompose p=2 rank 19", |b| b.iter(|| jordan_decompose(black_box(&g), 2).unwrap()));
}

fn bench_cases(c: &mut Criterion) {
    let mut group = c.benchmark_group("cases");
    group.sample_size(10);
    group.bench_function("verify Case13", |b| b.iter(|| verify_all(Some("Case13/*")).unwrap()));
    group.bench_function("verify Case22", |b| b.iter(|| verify_all(Some("Case22/*")).unwrap()));
    group.finish();
}

criterion_group!(linalg, bench_smith);
criterion_group!(catalog, bench_catalog);
criterion_group!(groups, bench_coinvariant);
criterion_group!(cases, bench_cases);
criterion_main!(linalg, catalog, groups, cases);
