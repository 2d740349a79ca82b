use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use scatlin_bench::{field, first_fh};
use scatlin_core::equiv::{self, Method, SearchOptions};
use scatlin_core::family;
use scatlin_core::mrd;
use scatlin_core::scatter;

fn field_ops(c: &mut Criterion) {
    let f = field(5);
    let (x, y) = (f.gen_pow(1234), f.gen_pow(777));
    c.bench_function("field/add", |b| {
        b.iter(|| f.add(black_box(x), black_box(y)))
    });
    c.bench_function("field/mul", |b| {
        b.iter(|| f.mul(black_box(x), black_box(y)))
    });
    c.bench_function("field/inv", |b| b.iter(|| f.inv(black_box(x))));
    c.bench_function("field/frobenius", |b| {
        b.iter(|| f.frobenius(black_box(x), 3))
    });
    let big = scatlin_core::Field::new(29, 1).unwrap();
    let (u, v) = (big.gen_pow(123_456), big.gen_pow(98_765));
    c.bench_function("field/mul_poly_q29", |b| {
        b.iter(|| big.mul(black_box(u), black_box(v)))
    });
}

fn scatter_scans(c: &mut Criterion) {
    let f = field(5);
    let p = family::case1(&f);
    let mut g = c.benchmark_group("scatter_q5");
    g.sample_size(10);
    g.bench_function("weight_spectrum", |b| {
        b.iter(|| scatter::weight_spectrum(&f, black_box(&p)))
    });
    g.bench_function("dickson_scan", |b| {
        b.iter(|| scatter::is_scattered_dickson(&f, black_box(&p)))
    });
    g.finish();
}

fn equiv_slice(c: &mut Criterion) {
    let f = field(3);
    let fh = first_fh(&f);
    let pr = family::build(
        &f,
        &family::FamilySpec::plain(family::FamilyTag::Pseudoregulus),
    )
    .unwrap();
    let opts = SearchOptions {
        method: Method::Exhaustive,
        budget: Some(200_000),
        resume: None,
    };
    let mut g = c.benchmark_group("equiv_q3");
    g.sample_size(10);
    g.bench_function("exhaustive_200k_triples", |b| {
        b.iter(|| equiv::gl_equivalent(&f, black_box(&fh), &pr, &opts).unwrap())
    });
    let lin = SearchOptions {
        method: Method::Linearized,
        ..Default::default()
    };
    g.bench_function("linearized_full", |b| {
        b.iter(|| equiv::gl_equivalent(&f, black_box(&fh), &pr, &lin).unwrap())
    });
    g.finish();
}

fn mrd_distribution(c: &mut Criterion) {
    let f = field(3);
    let code = mrd::code_from(&f, &first_fh(&f)).unwrap();
    let mut g = c.benchmark_group("mrd_q3");
    g.sample_size(10);
    g.bench_function("orbit_distribution", |b| {
        b.iter(|| mrd::rank_distribution(&f, black_box(&code)))
    });
    g.finish();
}

criterion_group!(
    benches,
    field_ops,
    scatter_scans,
    equiv_slice,
    mrd_distribution
);
criterion_main!(benches);
