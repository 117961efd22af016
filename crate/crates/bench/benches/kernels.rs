use criterion::{criterion_group, criterion_main, Criterion};
use ppsort_bench::{dense_matrix, scrambled_a3_module};
use ppsort_core::artheory::{build_catalogue, Bounds};
use ppsort_core::funcat::{auslander_of, functor_catalogue};
use ppsort_core::quiver::{a3, dual_numbers};
use ppsort_core::rep::decompose;
use ppsort_core::tensorcat::{tensor_table, DiagonalCharTwo};
use ppsort_core::FieldSpec;
use std::hint::black_box;

fn linear_algebra(c: &mut Criterion) {
    let m = dense_matrix(12);
    c.bench_function("rref 12x12 over Q", |b| b.iter(|| black_box(&m).rref()));
    c.bench_function("kernel 12x12 over Q", |b| {
        b.iter(|| black_box(&m).kernel_basis())
    });
}

fn catalogues(c: &mut Criterion) {
    let alg = a3(FieldSpec::Rationals);
    c.bench_function("A3 module catalogue", |b| {
        b.iter(|| build_catalogue(black_box(&alg), &Bounds::default()).unwrap())
    });
    c.bench_function("A3 functor catalogue", |b| {
        b.iter(|| {
            let aus = auslander_of(black_box(&alg), &Bounds::default()).unwrap();
            functor_catalogue(&aus, &Bounds::default()).unwrap()
        })
    });
}

fn decomposition(c: &mut Criterion) {
    let x = scrambled_a3_module(3);
    c.bench_function("decompose P1^3 + S2^3 over A3", |b| {
        b.iter(|| decompose(black_box(&x)).unwrap())
    });
}

fn tensor(c: &mut Criterion) {
    let alg = dual_numbers(FieldSpec::prime(2).unwrap());
    let aus = auslander_of(&alg, &Bounds::default()).unwrap();
    let fc = functor_catalogue(&aus, &Bounds::default()).unwrap();
    c.bench_function("diagonal tensor table over F2[e]", |b| {
        b.iter(|| tensor_table(black_box(&aus), &fc, &DiagonalCharTwo, &["T", "S"]).unwrap())
    });
}

criterion_group!(benches, linear_algebra, catalogues, decomposition, tensor);
criterion_main!(benches);
