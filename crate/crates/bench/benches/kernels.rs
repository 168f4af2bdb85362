use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use stratikit::families::{centraliser_algebra, catalogue_example, schur_block};
use stratikit::*;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn rref(c: &mut Criterion) {
    let f = fp();
    let vals: Vec<i64> = (0..60 * 60).map(|k| (k * 7919 % 101) as i64 - 50).collect();
    let m = Matrix::from_i64(&f, 60, 60, &vals).unwrap();
    c.bench_function("rref 60x60 F_32003", |b| b.iter(|| black_box(&m).rank()));
}

fn compile(c: &mut Criterion) {
    let f = fp();
    c.bench_function("compile recollement-3v", |b| {
        b.iter(|| catalogue_example(ExampleId::Recollement3v, black_box(&f)).unwrap())
    });
    c.bench_function("compile schur block m=4", |b| b.iter(|| schur_block(black_box(4), &f).unwrap()));
}

fn homology(c: &mut Criterion) {
    let f = fp();
    let a = catalogue_example(ExampleId::GigsKxy, &f).unwrap().algebra;
    let s = ModuleRep::simple(&a, 0);
    let reg = ModuleRep::regular(&a);
    c.bench_function("Ext^0..5(S1, A) gigs-kxy", |b| b.iter(|| ext_dims(black_box(&s), &reg, 5).unwrap()));
    c.bench_function("gorenstein dim gigs-kxy", |b| b.iter(|| gorenstein_dim(black_box(&a), 12).unwrap()));
}

fn tilting(c: &mut Criterion) {
    let f = fp();
    let j = JordanType::new(5, vec![1, 2, 3, 4]).unwrap();
    let g = centraliser_algebra(&j, &f).unwrap();
    let order = g.default_order();
    let settings = Settings::default();
    c.bench_function("standard family cent(5,{1,2,3,4})", |b| {
        b.iter(|| standard_family(black_box(&g.algebra), &order).unwrap())
    });
    let s = standard_family(&g.algebra, &order).unwrap();
    c.bench_function("characteristic tilting cent(5,{1,2,3,4})", |b| {
        b.iter(|| characteristic_tilting(black_box(&s), &settings).unwrap())
    });
}

criterion_group!(benches, rref, compile, homology, tilting);
criterion_main!(benches);
