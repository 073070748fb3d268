use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gaq_core::catalog::{self, GroupSpec};
use gaq_core::classify;
use gaq_core::iso::{brute_force_iso, criterion_iso, decide};
use gaq_core::morphism::AutomorphismGroup;
use gaq_core::AlexanderQuandle;

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("aut");
    for name in ["D6", "SL23", "C2xC2xC2xC2"] {
        let g = catalog::build(&name.parse::<GroupSpec>().unwrap()).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| AutomorphismGroup::with_bound(black_box(&g), 120).unwrap().len())
        });
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let q8 = AlexanderQuandle::from_names("Q8", "psi3").unwrap();
    let d4 = AlexanderQuandle::from_names("D4", "phi:3,1").unwrap();
    c.bench_function("brute Q8 psi3 vs D4 phi31", |b| {
        b.iter(|| brute_force_iso(black_box(&q8.quandle), black_box(&d4.quandle)).unwrap())
    });
    c.bench_function("criterion Q8 psi3 vs D4 phi31", |b| {
        b.iter(|| criterion_iso(black_box(&q8), black_box(&d4)).unwrap())
    });
    let left = AlexanderQuandle::from_names("C2xQ8", "pair:id|psi4").unwrap();
    let right = gaq_core::verify::beyond_pair_partner(&left).unwrap().unwrap();
    c.bench_function("decide order 16 pair", |b| {
        b.iter(|| decide(black_box(&left), black_box(&right)).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(20);
    for n in [8, 12] {
        group.bench_function(format!("order {n}"), |b| {
            b.iter(|| classify::classify_order(black_box(n), false).unwrap().class_count())
        });
    }
    group.finish();
}

criterion_group!(benches, automorphisms, isomorphism, classification);
criterion_main!(benches);
