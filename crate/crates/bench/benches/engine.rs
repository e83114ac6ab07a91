//! Criterion benchmarks over the hot paths: chain construction, subgroup
//! lattice enumeration, the jordan report, and the expression parser.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use jordan_core::catalog;
use jordan_core::config::EngineConfig;
use jordan_core::construct;
use jordan_core::dsl;
use jordan_core::jordan;
use jordan_core::subgroups;
use jordan_core::PermGroup;

fn chain_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain");
    let cases: Vec<(&str, Vec<jordan_core::Permutation>)> = vec![
        ("S5", construct::symmetric(5).unwrap().generators().to_vec()),
        ("A6", construct::alternating(6).unwrap().generators().to_vec()),
        (
            "swap-A5",
            catalog::shipped()
                .group("swap-A5")
                .unwrap()
                .generators()
                .to_vec(),
        ),
    ];
    for (name, gens) in cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), &gens, |b, gens| {
            b.iter(|| PermGroup::from_generators(black_box(gens.clone())).unwrap().order())
        });
    }
    group.finish();
}

fn subgroup_lattice(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let mut group = c.benchmark_group("lattice");
    group.sample_size(20);
    for label in ["S5", "heis-108", "d4-witness-160"] {
        let g = catalog::shipped().group(label).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(label), g, |b, g| {
            b.iter(|| subgroups::all_subgroups(black_box(g), &cfg).unwrap().len())
        });
    }
    group.finish();
}

fn jordan_report(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let mut group = c.benchmark_group("jordan");
    group.sample_size(20);
    for label in ["S5", "heis-108"] {
        let g = catalog::shipped().group(label).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(label), g, |b, g| {
            b.iter(|| jordan::jordan_report(black_box(g), label, &cfg).unwrap().nu)
        });
    }
    // the socle shortcut on the order-7200 witness
    let swap = catalog::shipped().group("swap-A5").unwrap();
    group.bench_function("swap-A5-socle", |b| {
        b.iter(|| jordan::nu(black_box(swap), &cfg).unwrap().value)
    });
    group.finish();
}

fn parser(c: &mut Criterion) {
    c.bench_function("parse-swap-expr", |b| {
        b.iter(|| dsl::parse(black_box("(A5 * A5) : C2 [swap]")).unwrap())
    });
}

criterion_group!(benches, chain_construction, subgroup_lattice, jordan_report, parser);
criterion_main!(benches);
