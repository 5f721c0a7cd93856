use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sufree::atoms::atoms_with;
use sufree::classes::{enumerate_class_with, wsf_generators};
use sufree::exec::Limits;
use sufree::semigroup::{generate_with, DEFAULT_MAX_ELEMENTS};
use sufree::verify::verify_all;
use sufree::witnesses::d6;
use sufree::{Exec, SuffixFreeClass};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn class_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_vsf_7");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_class_with(black_box(7), SuffixFreeClass::Vsf, 8, exec).unwrap())
        });
    }
    group.finish();
}

fn semigroup_closure(c: &mut Criterion) {
    let gens = wsf_generators(8).unwrap();
    let mut group = c.benchmark_group("generate_wsf_8");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| generate_with(8, black_box(&gens), DEFAULT_MAX_ELEMENTS, exec).unwrap())
        });
    }
    group.finish();
}

fn atom_sweep(c: &mut Criterion) {
    let d = d6(12).unwrap();
    let mut group = c.benchmark_group("atoms_d6_12");
    for (name, exec) in STRATEGIES {
        group
            .bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| atoms_with(black_box(&d), exec).unwrap()));
    }
    group.finish();
}

fn full_sweep(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_all(&limits, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, class_enumeration, semigroup_closure, atom_sweep, full_sweep);
criterion_main!(benches);
