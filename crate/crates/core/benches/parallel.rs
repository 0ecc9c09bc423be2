use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wildprim::class_module::ClassModule;
use wildprim::enumerator::{self, EnumerateOptions};
use wildprim::tower::TameTower;
use wildprim::verify;
use wildprim::{BaseFieldSpec, Exec, PrecisionPolicy};

const MODES: [(&str, Exec); 2] = [("serial", Exec::Serial), ("parallel", Exec::Parallel)];

fn cases() -> Vec<(&'static str, BaseFieldSpec, u32, Option<usize>)> {
    vec![
        ("Q2-quartic", BaseFieldSpec::qp(2, 1), 2, None),
        ("Q3-nonic", BaseFieldSpec::qp(3, 1), 2, None),
        ("F2t-quartic-B9", BaseFieldSpec::laurent(2, 1), 2, Some(9)),
        ("Q2-octic", BaseFieldSpec::qp(2, 1), 3, None),
    ]
}

// Galois matrices: one class reduction per basis column.
fn class_module(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_module");
    group.sample_size(10);
    for (name, base, n, bound) in cases() {
        let tower = TameTower::build(base, n, PrecisionPolicy::default()).unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &tower, |b, t| {
                b.iter(|| ClassModule::build(black_box(t.clone()), bound, exec).unwrap())
            });
        }
    }
    group.finish();
}

// Whole pipeline with precomputed group classes.
fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, base, n, level_bound) in cases() {
        let tower = TameTower::build(base, n, PrecisionPolicy::default()).unwrap();
        let classes = enumerator::group_classes(&tower, 0).unwrap();
        for (mode, exec) in MODES {
            let opts = EnumerateOptions { level_bound, exec, ..EnumerateOptions::default() };
            group.bench_function(BenchmarkId::new(mode, name), |b| {
                b.iter(|| enumerator::enumerate_full(base, n, opts, Some(classes.clone())).unwrap().records.len())
            });
        }
    }
    group.finish();
}

fn class_map_samples(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_map_samples");
    group.sample_size(10);
    let tower = TameTower::build(BaseFieldSpec::qp(2, 1), 2, PrecisionPolicy::default()).unwrap();
    let module = ClassModule::build(tower, None, Exec::Parallel).unwrap();
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "Q2-quartic-200"), |b| {
            b.iter(|| verify::class_map_properties(&module, 200, 0, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, class_module, enumerate, class_map_samples);
criterion_main!(benches);
