use std::hint::black_box;

use conecrafter_core::cone::compute_ns;
use conecrafter_core::endo::compute_end;
use conecrafter_core::exact::rat;
use conecrafter_core::pipeline::{parse_document, run, Stage};
use conecrafter_core::reduction::{gauss_reduce, pell_fundamental_unit, BinaryForm};
use conecrafter_core::torus::PolarizedTorus;
use conecrafter_core::wedderburn::decompose;
use criterion::{criterion_group, criterion_main, Criterion};

fn corpus(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/../../corpus/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn arithmetic(c: &mut Criterion) {
    c.bench_function("gauss_reduce", |b| {
        let form = BinaryForm::new(1009, 1999, 991);
        b.iter(|| gauss_reduce(black_box(&form)).unwrap())
    });
    c.bench_function("pell_d_61", |b| {
        b.iter(|| pell_fundamental_unit(black_box(61)).unwrap())
    });
}

fn algebra(c: &mut Criterion) {
    let torus = PolarizedTorus::gaussian_power(2);
    c.bench_function("end_gaussian_square", |b| {
        b.iter(|| compute_end(black_box(&torus)).unwrap())
    });
    let end = compute_end(&torus).unwrap();
    c.bench_function("decompose_gaussian_square", |b| {
        b.iter(|| decompose(black_box(&end.algebra), 42).unwrap())
    });
    let ns = compute_ns(&torus).unwrap();
    let class = vec![rat(5), rat(2), rat(7), rat(-1)];
    c.bench_function("is_ample_gaussian_square", |b| {
        b.iter(|| ns.is_ample(black_box(&class)))
    });
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for name in ["bielliptic", "hyperbolic_square"] {
        let mut doc = parse_document(&corpus(name)).unwrap();
        doc.settings.samples = 200;
        group.bench_function(name, |b| b.iter(|| run(black_box(&doc), Stage::Verify)));
    }
    group.finish();

    let doc = parse_document(&corpus("hyperbolic_square")).unwrap();
    let fundamental = run(&doc, Stage::Funddom).fundamental.unwrap();
    let class = vec![rat(3363), rat(2378)];
    c.bench_function("reduce_hyperbolic_class", |b| {
        b.iter(|| {
            fundamental
                .reduce(black_box(&class), &doc.settings)
                .unwrap()
        })
    });
}

criterion_group!(benches, arithmetic, algebra, pipeline);
criterion_main!(benches);
