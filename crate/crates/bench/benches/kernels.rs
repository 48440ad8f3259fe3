use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cutspec::algebra::{sample_elements, Algebra, PatternAlgebra};
use cutspec::fixtures;
use cutspec::ordered_values::Cut;
use cutspec::quasival::{check_axioms, filter};
use cutspec::spectrum::{enumerate_spec, DEFAULT_BOUND};

fn cuts(c: &mut Criterion) {
    let a = Cut::prefix(3, [2, -1]).unwrap();
    let b = Cut::prefix(3, [2, 4, 7]).unwrap();
    c.bench_function("add_cut/rank3", |bench| bench.iter(|| black_box(&a) + black_box(&b)));
    c.bench_function("scale_cut/rank3", |bench| bench.iter(|| black_box(&a).scale(black_box(5)).unwrap()));
}

fn filter_value(c: &mut Criterion) {
    let mut group = c.benchmark_group("filter_value");
    for n in [2, 3] {
        let r = PatternAlgebra::full_matrix(2, n).unwrap();
        let xs = sample_elements(&r, 64, 1);
        group.bench_function(format!("M{n}(Ov)"), |bench| {
            bench.iter(|| xs.iter().map(|x| r.filter_value(x).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_spec");
    for name in ["m2_ov", "localization_subring", "dualnum_ax_x2"] {
        let r = fixtures::load(name, None).unwrap().algebra;
        group.bench_function(name, |bench| bench.iter(|| enumerate_spec(&r, DEFAULT_BOUND).unwrap().len()));
    }
    let m3 = PatternAlgebra::full_matrix(3, 3).unwrap();
    group.bench_function("M3(Ov) rank3", |bench| bench.iter(|| enumerate_spec(&m3, DEFAULT_BOUND).unwrap().len()));
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let r = PatternAlgebra::full_matrix(2, 2).unwrap();
    let w = filter(&r);
    c.bench_function("check_axioms/M2(Ov) 200 pairs", |bench| bench.iter(|| check_axioms(&w, &r, 200, 1).all_pass()));
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = cuts, filter_value, spectrum, axioms
}
criterion_main!(kernels);
