use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};

use elpoints::config::Case;
use elpoints::curve::pairing_matrix;
use elpoints::elog::periods;
use elpoints::lattice::{reduce_bound, required_digits, ReductionOptions};
use elpoints::pipeline::{linear_form, run, RunOptions, Stage};
use elpoints::PrecisionContext;

fn case(name: &str) -> Case {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../cases")
        .join(format!("{name}.toml"));
    Case::load(&p).unwrap()
}

fn stages(c: &mut Criterion) {
    let d1 = case("d-1");
    let quartic = case("quartic");
    let ctx = PrecisionContext::digits(60);

    c.bench_function("periods quartic 60 digits", |b| {
        b.iter(|| periods(quartic.family.curve(), &ctx).unwrap())
    });
    c.bench_function("height pairing d=-1", |b| {
        b.iter(|| pairing_matrix(d1.family.curve(), &d1.basis, &ctx).unwrap())
    });
    c.bench_function("elliptic logs d=-1", |b| {
        b.iter(|| linear_form(&d1, 0.77, &ctx).unwrap())
    });

    let opts = RunOptions {
        workers: 1,
        ..Default::default()
    };
    c.bench_function("initial bound d=-1", |b| {
        b.iter(|| run(&d1, Stage::Bound, &opts).unwrap())
    });

    // the second pass of the chain, from 133
    let red = ReductionOptions::default();
    let k = linear_form(&d1, 0.77, &ctx).unwrap().1.k();
    let pass_ctx = PrecisionContext::digits(required_digits(k, 133.0, &red));
    let (_, spec) = linear_form(&d1, 0.77, &pass_ctx).unwrap();
    c.bench_function("reduce pass d=-1 at 133", |b| {
        b.iter(|| reduce_bound(133.0, &spec, &red).unwrap())
    });

    let n3 = case("n3");
    let small = RunOptions {
        workers: 1,
        m_max: 2,
        ..Default::default()
    };
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("N=3 M<=2", |b| {
        b.iter(|| run(&n3, Stage::Search, &small).unwrap())
    });
    g.finish();
}

criterion_group!(benches, stages);
criterion_main!(benches);
