use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use formal_pbw::envelope::Normalizer;
use formal_pbw::freelie::lyndon_words;
use formal_pbw::pbw::PbwContext;
use formal_pbw_bench::{heisenberg, upper_triangular, words};

fn normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for (name, p, n) in [("h3", heisenberg(), 5), ("n4", upper_triangular(4), 4)] {
        let input = words(&p, n);
        group.bench_with_input(BenchmarkId::new(name, n), &input, |b, input| {
            b.iter(|| {
                let mut nf = Normalizer::new(p.clone());
                for t in input {
                    black_box(nf.normal_form(t).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn projections(c: &mut Criterion) {
    let mut group = c.benchmark_group("project_sigma");
    group.sample_size(20);
    for (name, p, n) in [("h3", heisenberg(), 4), ("n4", upper_triangular(4), 4)] {
        let ctx = PbwContext::new(p.clone(), n).unwrap();
        let input = words(&p, n);
        group.bench_with_input(BenchmarkId::new(name, n), &input, |b, input| {
            b.iter(|| {
                let mut nf = ctx.normalizer();
                for t in input {
                    black_box(ctx.project_sigma_with(t, &mut nf).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn context(c: &mut Criterion) {
    c.bench_function("context/h3/5", |b| {
        b.iter(|| PbwContext::new(heisenberg(), 5).unwrap())
    });
}

fn lyndon(c: &mut Criterion) {
    c.bench_function("lyndon_words/3/10", |b| {
        b.iter(|| black_box(lyndon_words(3, 10)))
    });
}

criterion_group!(benches, normal_forms, projections, context, lyndon);
criterion_main!(benches);
