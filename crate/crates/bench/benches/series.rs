use criterion::{black_box, criterion_group, criterion_main, Criterion};

use betachar::airy::airy_multivariate;
use betachar::ensembles::expect_laguerre_exact;
use betachar::hyper::eval_pfq;
use betachar::jack::jack_expansion;
use betachar::{AiryQuadSpec, EnsembleSpec, HyperSeriesSpec, Partition};
use betachar_bench::sample_point;

fn jack(c: &mut Criterion) {
    let kappa = Partition::new(vec![4, 2, 1]).unwrap();
    c.bench_function("jack_expansion (4,2,1) n=4", |b| b.iter(|| jack_expansion(black_box(&kappa), 0.5, 4).unwrap()));
}

fn hyper(c: &mut Criterion) {
    let spec = HyperSeriesSpec::real(2.0, &[0.5, 1.5], &[2.5]);
    let x = sample_point(3, 1);
    c.bench_function("2F1 three variables", |b| b.iter(|| eval_pfq(black_box(&spec), black_box(&x)).unwrap()));
}

fn laguerre(c: &mut Criterion) {
    let spec = EnsembleSpec::laguerre(40, 2.0, 0.5);
    let s = sample_point(2, 2);
    c.bench_function("laguerre exact N=40 n=2", |b| b.iter(|| expect_laguerre_exact(black_box(&spec), black_box(&s)).unwrap()));
}

fn airy(c: &mut Criterion) {
    let spec = AiryQuadSpec::new(2.0, 2).with_nodes(80);
    c.bench_function("airy alpha=2 n=2", |b| b.iter(|| airy_multivariate(black_box(&spec), &[0.3, -0.4]).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = jack, hyper, laguerre, airy
}
criterion_main!(benches);
