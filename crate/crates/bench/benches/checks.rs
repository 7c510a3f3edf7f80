use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use rs_extend::extension::{classic, ClassicKind};
use rs_extend::verify::{check_spirallike, SpirallikeClaim, Target};
use rs_extend::{HoloMap, LinearOperator, Sampler, C64};

fn starlike_check(cr: &mut Criterion) {
    let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).unwrap();
    let claim = SpirallikeClaim {
        target: Target::Extended(em),
        operator: LinearOperator::scalar(2, C64::new(1.0, 0.0)).unwrap(),
        relaxed: false,
    };
    let sampler = Sampler::default().with_n(100);
    let mut g = cr.benchmark_group("checks");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    g.bench_function("extended starlike, 100 samples", |b| {
        b.iter(|| check_spirallike(&claim, &sampler))
    });
    g.finish();
}

criterion_group!(checks, starlike_check);
criterion_main!(checks);
