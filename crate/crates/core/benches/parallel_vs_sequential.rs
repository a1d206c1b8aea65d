use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use igflab::estimators::{bootstrap, rigf_nonparametric, Bandwidth, Family};
use igflab::experiments::{mc_estimator_study, EstimatorKind, McConfig, DEFAULT_SEED, FAILURE_TIMES};
use igflab::{ModelSpec, OrderPair, Parallelism};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let config = McConfig {
        truth: ModelSpec::parse(r#"{"family":"weibull2","params":{"k":2,"lambda":1.5}}"#).unwrap(),
        fit_family: Family::Weibull2,
        estimators: vec![EstimatorKind::Nonparametric, EstimatorKind::Parametric],
        orders: vec![(0.3, 1.1), (1.5, 0.9)],
        sample_sizes: vec![150],
        replications: 64,
        seed: DEFAULT_SEED,
        bandwidth: None,
    };
    let mut group = c.benchmark_group("mc_estimator_study");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| mc_estimator_study(&config, mode).unwrap())
        });
    }
    group.finish();
}

fn resampling(c: &mut Criterion) {
    let o = OrderPair::new(0.5, 1.5).unwrap();
    let mut group = c.benchmark_group("bootstrap");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| bootstrap(&FAILURE_TIMES, 200, |s| rigf_nonparametric(s, o, Bandwidth::Silverman), DEFAULT_SEED, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, resampling);
criterion_main!(benches);
