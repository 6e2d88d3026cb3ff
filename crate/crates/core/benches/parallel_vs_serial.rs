use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;

use logsps::geometry::{max_convex_chain_with, minkowski_sum, Tau};
use logsps::oracle::{random_point_set, random_sps, trial_rng, ExperimentConfig, SpsMode};
use logsps::sps::verify_theorem2;
use logsps::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn chain(c: &mut Criterion) {
    let tau = Tau::new(BigRational::from_integer(4.into())).unwrap();
    let mut rng = trial_rng(1, 0);
    let a = random_point_set(&mut rng, 8, 20, 50, 3);
    let b = random_point_set(&mut rng, 8, 20, 50, 3);
    let sum = minkowski_sum(&a, &b);
    let mut group = c.benchmark_group("convex_chain");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, sum.len()), &sum, |bench, s| {
            bench.iter(|| max_convex_chain_with(s, &tau, 4096, exec).unwrap())
        });
    }
    group.finish();
}

fn theorem2_batch(c: &mut Criterion) {
    let cfg = ExperimentConfig::default();
    let batch: Vec<_> = (0..256)
        .map(|i| random_sps(&mut trial_rng(2, i), &cfg, SpsMode::Concave))
        .collect();
    let mut group = c.benchmark_group("theorem2_batch");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |bench| {
            bench.iter(|| {
                exec.map(batch.len(), |i| verify_theorem2(&batch[i]).unwrap().bound_holds)
                    .into_iter()
                    .filter(|&b| b)
                    .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, chain, theorem2_batch);
criterion_main!(benches);
