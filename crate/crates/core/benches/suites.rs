use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finstoch::harness::{exhaustive, run_suite_with, Execution, GenConfig};
use finstoch::structure::{code_from_morphism, exhaustive_recovery, has_vanishing_loss};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn suites(c: &mut Criterion) {
    let cfg = GenConfig { trials: 200, ..GenConfig::with_seed(1) };
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for suite in ["mediator-deviation-equivalence", "vanishing-K-correctable", "markov-axioms"] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(suite, mode), &exec, |b, &exec| {
                b.iter(|| run_suite_with(suite, &cfg, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("vanishing-loss", mode), |b| {
            b.iter(|| {
                exhaustive::sweep_morphisms(2, 4, exec, |m| {
                    has_vanishing_loss(m) == exhaustive_recovery(&code_from_morphism(m)).is_some()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, suites, sweep);
criterion_main!(benches);
