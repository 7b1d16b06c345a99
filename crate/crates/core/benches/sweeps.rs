use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ringdiag::lab::{classify, verify_theorem, LabConfig, Theorem};
use ringdiag::{Exec, Ring};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn config(exec: Exec) -> LabConfig {
    LabConfig { exec, ..LabConfig::default() }
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for n in [12u64, 24, 30] {
        for (name, exec) in STRATEGIES {
            let cfg = config(exec);
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| classify(black_box(Ring::Modular(n)), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_theorems(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (theorem, n) in [(Theorem::Prop5, 12u64), (Theorem::Thm13, 8), (Theorem::Thm8, 30), (Theorem::Thm9_2, 20)] {
        for (name, exec) in STRATEGIES {
            let cfg = config(exec);
            group.bench_with_input(BenchmarkId::new(format!("{theorem}/{name}"), n), &n, |b, &n| {
                b.iter(|| verify_theorem(black_box(Ring::Modular(n)), theorem, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_classify, bench_theorems);
criterion_main!(benches);
