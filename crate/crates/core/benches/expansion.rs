use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quadop::duality::dual_presentation;
use quadop::expansion::Expander;
use quadop::{Builtin, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn ideal_arity4(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_arity4");
    for b in [Builtin::Ass, Builtin::G4Ass, Builtin::LieAdm] {
        let p = b.presentation();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, b.name()), &p, |bench, p| {
                bench.iter(|| {
                    Expander::new(exec)
                        .ideal_component(black_box(p), 4)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn ideal_arity5(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_arity5");
    group.sample_size(10);
    let duals =
        [Builtin::Vinb, Builtin::G5Ass].map(|b| dual_presentation(&b.presentation()).unwrap());
    for p in &duals {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, &p.name), p, |bench, p| {
                bench.iter(|| {
                    Expander::new(exec)
                        .ideal_component(black_box(p), 5)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, ideal_arity4, ideal_arity5);
criterion_main!(benches);
