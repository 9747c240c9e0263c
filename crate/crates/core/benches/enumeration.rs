use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclrc::cyclic::{CyclicCode, SymbolField};
use cyclrc::oracle::SymbolCode;
use cyclrc::report::{search, SearchConstraints};
use cyclrc::{Exec, Oracle};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn dual_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual_enumeration");
    group.sample_size(10);
    let cases = [
        ("binary_45_30", CyclicCode::new(45, SymbolField::binary(), &[0, 3, 5, 9]).unwrap()),
        ("binary_27_7", CyclicCode::new(27, SymbolField::binary(), &[1, 9]).unwrap()),
        ("ternary_80_68", CyclicCode::new(80, SymbolField::new(3, 1), &[1, 2, 41]).unwrap()),
    ];
    for (name, code) in &cases {
        let dual = SymbolCode::dual(code).unwrap();
        for (mode, exec) in MODES {
            let oracle = Oracle::new(1 << 28, exec);
            group.bench_with_input(BenchmarkId::new(mode, name), &dual, |b, d| b.iter(|| oracle.enumerate(d, 0).unwrap()));
        }
    }
    group.finish();
}

fn coset_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset_search");
    group.sample_size(10);
    let constraints = SearchConstraints { max_r: Some(6), exact_ceiling: Some(1 << 14), ..Default::default() };
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "n21_exact"), |b| {
            b.iter(|| search(21, SymbolField::binary(), &constraints, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new(mode, "n63_disjoint"), |b| {
            let c = SearchConstraints { disjoint_recovery: true, ..Default::default() };
            b.iter(|| search(63, SymbolField::binary(), &c, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, dual_enumeration, coset_search);
criterion_main!(benches);
