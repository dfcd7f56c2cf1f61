use std::hint::black_box;

use alcove_core::enumerate::sweep_types;
use alcove_core::moduli::{count_pairs_burnside, count_pairs_direct, TorsionLevel};
use alcove_core::weyl::WeylGroup;
use alcove_core::{Caps, Exec, RootSystem};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn burnside(c: &mut Criterion) {
    let caps = Caps::default();
    let mut g = c.benchmark_group("burnside");
    for (ty, m) in [("B3", 6), ("F4", 4), ("D4", 4)] {
        let rs = RootSystem::build(ty.parse().unwrap());
        let level = TorsionLevel::new(m).unwrap();
        let caps = Caps { weyl: 1 << 20, ..caps };
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("{ty}/m={m}")), &rs, |b, rs| {
                b.iter(|| count_pairs_burnside(rs, level, &caps, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn direct(c: &mut Criterion) {
    let caps = Caps::default();
    let mut g = c.benchmark_group("direct_count");
    g.sample_size(10);
    for (ty, m) in [("A2", 6), ("B3", 3)] {
        let rs = RootSystem::build(ty.parse().unwrap());
        let level = TorsionLevel::new(m).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("{ty}/m={m}")), &rs, |b, rs| {
                b.iter(|| count_pairs_direct(rs, level, &caps, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn type_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("type_sweep");
    g.sample_size(10);
    for (ty, den) in [("C3", 8), ("F4", 6)] {
        let rs = RootSystem::build(ty.parse().unwrap());
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("{ty}/den={den}")), &rs, |b, rs| {
                b.iter(|| sweep_types(rs, den, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn stabilizers(c: &mut Criterion) {
    let rs = RootSystem::build("E6".parse().unwrap());
    let w = WeylGroup::enumerate(
        &rs,
        &Caps {
            weyl: 1 << 20,
            ..Caps::default()
        },
    )
    .unwrap();
    let x = alcove_core::diagram::barycenter(&rs, &(0..=6).collect::<Vec<_>>());
    let mut g = c.benchmark_group("stabilizer_E6");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| w.stabilizer_indices(&rs, black_box(std::slice::from_ref(&x)), exec))
        });
    }
    g.finish();
}

criterion_group!(benches, burnside, direct, type_sweep, stabilizers);
criterion_main!(benches);
