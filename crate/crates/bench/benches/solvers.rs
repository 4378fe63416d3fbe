//! Benchmarks for the hot paths: the 1D and radial constrained minimizers,
//! the analytic formulas they are checked against, and the two-particle solve.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dissoc_core::analytic1d::atom_energy_exact;
use dissoc_core::solver1d::{minimize_atom_1d, minimize_molecule_1d, two_particle_ground};
use dissoc_core::solver3d::minimize_radial;
use dissoc_core::{LineGrid, RadialGrid, SolverConfig, TermFlags, UEG_C_XC};

fn bench_analytic(c: &mut Criterion) {
    c.bench_function("atom_energy_exact", |b| {
        b.iter(|| atom_energy_exact(black_box(1.3), black_box(0.9)).unwrap())
    });
}

fn bench_atom_1d(c: &mut Criterion) {
    let grid = LineGrid::with_spacing(-40.0, 40.0, 0.02).unwrap();
    let cfg = SolverConfig::<LineGrid>::default();
    c.bench_function("minimize_atom_1d h=0.02", |b| {
        b.iter(|| minimize_atom_1d(black_box(1.0), black_box(1.0), &cfg, &grid).unwrap())
    });
}

fn bench_molecule_1d(c: &mut Criterion) {
    let grid = LineGrid::with_spacing(-40.0, 50.0, 0.02).unwrap();
    let cfg = SolverConfig::<LineGrid>::default();
    c.bench_function("minimize_molecule_1d R=10", |b| {
        b.iter(|| minimize_molecule_1d(black_box(2.0), 10.0, 1.0, &cfg, &grid).unwrap())
    });
}

fn bench_radial(c: &mut Criterion) {
    let grid = RadialGrid::for_charge(1.0).unwrap();
    let cfg = SolverConfig::<RadialGrid>::default();
    c.bench_function("minimize_radial N=1 UEG", |b| {
        b.iter(|| {
            minimize_radial(black_box(1.0), 1.0, UEG_C_XC, &cfg, &grid, TermFlags::ALL).unwrap()
        })
    });
}

fn bench_twobody(c: &mut Criterion) {
    let grid = LineGrid::with_spacing(-12.0, 22.0, 0.4).unwrap();
    c.bench_function("two_particle_ground R=10 h=0.4", |b| {
        b.iter(|| two_particle_ground(black_box(10.0), &grid, 1e-7).unwrap())
    });
}

criterion_group!(
    benches,
    bench_analytic,
    bench_atom_1d,
    bench_molecule_1d,
    bench_radial,
    bench_twobody
);
criterion_main!(benches);
