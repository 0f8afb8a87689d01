use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_core::dimformulas::SpaceLabel;
use hecke_core::exactlinalg::charpoly;
use hecke_core::ffpoly::{factor, FpPoly};
use hecke_core::ModularSymbolSpace;

fn bench_hecke_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke_matrix");
    for (level, weight) in [(11u64, 12u32), (89, 2), (37, 8)] {
        let space = ModularSymbolSpace::build(SpaceLabel::trivial(level, weight).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("T2", format!("N{level}_k{weight}")), &space, |b, s| {
            b.iter(|| s.hecke_matrix(black_box(2)).unwrap())
        });
    }
    group.finish();
}

fn bench_charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    group.sample_size(20);
    for (level, weight) in [(1u64, 60u32), (11, 16), (89, 4)] {
        let space = ModularSymbolSpace::build(SpaceLabel::trivial(level, weight).unwrap()).unwrap();
        let t = space.hecke_matrix(3).unwrap();
        group.bench_with_input(BenchmarkId::new("T3", format!("N{level}_k{weight}_dim{}", t.nrows())), &t, |b, m| {
            b.iter(|| charpoly(m).unwrap())
        });
    }
    group.finish();
}

fn bench_factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    for (p, d) in [(2u64, 64usize), (3, 48), (101, 32)] {
        // deterministic dense polynomial of degree d
        let coeffs: Vec<u64> = (0..d as u64).map(|i| (i * i * 7 + 3 * i + 1) % p).chain([1]).collect();
        let f = FpPoly::new(p, coeffs).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("F{p}"), d), &f, |b, f| b.iter(|| factor(f, 0).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_hecke_matrix, bench_charpoly, bench_factor);
criterion_main!(benches);
