use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use drinfeld_core::forms::{double_cuspidal_basis, eigenform_search, Forms};
use drinfeld_core::hecke::{hecke_apply, DegOnePrime};
use drinfeld_core::{PolyA, PrimeField};

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

// A fresh `Forms` per iteration so the cache does not hide the work.
fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta");
    group.sample_size(10);
    for prec in [100usize, 300, 600] {
        group.bench_with_input(BenchmarkId::new("q3", prec), &prec, |b, &prec| {
            b.iter(|| Forms::new(field(3)).delta(black_box(prec)).unwrap())
        });
    }
    group.finish();
}

fn hecke(c: &mut Criterion) {
    let forms = Forms::new(field(3));
    let mut group = c.benchmark_group("hecke_theta");
    group.sample_size(10);
    for prec in [200usize, 600] {
        let delta = forms.delta(prec).unwrap();
        group.bench_with_input(BenchmarkId::new("delta_q3", prec), &delta, |b, f| {
            b.iter(|| hecke_apply(black_box(f), DegOnePrime::theta(field(3)), 8).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let forms = Forms::new(field(3));
    let basis = double_cuspidal_basis(&forms, 20, 0, 120).unwrap();
    let lam = PolyA::monomial(field(3), 1, 4);
    c.bench_function("search_k20_q3_prec120", |b| b.iter(|| eigenform_search(black_box(&basis), &lam).unwrap()));
}

criterion_group!(benches, generators, hecke, search);
criterion_main!(benches);
