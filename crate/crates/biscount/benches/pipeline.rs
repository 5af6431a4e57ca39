//! Benchmarks for the main pipeline stages. Run with the default features
//! for the rayon-parallel core and with `--no-default-features` for the
//! sequential fallback to compare the two.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use biscount::bigraph::generate_regular;
use biscount::contracting::{build_family, FamilyParams};
use biscount::dsampler::estimate_da;
use biscount::engine::brute_force_count;
use biscount::spectral::{build_cut_family, decompose};

fn bench_cut_family(c: &mut Criterion) {
    let g = generate_regular(20, 10, 1).unwrap();
    let basis = decompose(&g, 1e-8).unwrap();
    c.bench_function("cut_family_n20_d10", |b| {
        b.iter(|| build_cut_family(&g, &basis, 10_000_000).unwrap())
    });
}

fn bench_build_family(c: &mut Criterion) {
    let g = generate_regular(20, 10, 1).unwrap();
    let basis = decompose(&g, 1e-8).unwrap();
    let cuts = build_cut_family(&g, &basis, 10_000_000).unwrap();
    c.bench_function("build_family_n20_d10_t2", |b| {
        b.iter_batched(
            || cuts.clone(),
            |cuts| build_family(&g, &cuts, 2, &FamilyParams::default()).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_estimate(c: &mut Criterion) {
    let g = generate_regular(20, 10, 1).unwrap();
    let basis = decompose(&g, 1e-8).unwrap();
    let cuts = build_cut_family(&g, &basis, 10_000_000).unwrap();
    let family = build_family(&g, &cuts, 2, &FamilyParams::default()).unwrap();
    let a = family
        .iter()
        .max_by_key(|a| a.set().len())
        .expect("family is never empty")
        .clone();
    c.bench_function("estimate_da_largest_member", |b| {
        b.iter(|| estimate_da(&g, &a, 0.3, 0.05, 7, 100_000_000).unwrap())
    });
}

fn bench_brute_force(c: &mut Criterion) {
    let g = generate_regular(20, 10, 1).unwrap();
    c.bench_function("brute_force_n20", |b| {
        b.iter(|| brute_force_count(&g, 24).unwrap())
    });
}

criterion_group!(
    benches,
    bench_cut_family,
    bench_build_family,
    bench_estimate,
    bench_brute_force
);
criterion_main!(benches);
