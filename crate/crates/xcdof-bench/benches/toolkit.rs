use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use xcdof::bounds::{self, CheckKind, StrategyMode};
use xcdof::rng::{stream, Role};
use xcdof::{region, scheme, AntennaConfig, Field, FieldMatrix, DEFAULT_PRIME};

fn field_rank(c: &mut Criterion) {
    let f = Field::new(DEFAULT_PRIME).unwrap();
    let mut rng = stream(0, 0, 0, Role::Other(0));
    let a = FieldMatrix::random(f, &mut rng, 48, 48);
    c.bench_function("rank_48x48", |b| b.iter(|| black_box(&a).rank()));
}

fn simulate(c: &mut Criterion) {
    let cfg = AntennaConfig::new(3, 3, 2, 2);
    c.bench_function("simulate_3322", |b| {
        b.iter(|| scheme::simulate(black_box(&cfg), 0).unwrap())
    });
}

fn lemma_check(c: &mut Criterion) {
    let f = Field::new(DEFAULT_PRIME).unwrap();
    let cfg = AntennaConfig::new(2, 2, 2, 2);
    c.bench_function("lemma1_2222_T4_x10", |b| {
        b.iter(|| {
            bounds::verify(CheckKind::Lemma1, &cfg, 4, 10, StrategyMode::ObliviousRandom, 0, f)
                .unwrap()
        })
    });
}

fn region_vertices(c: &mut Criterion) {
    c.bench_function("verify_region_3_2", |b| {
        b.iter(|| region::verify_region(black_box(3), black_box(2)).unwrap())
    });
}

criterion_group!(benches, field_rank, simulate, lemma_check, region_vertices);
criterion_main!(benches);
