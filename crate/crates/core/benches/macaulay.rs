//! Benchmarks for the data-parallel hot paths against their sequential
//! twins: dense Macaulay construction and the per-ordering stage-1
//! determinant sweep.
//!
//! Run `cargo bench` for the parallel build and
//! `cargo bench --no-default-features` to measure the pure sequential
//! fallback (the `*_seq` entries are identical there by construction).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resultant_core::field::FieldContext;
use resultant_core::macaulay::{MacaulaySpec, VariableOrdering};
use resultant_core::ordering::degree_slice;
use resultant_core::polysys::{Monomial, MultiPoly, PolySystem};
use resultant_core::resultant::{stage1_determinants, stage1_determinants_seq};

fn random_system(ctx: &FieldContext, n: usize, degrees: &[u32], seed: u64) -> PolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<MultiPoly> = degrees
        .iter()
        .map(|&d| {
            let terms: Vec<(Monomial, _)> = degree_slice(n, d)
                .into_iter()
                .map(|m| {
                    let c = if ctx.is_rational() {
                        ctx.from_i64(rng.gen_range(-9i64..=9))
                    } else {
                        ctx.sample_uniform(&mut rng)
                    };
                    (m, c)
                })
                .collect();
            MultiPoly::from_terms(ctx, n, terms).unwrap()
        })
        .collect();
    PolySystem::new(ctx, n, polys).unwrap()
}

fn bench_dense(c: &mut Criterion) {
    let mut group = c.benchmark_group("macaulay_dense");
    let cases: &[(&str, usize, &[u32])] = &[
        ("n3_d222", 3, &[2, 2, 2]),
        ("n4_d2222", 4, &[2, 2, 2, 2]),
        ("n3_d333", 3, &[3, 3, 3]),
        ("n4_d3333", 4, &[3, 3, 3, 3]),
        ("n5_d22222", 5, &[2, 2, 2, 2, 2]),
    ];
    for &(name, n, degrees) in cases {
        let sys = random_system(&FieldContext::prime(5).unwrap(), n, degrees, 11);
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("seq", name), &spec, |b, spec| {
            b.iter(|| spec.dense_seq(100_000).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("auto", name), &spec, |b, spec| {
            b.iter(|| spec.dense(100_000).unwrap())
        });
    }
    group.finish();
}

fn bench_stage1(c: &mut Criterion) {
    let mut group = c.benchmark_group("stage1_determinants");
    group.sample_size(20);
    let cases: &[(&str, usize, &[u32])] = &[
        ("f5_n3_d222", 3, &[2, 2, 2]),
        ("f5_n4_d2222", 4, &[2, 2, 2, 2]),
        ("f5_n4_d3333", 4, &[3, 3, 3, 3]),
        ("q_n3_d222", 3, &[2, 2, 2]),
        ("q_n3_d332", 3, &[3, 3, 2]),
    ];
    for &(name, n, degrees) in cases {
        let ctx = if name.starts_with("q_") {
            FieldContext::rational()
        } else {
            FieldContext::prime(5).unwrap()
        };
        let sys = random_system(&ctx, n, degrees, 13);
        group.bench_with_input(BenchmarkId::new("seq", name), &sys, |b, sys| {
            b.iter(|| stage1_determinants_seq(sys, 100_000).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("auto", name), &sys, |b, sys| {
            b.iter(|| stage1_determinants(sys, 100_000).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dense, bench_stage1);
criterion_main!(benches);
