//! Compares the rayon data-parallel coalition enumeration against the
//! sequential fallback on a seeded matching instance (12 agents, 4096
//! coalitions, each costing one exact matching solve).
//!
//! The parallel arms exist only with the default `parallel` feature; build
//! with `--no-default-features` to bench the fallback dispatch alone.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_rational::BigRational;
use pcog_core::game::{Coalition, GameInstance, Goal};
use pcog_core::stability::{find_blocking_coalition_sequential, Allocation};
use pcog_core::testgen::{self, Rng};

fn bench_instance() -> GameInstance {
    let mut rng = Rng::new(0xbe9c);
    testgen::random_instance(&mut rng, Goal::MaxMatching, 12, 24)
}

/// An allocation no coalition can block (everyone already gets the grand
/// value), forcing the search to scan all 2^n - 1 coalitions.
fn saturating_allocation(inst: &GameInstance) -> Allocation {
    let grand = inst.grand_value().unwrap();
    Allocation::new(
        inst.ownership
            .agents
            .iter()
            .map(|a| (a.clone(), grand.clone()))
            .collect(),
    )
    .unwrap()
}

fn sweep_sequential(inst: &GameInstance) -> BigRational {
    let mut last = BigRational::from_integer(0.into());
    for mask in 0..1u32 << inst.agent_count() {
        last = inst.coalition_value(Coalition::from_mask(mask)).unwrap();
    }
    last
}

fn coalition_value_sweep(c: &mut Criterion) {
    let inst = bench_instance();
    let mut group = c.benchmark_group("coalition_value_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || inst.without_cache(),
            |fresh| sweep_sequential(&fresh),
            BatchSize::LargeInput,
        )
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || inst.without_cache(),
            |fresh| fresh.precompute_coalition_values().unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn blocking_coalition_scan(c: &mut Criterion) {
    let inst = bench_instance();
    let alloc = saturating_allocation(&inst);
    let mut group = c.benchmark_group("blocking_coalition_scan");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || inst.without_cache(),
            |fresh| {
                assert!(find_blocking_coalition_sequential(&fresh, &alloc)
                    .unwrap()
                    .is_none());
            },
            BatchSize::LargeInput,
        )
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || inst.without_cache(),
            |fresh| {
                assert!(
                    pcog_core::stability::find_blocking_coalition_parallel(&fresh, &alloc)
                        .unwrap()
                        .is_none()
                );
            },
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(benches, coalition_value_sweep, blocking_coalition_scan);
criterion_main!(benches);
