use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dpp_core::{
    estimate, expected_loss, run_sweep, sample_trial, trial_loss, Axis, LoadDistribution,
    ResourceBudget, SweepSpec, SystemDimensions, Topology,
};

fn bench_sampling(c: &mut Criterion) {
    let dims = SystemDimensions::new(8, 4, 1.0).unwrap();
    let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
    c.bench_function("sample_array_8x4_uniform", |b| {
        let mut trial = 0u64;
        b.iter(|| {
            trial += 1;
            black_box(sample_trial(&dist, &dims, 42, trial).unwrap())
        })
    });

    let log_normal = LoadDistribution::log_normal(1.0, 0.5).unwrap();
    c.bench_function("sample_array_8x4_log_normal", |b| {
        let mut trial = 0u64;
        b.iter(|| {
            trial += 1;
            black_box(sample_trial(&log_normal, &dims, 42, trial).unwrap())
        })
    });
}

fn bench_trial_losses(c: &mut Criterion) {
    let dims = SystemDimensions::new(8, 4, 1.0).unwrap();
    let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
    let budget = ResourceBudget::normalized();
    let sample = sample_trial(&dist, &dims, 42, 0).unwrap();
    for topo in [
        Topology::AcCoupled,
        Topology::LadderDab,
        Topology::BulkDabN1,
    ] {
        c.bench_function(&format!("trial_loss_{topo}"), |b| {
            b.iter(|| black_box(trial_loss(topo, black_box(&sample), &dims, &budget)))
        });
    }
}

fn bench_estimator(c: &mut Criterion) {
    let dims = SystemDimensions::new(8, 4, 1.0).unwrap();
    let dist = LoadDistribution::uniform(1.0, 0.5).unwrap();
    let budget = ResourceBudget::normalized();
    c.bench_function("estimate_ac_1000_trials", |b| {
        b.iter(|| black_box(estimate(Topology::AcCoupled, &dims, &dist, &budget, 1000, 42)))
    });
    c.bench_function("expected_loss_closed_form", |b| {
        b.iter(|| black_box(expected_loss(Topology::AcCoupled, &dims, &dist, &budget)))
    });
}

fn bench_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        axis: Axis::DomainsN,
        values: vec![2.0, 4.0, 8.0],
        dims: SystemDimensions::new(8, 4, 1.0).unwrap(),
        dist: LoadDistribution::uniform(1.0, 0.5).unwrap(),
        budget: ResourceBudget::normalized(),
        topologies: vec![Topology::AcCoupled, Topology::LadderDab],
        trials: 500,
        seed: 42,
        include_switching: false,
    };
    c.bench_function("sweep_n_3_points_500_trials", |b| {
        b.iter(|| black_box(run_sweep(&spec).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_sampling,
    bench_trial_losses,
    bench_estimator,
    bench_sweep
);
criterion_main!(benches);
