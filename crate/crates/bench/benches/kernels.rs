use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mcfsol::catalog::grim_reaper_unit;
use mcfsol::flow::{default_samples, flow_setup, flow_velocity, run_flow_check, FlowConfig};
use mcfsol::oracle::fundamental_forms;
use mcfsol::profile::{run_figure, IntegrationConfig, SpeedMode};
use mcfsol::random_surfaces::{random_noncylindrical, rng};
use mcfsol::soliton::{residual_grid, GridSpec};
use mcfsol::Surface;

fn residuals(c: &mut Criterion) {
    let (surf, gens) = grim_reaper_unit();
    let grid = GridSpec::new((-1.0, 1.0, 50), (-1.0, 1.0, 20));
    c.bench_function("residual_grid grim reaper 50x20", |b| {
        b.iter(|| residual_grid(black_box(&surf), &gens, &grid).unwrap())
    });

    let r = random_noncylindrical(&mut rng(7));
    c.bench_function("closed-form sample", |b| b.iter(|| r.sample(black_box(0.3), black_box(0.4)).unwrap()));
    c.bench_function("finite-difference oracle", |b| {
        b.iter(|| fundamental_forms(|p, q| r.point(p, q), black_box(0.3), black_box(0.4)))
    });
}

fn profiles(c: &mut Criterion) {
    let cfg = IntegrationConfig::default();
    let mut g = c.benchmark_group("run_figure");
    g.sample_size(10);
    for n in [1, 5, 8] {
        g.bench_function(format!("figure {n}"), |b| b.iter(|| run_figure(n, SpeedMode::UnitSpeed, &cfg).unwrap()));
    }
    g.finish();
}

fn flow(c: &mut Criterion) {
    let setup = flow_setup("cylinder").unwrap();
    let points = setup.curve.points();
    c.bench_function("flow velocity cylinder", |b| {
        b.iter(|| flow_velocity(black_box(&points), setup.curve.closed, setup.family).unwrap())
    });

    let dt = 1e-3;
    let cfg = FlowConfig::new(dt, 0.05, default_samples(&setup, dt));
    let mut g = c.benchmark_group("flow check");
    g.sample_size(10);
    g.bench_function("cylinder t=0.05", |b| b.iter(|| run_flow_check(&setup, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, residuals, profiles, flow);
criterion_main!(benches);
