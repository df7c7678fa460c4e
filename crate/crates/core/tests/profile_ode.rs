use mcfsol::catalog::{find_entry, grim_reaper_check_points, grim_reaper_q, shrinking_cylinder, sol2_q, graph_ode_residual, verify};
use mcfsol::ode::{Method, StopReason};
use mcfsol::profile::*;
use mcfsol::soliton::revolution_soliton_residual;

#[test]
fn presets_conserve_speed_and_solve_the_profile_equation() {
    let cfg = IntegrationConfig::default();
    for n in 1..=FIGURE_COUNT {
        let run = run_figure(n, SpeedMode::UnitSpeed, &cfg).unwrap();
        assert_eq!(run.stop, StopReason::Reached, "figure {n}");
        assert!(run.curve.samples.last().unwrap().s >= 10.0 - 1e-9, "figure {n}");
        assert!(run.max_speed_drift <= 1e-7, "figure {n}: drift {}", run.max_speed_drift);
        assert!(run.max_residual <= 1e-6, "figure {n}: residual {}", run.max_residual);
        assert_eq!(run.curve.len(), run.residuals.len());
    }
}

#[test]
fn literal_mode_keeps_the_given_speed() {
    let cfg = IntegrationConfig::default();
    for n in [4, 7, 8] {
        let run = run_figure(n, SpeedMode::Literal, &cfg).unwrap();
        assert!((run.initial.speed() - 2f64.sqrt()).abs() < 1e-15);
        assert!(run.max_speed_drift <= 1e-7, "figure {n}");
        assert!(run.max_residual <= 1e-6, "figure {n}");
        assert!(run.note.is_some());
        assert!(run_figure(n, SpeedMode::UnitSpeed, &cfg).unwrap().note.unwrap().contains("normalized"));
    }
}

#[test]
fn preset_labels_follow_generator_signs() {
    let expected = [
        "translating",
        "translating+expanding",
        "translating+shrinking",
        "translating+shrinking",
        "shrinking",
        "expanding",
        "translating+shrinking",
        "translating+shrinking",
        "shrinking",
        "shrinking",
    ];
    for (n, label) in (1..=FIGURE_COUNT).zip(expected) {
        assert_eq!(figure_preset(n).unwrap().label().to_string(), label, "figure {n}");
    }
    assert!(figure_preset(0).is_err() && figure_preset(11).is_err());
}

fn catenoid_error(step: f64) -> f64 {
    // arc-length catenoid germ: φ = √(1+s²), ψ = asinh s
    let cfg = IntegrationConfig {
        method: Method::Rk4 { step },
        s_max: 2.0,
        output_step: 0.5,
        ..Default::default()
    };
    let init = ProfileState::new(0.0, 1.0, 0.0, 0.0, 1.0);
    let curve = integrate_revolution_profile(&init, 0.0, 0.0, &cfg, SpeedMode::UnitSpeed).unwrap();
    curve
        .samples
        .iter()
        .map(|p| {
            let (phi, psi) = ((1.0 + p.s * p.s).sqrt(), p.s.asinh());
            (p.point.x - phi).abs().max((p.point.y - psi).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn rk4_is_fourth_order_on_the_catenoid() {
    let coarse = catenoid_error(0.1);
    let fine = catenoid_error(0.05);
    let ratio = coarse / fine;
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio} ({coarse:e} / {fine:e})");
}

#[test]
fn adaptive_solver_tracks_the_catenoid() {
    let cfg = IntegrationConfig { s_max: 3.0, ..Default::default() };
    let init = ProfileState::new(0.0, 1.0, 0.0, 0.0, 1.0);
    let curve = integrate_revolution_profile(&init, 0.0, 0.0, &cfg, SpeedMode::UnitSpeed).unwrap();
    for p in &curve.samples {
        assert!((p.point.x - (1.0 + p.s * p.s).sqrt()).abs() < 1e-8);
    }
}

#[test]
fn reversing_the_tangent_retraces_the_curve() {
    let cfg = IntegrationConfig { s_max: 2.0, ..Default::default() };
    for n in [1, 3, 6] {
        let p = figure_preset(n).unwrap();
        let init = p.initial.normalized().unwrap();
        let fwd = integrate_revolution_profile(&init, p.b, p.c, &cfg, SpeedMode::UnitSpeed).unwrap();
        let end = fwd.samples.last().unwrap();
        let back = ProfileState::new(end.s, end.point.x, end.point.y, -end.tangent.x, -end.tangent.y);
        let ret = integrate_revolution_profile(&back, p.b, p.c, &IntegrationConfig { s_max: 4.0, ..cfg }, SpeedMode::UnitSpeed)
            .unwrap();
        let last = ret.samples.last().unwrap();
        assert!((last.point.x - init.phi).abs() < 1e-7, "figure {n}");
        assert!((last.point.y - init.psi).abs() < 1e-7, "figure {n}");
    }
}

#[test]
fn unit_speed_mode_rejects_long_tangents() {
    let init = ProfileState::new(0.0, 1.0, 0.0, 1.0, 1.0);
    let r = integrate_revolution_profile(&init, 0.0, 0.0, &IntegrationConfig::default(), SpeedMode::UnitSpeed);
    assert!(matches!(r, Err(mcfsol::Error::BadInitialSpeed(_))));
}

#[test]
fn shrinking_cylinders_solve_the_profile_equation() {
    for r in [0.5, 1.0, 2.0] {
        let (surf, gens) = shrinking_cylinder(r);
        assert_eq!(gens.c, -1.0 / (2.0 * r * r));
        for k in 0..=40 {
            let s = -2.0 + 0.1 * k as f64;
            let v = revolution_soliton_residual(&surf.jet(s), &gens).unwrap();
            assert!(v.raw.abs() <= 1e-12, "r = {r}, s = {s}: {}", v.raw);
        }
    }
}

#[test]
fn sol2_reduced_equation() {
    let q = sol2_q();
    for k in 0..=500 {
        let s = 0.01 * k as f64;
        assert!(graph_ode_residual(&q, -1.0, 1.0, s).unwrap().abs() <= 1e-12, "s = {s}");
    }
}

#[test]
fn grim_reaper_closed_form_and_item_i() {
    let q = grim_reaper_q();
    for s in grim_reaper_check_points() {
        let (_, dq, ddq) = q.jet(s);
        assert!((-ddq - 1.0 - 0.75 * dq * dq).abs() <= 1e-10, "s = {s}");
    }
    let v = verify(&find_entry("grim-reaper").unwrap()).unwrap();
    assert!(v.pass);
    let literal = v.checks.iter().find(|c| c.label == "item-i-literal").unwrap();
    assert!(literal.max_abs <= 1e-9, "{}", literal.max_abs);
}

#[test]
fn catalog_verifies() {
    for e in mcfsol::catalog::catalog_entries() {
        let v = verify(&e).unwrap();
        assert!(v.pass, "{}", e.name);
    }
}
