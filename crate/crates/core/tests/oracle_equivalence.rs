use mcfsol::oracle::{agrees, fundamental_forms};
use mcfsol::random_surfaces::*;
use mcfsol::soliton::{residual_grid, GridSpec};
use mcfsol::{MotionGenerators, Axis, RevolutionSurface, RuledSurface, Surface};
use rand::Rng;

const DRAWS: usize = 100;
const REL: f64 = 1e-5;
const FLOOR: f64 = 1e-7;

fn check(label: &str, specialized: f64, oracle: f64) {
    assert!(
        agrees(specialized, oracle, REL, FLOOR),
        "{label}: specialized {specialized} vs oracle {oracle}"
    );
}

#[test]
fn noncylindrical_matches_oracle() {
    let mut g = rng(11);
    for i in 0..DRAWS {
        let r = random_noncylindrical(&mut g);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let u = g.random_range(-1.5..1.5);
        let sample = r.sample(s, u).unwrap();
        let o = fundamental_forms(|p, q| r.point(p, q), s, u);
        check(&format!("H #{i}"), sample.mean_curvature, o.mean_curvature);
        check(&format!("K #{i}"), sample.gauss_curvature, o.gauss_curvature);
        assert!((sample.normal - o.normal).norm() < 1e-6, "normal #{i}");
    }
}

#[test]
fn revolution_matches_oracle() {
    let mut g = rng(12);
    for i in 0..DRAWS {
        let rev = random_revolution(&mut g);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let u = g.random_range(0.0..std::f64::consts::TAU);
        // oracle parameters (p, q) = (u, s) give the module orientation
        let o = fundamental_forms(|p, q| rev.point(q, p), u, s);
        check(&format!("H #{i}"), rev.mean_curvature(s).unwrap(), o.mean_curvature);
        check(&format!("K #{i}"), rev.gauss_curvature(s).unwrap(), o.gauss_curvature);
        assert!((rev.normal(s, u).unwrap() - o.normal).norm() < 1e-6, "normal #{i}");
    }
}

#[test]
fn cylindrical_matches_oracle() {
    let mut g = rng(13);
    for i in 0..DRAWS {
        let c = random_cylindrical(&mut g);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let u = g.random_range(-1.5..1.5);
        let o = fundamental_forms(|p, q| c.point(p, q), s, u);
        check(&format!("H #{i}"), c.cylindrical_mean_curvature(s).unwrap(), o.mean_curvature);
        assert!(o.gauss_curvature.abs() < 1e-6, "K #{i}: {}", o.gauss_curvature);
        assert!((c.cylindrical_normal(s).unwrap() - o.normal).norm() < 1e-6, "normal #{i}");
    }
}

#[test]
fn conical_matches_oracle() {
    let mut g = rng(14);
    for i in 0..DRAWS {
        let c = random_conical(&mut g);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let mut u = g.random_range(0.3..2.0);
        if g.random_bool(0.5) {
            u = -u;
        }
        let o = fundamental_forms(|p, q| c.point(p, q), s, u);
        // X_s ∧ X_u = u w'∧w flips with u while the module normal does not
        let sign = u.signum();
        check(&format!("H #{i}"), c.conical_mean_curvature(s, u).unwrap() * sign, o.mean_curvature);
        assert!(o.gauss_curvature.abs() < 1e-6, "K #{i}");
        assert!((c.conical_normal(s).unwrap() * sign - o.normal).norm() < 1e-6, "normal #{i}");
    }
}

#[test]
fn minimal_surfaces_have_zero_mean_curvature() {
    let grid = GridSpec::new((-2.0, 2.0, 50), (-1.0, 1.0, 20));
    let zero = MotionGenerators::zero(Axis::Z);
    let surfaces: Vec<(&str, Box<dyn Surface>)> = vec![
        ("helicoid", Box::new(RuledSurface::helicoid(1.0))),
        ("catenoid", Box::new(RevolutionSurface::catenoid())),
        ("plane", Box::new(mcfsol::catalog::plane_surface())),
    ];
    for (name, surface) in surfaces {
        let report = residual_grid(surface.as_ref(), &zero, &grid).unwrap();
        assert_eq!(report.samples.len(), 1000);
        assert!(report.max_abs <= 1e-12, "{name}: {}", report.max_abs);
    }
}
