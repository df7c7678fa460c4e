use mcfsol::catalog::{forced_slope_item_i, forced_slope_item_ii};
use mcfsol::random_surfaces::*;
use mcfsol::soliton::*;
use mcfsol::{Axis, MotionGenerators, PlaneCurveJet, RuledSurface, SmoothFn, Surface, Vec3};
use proptest::prelude::*;
use rand::Rng;

fn random_axis(g: &mut impl Rng) -> Axis {
    if g.random_bool(0.5) {
        Axis::Z
    } else {
        Axis::X
    }
}

#[test]
fn quartic_reproduces_scaled_pointwise_residual() {
    let mut g = rng(21);
    for i in 0..20 {
        let r = random_noncylindrical(&mut g);
        let axis = random_axis(&mut g);
        let gens = random_generators(&mut g, axis);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let quartic = noncylindrical_quartic(&r, &gens, s).unwrap();
        let lambda = r.invariants(s).unwrap().lambda;
        for u in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let sample = r.sample(s, u).unwrap();
            let scaled = 2.0 * (lambda * lambda + u * u).powf(1.5) * pointwise_residual(&sample, &gens);
            let q = eval_quartic(&quartic, u);
            assert!((q - scaled).abs() <= 1e-8, "#{i} u={u}: {q} vs {scaled}");
        }
    }
}

fn graph_jet(h: (f64, f64, f64), q: (f64, f64, f64)) -> PlaneCurveJet {
    PlaneCurveJet {
        x: h.0,
        y: q.0,
        dx: h.1,
        dy: q.1,
        ddx: h.2,
        ddy: q.2,
    }
}

fn random_plane_jet(g: &mut impl Rng) -> PlaneCurveJet {
    graph_jet(
        (g.random_range(-1.0..1.0), g.random_range(0.5..1.5), g.random_range(-1.0..1.0)),
        (g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), g.random_range(-1.0..1.0)),
    )
}

/// Constant-jet directrix through the plane `which` (0: x = 0, 2: z = 0).
fn directrix(jet: PlaneCurveJet, which: usize) -> SmoothFn<Vec3> {
    let lift = move |a: f64, b: f64| if which == 0 { Vec3::new(0.0, a, b) } else { Vec3::new(a, b, 0.0) };
    SmoothFn::analytic(
        move |t| lift(jet.x + jet.dx * t + 0.5 * jet.ddx * t * t, jet.y + jet.dy * t + 0.5 * jet.ddy * t * t),
        move |t| lift(jet.dx + jet.ddx * t, jet.dy + jet.ddy * t),
        move |_| lift(jet.ddx, jet.ddy),
    )
}

#[test]
fn cylindrical_items_match_pointwise_residual() {
    let mut g = rng(22);
    for i in 0..100 {
        let jet = random_plane_jet(&mut g);
        let w = random_unit(&mut g);
        let gens = random_generators(&mut g, Axis::X);
        for (item, sign) in [(0usize, -1.0), (2usize, 1.0)] {
            let res = if item == 0 {
                cylindrical_residuals_i(&jet, &w, &gens, CylinderOptions::default())
            } else {
                cylindrical_residuals_ii(&jet, &w, &gens, CylinderOptions::default())
            };
            let Ok(res) = res else { continue };
            let surf = RuledSurface::cylindrical(directrix(jet, item), w);
            let beta1 = surf.beta.d1(0.0);
            let den = (beta1.norm_squared() - beta1.dot(&w).powi(2)).sqrt();
            for u in [-1.0, 0.0, 0.7] {
                let p = pointwise_residual(&surf.sample(0.0, u).unwrap(), &gens) * den;
                let expected = -0.5 * res.ode.raw + sign * u * res.alg;
                assert!((p - expected).abs() <= 1e-12 * (1.0 + p.abs()), "item {item} #{i}: {p} vs {expected}");
            }
        }
    }
}

#[test]
fn conical_system_is_scaled_pointwise_residual() {
    let mut g = rng(23);
    for i in 0..100 {
        let c = random_conical(&mut g);
        let axis = random_axis(&mut g);
        let gens = random_generators(&mut g, axis);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let sys = conical_residual_system(&c, &gens, s).unwrap();
        let dwn = c.w.d1(s).norm();
        for u in [-1.5, -0.4, 0.5, 2.0] {
            let r = pointwise_residual(&c.sample(s, u).unwrap(), &gens);
            let poly = u * u * sys.quadratic + u * sys.linear - sys.constant;
            assert!((u * dwn * r - poly).abs() <= 1e-12 * (1.0 + poly.abs()), "#{i} u={u}");
            // the u-free term is the mean curvature term alone
            let h = c.conical_mean_curvature(s, u).unwrap();
            assert!((u * dwn * h - sys.constant).abs() <= 1e-12 * (1.0 + sys.constant.abs()));
        }
    }
}

#[test]
fn conical_solitons_are_planes() {
    // a residual vanishing for all u forces the constant term, hence H, to vanish
    let mut g = rng(24);
    for _ in 0..50 {
        let rot = random_rotation(&mut g);
        let speed = g.random_range(0.5..2.0);
        let apex = random_unit(&mut g);
        let cone = RuledSurface::conical(
            apex,
            SmoothFn::analytic(
                move |s: f64| rot * Vec3::new((speed * s).cos(), (speed * s).sin(), 0.0),
                move |s: f64| rot * Vec3::new(-(speed * s).sin(), (speed * s).cos(), 0.0) * speed,
                move |s: f64| rot * Vec3::new(-(speed * s).cos(), -(speed * s).sin(), 0.0) * (speed * speed),
            ),
        );
        let s = g.random_range(-1.0..1.0);
        let sys = conical_residual_system(&cone, &MotionGenerators::zero(Axis::Z), s).unwrap();
        assert!(sys.constant.abs() <= 1e-15);
        for u in [-2.0, 0.5, 3.0] {
            assert!(cone.conical_mean_curvature(s, u).unwrap().abs() <= 1e-15);
        }
    }
}

#[test]
fn forced_slopes_give_flat_cylinders() {
    let mut g = rng(25);
    for i in 0..50 {
        let w = random_unit(&mut g);
        let a = g.random_range(0.2..1.0);
        let gens = MotionGenerators::new(a, g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), Axis::X);
        let (h1, h2, c0) = (g.random_range(0.5..1.5), g.random_range(-0.5..0.5), g.random_range(-1.0..1.0));
        let s = g.random_range(-1.0..1.0);
        for item in [0usize, 2] {
            let m = if item == 0 { forced_slope_item_i(&w) } else { forced_slope_item_ii(&w) }.unwrap();
            // directrix h(t) = h1 t + h2 t², q = m h + c0
            let jet = graph_jet(
                (h1 * s + h2 * s * s, h1 + 2.0 * h2 * s, 2.0 * h2),
                (m * (h1 * s + h2 * s * s) + c0, m * (h1 + 2.0 * h2 * s), m * 2.0 * h2),
            );
            let res = if item == 0 {
                cylindrical_residuals_i(&jet, &w, &gens, CylinderOptions::default())
            } else {
                cylindrical_residuals_ii(&jet, &w, &gens, CylinderOptions::default())
            };
            let Ok(res) = res else { continue };
            let surf = RuledSurface::cylindrical(directrix(jet, item), w);
            // admissible: rulings transverse to the directrix
            if surf.beta.d1(0.0).normalize().cross(&w).norm() < 0.1 {
                continue;
            }
            assert!(res.alg.abs() <= 1e-10, "alg item {item} #{i}: {}", res.alg);
            let h = surf.cylindrical_mean_curvature(0.0).unwrap();
            assert!(h.abs() <= 1e-10, "H item {item} #{i}: {h}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residual_is_affine_in_generators(
        seed in 0u64..10_000,
        g1 in prop::array::uniform3(-2.0f64..2.0),
        g2 in prop::array::uniform3(-2.0f64..2.0),
        s in -1.0f64..1.0,
        u in -1.5f64..1.5,
    ) {
        let surf = random_noncylindrical(&mut rng(seed));
        let sample = surf.sample(s, u).unwrap();
        let a = MotionGenerators::new(g1[0], g1[1], g1[2], Axis::Z);
        let b = MotionGenerators::new(g2[0], g2[1], g2[2], Axis::Z);
        let sum = MotionGenerators::new(g1[0] + g2[0], g1[1] + g2[1], g1[2] + g2[2], Axis::Z);
        let lhs = pointwise_residual(&sample, &sum);
        let rhs = pointwise_residual(&sample, &a) + pointwise_residual(&sample, &b) + sample.mean_curvature;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn zero_generators_leave_minus_h(seed in 0u64..10_000, s in -1.0f64..1.0, u in -1.5f64..1.5) {
        let surf = random_noncylindrical(&mut rng(seed));
        let sample = surf.sample(s, u).unwrap();
        prop_assert_eq!(pointwise_residual(&sample, &MotionGenerators::zero(Axis::X)), -sample.mean_curvature);
    }

    #[test]
    fn quartic_root_count_bounded(seed in 0u64..10_000, s in -1.0f64..1.0) {
        // a nonzero quartic has at most four real zeros in u
        let mut g = rng(seed);
        let surf = random_noncylindrical(&mut g);
        let gens = random_generators(&mut g, Axis::Z);
        let q = noncylindrical_quartic(&surf, &gens, s).unwrap();
        let us: Vec<f64> = (0..=400).map(|k| -20.0 + 0.1 * k as f64).collect();
        let changes = us.windows(2).filter(|w| eval_quartic(&q, w[0]) * eval_quartic(&q, w[1]) < 0.0).count();
        prop_assert!(changes <= 4);
    }
}
