//! Seeded random admissible surfaces and generators for property sweeps.
//!
//! Noncylindrical surfaces are built directly in line-of-striction form: the
//! ruling `w` runs at unit speed along a small circle of the unit sphere
//! (rotated at random) and `β = p w + r w' + q (w∧w')` with `r' = qJ − p`,
//! which makes `⟨β', w'⟩ = 0` hold identically.

use nalgebra::Rotation3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::soliton::{Axis, MotionGenerators};
use crate::{RevolutionSurface, RuledSurface, SmoothFn, Vec3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameter range on which the generated surfaces are sampled.
pub const S_RANGE: (f64, f64) = (-1.0, 1.0);

pub fn random_rotation(rng: &mut impl Rng) -> Rotation3<f64> {
    let axis = random_unit(rng);
    Rotation3::from_scaled_axis(axis * rng.random_range(0.0..std::f64::consts::PI))
}

pub fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if (0.2..=1.0).contains(&n) {
            return v / n;
        }
    }
}

pub fn random_generators(rng: &mut impl Rng, axis: Axis) -> MotionGenerators {
    MotionGenerators::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        axis,
    )
}

type Jet3 = (Vec3, Vec3, Vec3);

fn small_circle(rho: f64, s: f64) -> (Jet3, Vec3) {
    let h = (1.0 - rho * rho).sqrt();
    let (sn, cs) = (s / rho).sin_cos();
    let w = Vec3::new(rho * cs, rho * sn, h);
    let dw = Vec3::new(-sn, cs, 0.0);
    let ddw = Vec3::new(-cs / rho, -sn / rho, 0.0);
    ((w, dw, ddw), w.cross(&dw))
}

/// Unit-speed ruling on a small circle and a directrix on its line of
/// striction.
pub fn random_noncylindrical(rng: &mut impl Rng) -> RuledSurface {
    let rho: f64 = rng.random_range(0.4..0.95);
    let j = (1.0 - rho * rho).sqrt() / rho;
    let (p0, p1, m) = (rng.random_range(-1.0..1.0), rng.random_range(-0.5..0.5), rng.random_range(0.5..2.0));
    let (q0, q1, k) = (
        rng.random_range(0.5..1.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
        rng.random_range(-0.3..0.3),
        rng.random_range(0.5..2.0),
    );
    let r0 = rng.random_range(-1.0..1.0);
    let rot = random_rotation(rng);
    let shift = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));

    // scalar coefficient jets
    let p = move |s: f64| (p0 + p1 * (m * s).cos(), -p1 * m * (m * s).sin(), -p1 * m * m * (m * s).cos());
    let q = move |s: f64| (q0 + q1 * (k * s).sin(), q1 * k * (k * s).cos(), -q1 * k * k * (k * s).sin());
    let r = move |s: f64| {
        let val = r0 + (q0 * j - p0) * s - q1 * j / k * (k * s).cos() - p1 / m * (m * s).sin();
        let d1 = q(s).0 * j - p(s).0;
        let d2 = q(s).1 * j - p(s).1;
        (val, d1, d2)
    };
    let beta = move |s: f64| -> Jet3 {
        let ((w, dw, _), n) = small_circle(rho, s);
        let (p, dp, ddp) = p(s);
        let (q, dq, ddq) = q(s);
        let (r, dr, _) = r(s);
        let b0 = w * p + dw * r + n * q;
        let b1 = w * (dp - r) + n * (dq + r * j);
        let b2 = w * (ddp - dr) + dw * (dp - r) + n * (ddq + dr * j) - dw * (j * (dq + r * j));
        (rot * b0 + shift, rot * b1, rot * b2)
    };
    let wj = move |s: f64| -> Jet3 {
        let ((w, dw, ddw), _) = small_circle(rho, s);
        (rot * w, rot * dw, rot * ddw)
    };
    RuledSurface::noncylindrical(
        SmoothFn::analytic(move |s| beta(s).0, move |s| beta(s).1, move |s| beta(s).2),
        SmoothFn::analytic(move |s| wj(s).0, move |s| wj(s).1, move |s| wj(s).2),
    )
}

/// Random space curve with rulings along a random unit direction.
pub fn random_cylindrical(rng: &mut impl Rng) -> RuledSurface {
    let a: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
    let k: [f64; 3] = [rng.random_range(0.5..2.0), rng.random_range(0.5..2.0), rng.random_range(0.5..2.0)];
    let rot = random_rotation(rng);
    let mut dir = random_unit(rng);
    // keep the rulings transverse to the curve
    while (rot.inverse() * dir).x.abs() > 0.7 {
        dir = random_unit(rng);
    }
    let f = move |s: f64| -> Jet3 {
        let v = Vec3::new(s + a[0] * (k[0] * s).sin() * 0.3, a[1] * (k[1] * s).cos(), a[2] * (k[2] * s).sin());
        let d = Vec3::new(
            1.0 + 0.3 * a[0] * k[0] * (k[0] * s).cos(),
            -a[1] * k[1] * (k[1] * s).sin(),
            a[2] * k[2] * (k[2] * s).cos(),
        );
        let dd = Vec3::new(
            -0.3 * a[0] * k[0] * k[0] * (k[0] * s).sin(),
            -a[1] * k[1] * k[1] * (k[1] * s).cos(),
            -a[2] * k[2] * k[2] * (k[2] * s).sin(),
        );
        (rot * v, rot * d, rot * dd)
    };
    RuledSurface::cylindrical(
        SmoothFn::analytic(move |s| f(s).0, move |s| f(s).1, move |s| f(s).2),
        dir,
    )
}

/// Cone over a spherical curve with varying latitude and speed.
pub fn random_conical(rng: &mut impl Rng) -> RuledSurface {
    let (t0, t1, t2) = (rng.random_range(-1.0..1.0), rng.random_range(0.6..1.5), rng.random_range(-0.3..0.3));
    let (f0, f1) = (rng.random_range(-0.8..0.8), rng.random_range(-0.4..0.4));
    let rot = random_rotation(rng);
    let apex = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let f = move |s: f64| -> Jet3 {
        let (th, dth, ddth) = (t0 + t1 * s + t2 * s.sin(), t1 + t2 * s.cos(), -t2 * s.sin());
        let (ph, dph, ddph) = (f0 + f1 * (1.3 * s).sin(), 1.3 * f1 * (1.3 * s).cos(), -1.69 * f1 * (1.3 * s).sin());
        let (st, ct) = th.sin_cos();
        let (sp, cp) = ph.sin_cos();
        let w = Vec3::new(cp * ct, cp * st, sp);
        let w_t = Vec3::new(-cp * st, cp * ct, 0.0);
        let w_p = Vec3::new(-sp * ct, -sp * st, cp);
        let w_tt = Vec3::new(-cp * ct, -cp * st, 0.0);
        let w_tp = Vec3::new(sp * st, -sp * ct, 0.0);
        let w_pp = Vec3::new(-cp * ct, -cp * st, -sp);
        let dw = w_t * dth + w_p * dph;
        let ddw = w_t * ddth + w_p * ddph + w_tt * (dth * dth) + w_tp * (2.0 * dth * dph) + w_pp * (dph * dph);
        (rot * w, rot * dw, rot * ddw)
    };
    RuledSurface::conical(
        apex,
        SmoothFn::analytic(move |s| f(s).0, move |s| f(s).1, move |s| f(s).2),
    )
}

/// Profile with `φ > 0.5` and `ψ' ≥ 0.5` on [`S_RANGE`].
pub fn random_revolution(rng: &mut impl Rng) -> RevolutionSurface {
    let (a0, a1, a2, k) = (
        rng.random_range(1.2..2.0),
        rng.random_range(-0.3..0.3),
        rng.random_range(-0.3..0.3),
        rng.random_range(0.5..2.5),
    );
    let (b1, b2, m) = (rng.random_range(0.8..1.5), rng.random_range(-0.25..0.25), rng.random_range(0.5..2.0));
    RevolutionSurface::new(
        SmoothFn::analytic(
            move |s: f64| a0 + a1 * s + a2 * (k * s).sin(),
            move |s: f64| a1 + a2 * k * (k * s).cos(),
            move |s: f64| -a2 * k * k * (k * s).sin(),
        ),
        SmoothFn::analytic(
            move |s: f64| b1 * s + b2 * (m * s).cos(),
            move |s: f64| b1 - b2 * m * (m * s).sin(),
            move |s: f64| -b2 * m * m * (m * s).cos(),
        ),
    )
}
