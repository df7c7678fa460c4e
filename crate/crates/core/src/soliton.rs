//! Self-similar soliton condition `H = ⟨cX + Γ'(0)X + Θ'(0), N⟩` and the
//! specialized residual systems for each surface family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{curve_frame, PlaneCurveJet, RuledSurface, Surface, SurfaceSample};
use crate::{Error, Mat3, Result, Vec2, Vec3, TOL_PARAM};

pub const SCHEMA_VERSION: u32 = 1;

/// Fixed axis of the helicoidal part of the motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// Rotation about and translation along `e₃` (revolution convention).
    Z,
    /// Rotation about and translation along `e₁` (cylinder convention).
    X,
}

/// Infinitesimal homothetic helicoidal motion: rotation rate `a = ξ'(0)`,
/// translation rate `b = ζ'(0)` and dilation rate `c = σ'(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionGenerators {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub axis: Axis,
}

impl MotionGenerators {
    pub fn new(a: f64, b: f64, c: f64, axis: Axis) -> Self {
        Self { a, b, c, axis }
    }

    pub fn zero(axis: Axis) -> Self {
        Self::new(0.0, 0.0, 0.0, axis)
    }

    /// `Γ'(0)`, skew-symmetric.
    pub fn rotation_generator(&self) -> Mat3 {
        let a = self.a;
        match self.axis {
            Axis::Z => Mat3::new(0.0, -a, 0.0, a, 0.0, 0.0, 0.0, 0.0, 0.0),
            Axis::X => Mat3::new(0.0, 0.0, 0.0, 0.0, 0.0, -a, 0.0, a, 0.0),
        }
    }

    /// `Θ'(0)`
    pub fn translation(&self) -> Vec3 {
        match self.axis {
            Axis::Z => Vec3::new(0.0, 0.0, self.b),
            Axis::X => Vec3::new(self.b, 0.0, 0.0),
        }
    }

    /// `Γ'(0)x` without materializing the matrix.
    pub fn rotate(&self, x: &Vec3) -> Vec3 {
        match self.axis {
            Axis::Z => Vec3::new(-self.a * x.y, self.a * x.x, 0.0),
            Axis::X => Vec3::new(0.0, -self.a * x.z, self.a * x.y),
        }
    }

    /// `L'(0)x = c x + Γ'(0)x + Θ'(0)`.
    pub fn field(&self, x: &Vec3) -> Vec3 {
        x * self.c + self.rotate(x) + self.translation()
    }

    fn require_axis(&self, axis: Axis) -> Result<()> {
        if self.axis == axis {
            Ok(())
        } else {
            Err(Error::AxisConvention {
                expected: match axis {
                    Axis::Z => "Z",
                    Axis::X => "X",
                },
            })
        }
    }
}

pub fn motion_field(point: &Vec3, gens: &MotionGenerators) -> Vec3 {
    gens.field(point)
}

/// `⟨L'(0)X, N⟩ − H`.
pub fn pointwise_residual(sample: &SurfaceSample, gens: &MotionGenerators) -> f64 {
    gens.field(&sample.point).dot(&sample.normal) - sample.mean_curvature
}

/// A raw residual and the same value divided by `1 + Σ|terms|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualValue {
    pub raw: f64,
    pub normalized: f64,
}

impl ResidualValue {
    fn from_terms(lhs: f64, rhs_terms: &[f64]) -> Self {
        let rhs: f64 = rhs_terms.iter().sum();
        let scale = 1.0 + lhs.abs() + rhs_terms.iter().map(|t| t.abs()).sum::<f64>();
        let raw = lhs - rhs;
        Self {
            raw,
            normalized: raw / scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub s_count: usize,
    pub u_min: f64,
    pub u_max: f64,
    pub u_count: usize,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

impl GridSpec {
    pub fn new(s: (f64, f64, usize), u: (f64, f64, usize)) -> Self {
        Self {
            s_min: s.0,
            s_max: s.1,
            s_count: s.2,
            u_min: u.0,
            u_max: u.1,
            u_count: u.2,
        }
    }

    pub fn s_values(&self) -> Vec<f64> {
        linspace(self.s_min, self.s_max, self.s_count)
    }

    pub fn u_values(&self) -> Vec<f64> {
        linspace(self.u_min, self.u_max, self.u_count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualSample {
    pub s: f64,
    pub u: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub grid: GridSpec,
    pub samples: Vec<ResidualSample>,
    pub max_abs: f64,
    /// Euclidean norm of all sample residuals.
    pub l2: f64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    schema_version: u32,
    grid: &'a GridSpec,
    max_abs: f64,
    l2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<&'a [ResidualSample]>,
}

impl ResidualReport {
    pub fn from_samples(grid: GridSpec, samples: Vec<ResidualSample>) -> Self {
        let max_abs = samples.iter().fold(0.0f64, |m, r| m.max(r.residual.abs()));
        let l2 = samples.iter().map(|r| r.residual * r.residual).sum::<f64>().sqrt();
        Self {
            grid,
            samples,
            max_abs,
            l2,
        }
    }

    /// Concatenates the samples of two reports (max and L2 combine exactly).
    pub fn merge(mut self, other: ResidualReport) -> Self {
        self.max_abs = self.max_abs.max(other.max_abs);
        self.l2 = self.l2.hypot(other.l2);
        self.samples.extend(other.samples);
        self
    }

    pub fn to_json(&self, with_samples: bool) -> String {
        let doc = ReportJson {
            schema_version: SCHEMA_VERSION,
            grid: &self.grid,
            max_abs: self.max_abs,
            l2: self.l2,
            samples: with_samples.then_some(self.samples.as_slice()),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,u,residual\n");
        for r in &self.samples {
            out.push_str(&format!("{},{},{}\n", r.s, r.u, r.residual));
        }
        out
    }
}

pub fn residual_grid<S: Surface + ?Sized>(
    surface: &S,
    gens: &MotionGenerators,
    grid: &GridSpec,
) -> Result<ResidualReport> {
    let us = grid.u_values();
    let rows: Vec<Vec<ResidualSample>> = grid
        .s_values()
        .into_par_iter()
        .map(|s| {
            us.iter()
                .map(|&u| {
                    let sample = surface.sample(s, u)?;
                    Ok(ResidualSample {
                        s,
                        u,
                        residual: pointwise_residual(&sample, gens),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_samples(
        *grid,
        rows.into_iter().flatten().collect(),
    ))
}

/// Curvature residual of a revolution profile `α = (0, φ, ψ)`:
/// `κ|τ| − (2c⟨α,η⟩ + 2b⟨e₃,η⟩ + ⟨e₃,τ⟩/φ)`.
///
/// The rotation rate is ignored (rotation about the axis of revolution does
/// not move the surface). The pointwise residual at any `u` equals
/// `−raw / (2|τ|)`.
pub fn revolution_soliton_residual(
    jet: &PlaneCurveJet,
    gens: &MotionGenerators,
) -> Result<ResidualValue> {
    gens.require_axis(Axis::Z)?;
    if jet.x <= 0.0 {
        return Err(Error::Singular(format!("phi = {} <= 0", jet.x)));
    }
    let frame = curve_frame(jet)?;
    let alpha = Vec2::new(jet.x, jet.y);
    let e3 = Vec2::new(0.0, 1.0);
    let lhs = frame.kappa * frame.tau.norm();
    Ok(ResidualValue::from_terms(
        lhs,
        &[
            2.0 * gens.c * alpha.dot(&frame.eta),
            2.0 * gens.b * e3.dot(&frame.eta),
            e3.dot(&frame.tau) / jet.x,
        ],
    ))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CylinderOptions {
    /// Accept `|w| ≠ 1` and evaluate the printed equations literally. They
    /// were derived for unit rulings, so with this flag the residual no
    /// longer describes the geometry of the surface.
    pub allow_unnormalized_w: bool,
}

/// Algebraic (`u¹`) and ODE (`u⁰`) parts of the cylindrical soliton system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderResiduals {
    pub alg: f64,
    pub ode: ResidualValue,
}

fn check_ruling(w: &Vec3, opts: CylinderOptions) -> Result<()> {
    let dev = (w.norm() - 1.0).abs();
    if !opts.allow_unnormalized_w && dev > TOL_PARAM {
        return Err(Error::ParamViolation {
            what: "|w| = 1",
            deviation: dev,
        });
    }
    Ok(())
}

fn ode_denominator(jet: &PlaneCurveJet, proj: f64) -> Result<f64> {
    let den = jet.speed_sq() - proj * proj;
    if den <= f64::EPSILON * jet.speed_sq().max(1.0) {
        return Err(Error::Degenerate(
            "directrix tangent is parallel to the rulings".into(),
        ));
    }
    Ok(den)
}

/// Directrix `β = (0, h, q)` in the plane `x = 0`; `jet` carries `(h, q)`.
pub fn cylindrical_residuals_i(
    jet: &PlaneCurveJet,
    w: &Vec3,
    gens: &MotionGenerators,
    opts: CylinderOptions,
) -> Result<CylinderResiduals> {
    gens.require_axis(Axis::X)?;
    check_ruling(w, opts)?;
    let (x0, y0, z0) = (w.x, w.y, w.z);
    let (h, q, dh, dq) = (jet.x, jet.y, jet.dx, jet.dy);
    let MotionGenerators { a, b, c, .. } = *gens;
    let w_tau = y0 * dh + z0 * dq;
    let den = ode_denominator(jet, w_tau)?;
    let lhs = x0 * jet.curvature_numerator() / den;
    Ok(CylinderResiduals {
        alg: a * x0 * w_tau,
        ode: ResidualValue::from_terms(
            -lhs,
            &[
                -2.0 * c * x0 * (h * dq - q * dh),
                -2.0 * b * (z0 * dh - y0 * dq),
                2.0 * a * x0 * (q * dq + h * dh),
            ],
        )
        .negated(),
    })
}

/// Directrix `β = (h, q, 0)` in the plane `z = 0`; `jet` carries `(h, q)`.
pub fn cylindrical_residuals_ii(
    jet: &PlaneCurveJet,
    w: &Vec3,
    gens: &MotionGenerators,
    opts: CylinderOptions,
) -> Result<CylinderResiduals> {
    gens.require_axis(Axis::X)?;
    check_ruling(w, opts)?;
    let (x0, y0, z0) = (w.x, w.y, w.z);
    let (h, q, dh, dq) = (jet.x, jet.y, jet.dx, jet.dy);
    let MotionGenerators { a, b, c, .. } = *gens;
    let den = ode_denominator(jet, x0 * dh + y0 * dq)?;
    let lhs = z0 * jet.curvature_numerator() / den;
    Ok(CylinderResiduals {
        alg: a * ((1.0 - x0 * x0) * dh - x0 * y0 * dq),
        ode: ResidualValue::from_terms(
            -lhs,
            &[
                -2.0 * c * z0 * (h * dq - q * dh),
                -2.0 * b * z0 * dq,
                -2.0 * a * q * (y0 * dh - x0 * dq),
            ],
        )
        .negated(),
    })
}

impl ResidualValue {
    fn negated(self) -> Self {
        Self {
            raw: -self.raw,
            normalized: -self.normalized,
        }
    }
}

/// Inner products of the motion generators against the frame
/// `{w', w'∧w}` of a noncylindrical ruled surface at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoncylindricalCoefficients {
    /// `⟨Γ'β, w'⟩`
    pub rot_beta_dw: f64,
    /// `⟨Γ'w, w'⟩`
    pub rot_w_dw: f64,
    /// `⟨Γ'β, w'∧w⟩`
    pub rot_beta_bn: f64,
    /// `⟨Γ'w, w'∧w⟩`
    pub rot_w_bn: f64,
    /// `⟨Θ', w'⟩`
    pub trans_dw: f64,
    /// `⟨Θ', w'∧w⟩`
    pub trans_bn: f64,
    /// `c⟨β, w'∧w⟩`
    pub dil_bn: f64,
    /// `c⟨β, w'⟩`
    pub dil_dw: f64,
}

pub fn noncylindrical_coefficients(
    surface: &RuledSurface,
    gens: &MotionGenerators,
    s: f64,
) -> Result<NoncylindricalCoefficients> {
    surface.check_striction(s)?;
    let beta = surface.beta.eval(s);
    let w = surface.w.eval(s);
    let dw = surface.w.d1(s);
    let bn = dw.cross(&w);
    let rb = gens.rotate(&beta);
    let rw = gens.rotate(&w);
    let t = gens.translation();
    Ok(NoncylindricalCoefficients {
        rot_beta_dw: rb.dot(&dw),
        rot_w_dw: rw.dot(&dw),
        rot_beta_bn: rb.dot(&bn),
        rot_w_bn: rw.dot(&bn),
        trans_dw: t.dot(&dw),
        trans_bn: t.dot(&bn),
        dil_bn: gens.c * beta.dot(&bn),
        dil_dw: gens.c * beta.dot(&dw),
    })
}

/// Coefficients `[c₄, c₃, c₂, c₁, c₀]` of
/// `2(λ² + u²)^{3/2} (⟨L'(0)X, N⟩ − H)` as a polynomial in `u`.
pub fn noncylindrical_quartic(
    surface: &RuledSurface,
    gens: &MotionGenerators,
    s: f64,
) -> Result<[f64; 5]> {
    let inv = surface.invariants(s)?;
    let k = noncylindrical_coefficients(surface, gens, s)?;
    let l = inv.lambda;
    let p = k.rot_beta_dw + k.trans_dw + k.dil_dw;
    let q = k.rot_beta_bn + k.trans_bn + k.dil_bn;
    let z = k.rot_w_bn;
    let w = k.rot_w_dw;
    Ok([
        2.0 * z,
        2.0 * (l * w + q),
        2.0 * (l * l * z + l * p + 0.5 * inv.j),
        2.0 * l.powi(3) * w + 2.0 * l * l * q + inv.lambda_prime,
        2.0 * l.powi(3) * p + l * inv.f + l * l * inv.j,
    ])
}

/// Horner evaluation of `[c₄, …, c₀]`.
pub fn eval_quartic(coeffs: &[f64; 5], u: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * u + c)
}

/// Coefficients of `u|w'| (⟨L'(0)X, N⟩ − H) = u² quadratic + u linear − constant`
/// for a cone `X = P + u w(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicalResiduals {
    /// `⟨Γ'(0)w + c w, w'∧w⟩`
    pub quadratic: f64,
    /// `⟨L'(0)P, w'∧w⟩`
    pub linear: f64,
    /// `⟨w'', w'∧w⟩ / 2|w'|²`
    pub constant: f64,
}

pub fn conical_residual_system(
    surface: &RuledSurface,
    gens: &MotionGenerators,
    s: f64,
) -> Result<ConicalResiduals> {
    let (t, dwn) = surface.conical_triple(s)?;
    let apex = surface.beta.eval(s);
    let w = surface.w.eval(s);
    let bn = surface.w.d1(s).cross(&w);
    Ok(ConicalResiduals {
        quadratic: (gens.rotate(&w) + w * gens.c).dot(&bn),
        linear: gens.field(&apex).dot(&bn),
        constant: t / (2.0 * dwn * dwn),
    })
}

/// Scalar bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Config(format!(
            "no sign change on [{lo}, {hi}] ({flo:.3e}, {fhi:.3e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RevolutionSurface;
    use crate::smooth::SmoothFn;

    #[test]
    fn motion_field_examples() {
        let x = Vec3::new(0.3, -1.0, 2.0);
        assert_eq!(motion_field(&x, &MotionGenerators::zero(Axis::Z)), Vec3::zeros());
        let rot = MotionGenerators::new(1.0, 0.0, 0.0, Axis::Z);
        assert_eq!(motion_field(&Vec3::x(), &rot), Vec3::y());
        let g = MotionGenerators::new(0.0, 2.0, 3.0, Axis::X);
        assert_eq!(
            motion_field(&Vec3::new(1.0, 1.0, 1.0), &g),
            Vec3::new(5.0, 3.0, 3.0)
        );
    }

    #[test]
    fn rotation_generator_is_skew_and_matches_rotate() {
        for axis in [Axis::Z, Axis::X] {
            let g = MotionGenerators::new(0.7, -1.0, 0.5, axis);
            let m = g.rotation_generator();
            assert_eq!(m + m.transpose(), Mat3::zeros());
            let v = Vec3::new(0.2, -1.3, 4.0);
            assert_eq!(m * v, g.rotate(&v));
            assert!(g.rotate(&v).dot(&v).abs() < 1e-15);
        }
    }

    #[test]
    fn cylinder_shrinker_has_zero_residual() {
        for &r in &[0.5, 1.0, 2.0] {
            let cyl = RevolutionSurface::cylinder(r);
            let gens = MotionGenerators::new(0.0, 0.0, -1.0 / (2.0 * r * r), Axis::Z);
            let rep = residual_grid(&cyl, &gens, &GridSpec::new((-2.0, 2.0, 11), (0.0, 6.0, 7))).unwrap();
            assert!(rep.max_abs <= 1e-12, "{}", rep.max_abs);
            let v = revolution_soliton_residual(&cyl.jet(0.4), &gens).unwrap();
            assert!(v.raw.abs() <= 1e-12);
        }
    }

    #[test]
    fn helicoid_zero_gens_grid() {
        let hel = RuledSurface::helicoid(1.3);
        let grid = GridSpec::new((-3.0, 3.0, 20), (-2.0, 2.0, 9));
        let rep = residual_grid(&hel, &MotionGenerators::zero(Axis::Z), &grid).unwrap();
        assert!(rep.max_abs <= 1e-12);
        assert_eq!(rep.samples.len(), 180);
    }

    #[test]
    fn sphere_and_catenoid_profiles() {
        let sph = RevolutionSurface::sphere();
        let shrink = MotionGenerators::new(0.0, 0.0, -1.0, Axis::Z);
        let cat = RevolutionSurface::catenoid();
        for k in -7..=7 {
            let s = k as f64 * 0.2;
            assert!(revolution_soliton_residual(&sph.jet(s), &shrink).unwrap().raw.abs() < 1e-12);
            let v = revolution_soliton_residual(&cat.jet(s), &MotionGenerators::zero(Axis::Z)).unwrap();
            assert!(v.raw.abs() < 1e-12);
        }
    }

    #[test]
    fn revolution_residual_requires_z_axis() {
        let cyl = RevolutionSurface::cylinder(1.0);
        let err = revolution_soliton_residual(&cyl.jet(0.0), &MotionGenerators::zero(Axis::X));
        assert!(matches!(err, Err(Error::AxisConvention { .. })));
    }

    #[test]
    fn item_i_straight_directrix_zero_gens() {
        let jet = PlaneCurveJet { x: 0.3, y: 1.0, dx: 1.0, dy: 2.0, ddx: 0.0, ddy: 0.0 };
        let r = cylindrical_residuals_i(&jet, &Vec3::x(), &MotionGenerators::zero(Axis::X), Default::default())
            .unwrap();
        assert_eq!(r.alg, 0.0);
        assert_eq!(r.ode.raw, 0.0);
        let r = cylindrical_residuals_ii(&jet, &Vec3::z(), &MotionGenerators::zero(Axis::X), Default::default())
            .unwrap();
        assert_eq!((r.alg, r.ode.raw), (0.0, 0.0));
    }

    #[test]
    fn item_ii_shrinking_circle() {
        let gens = MotionGenerators::new(0.0, 0.0, -0.5, Axis::X);
        for k in 0..12 {
            let s = k as f64 * 0.5;
            let jet = PlaneCurveJet {
                x: s.cos(),
                y: s.sin(),
                dx: -s.sin(),
                dy: s.cos(),
                ddx: -s.cos(),
                ddy: -s.sin(),
            };
            let r = cylindrical_residuals_ii(&jet, &Vec3::z(), &gens, Default::default()).unwrap();
            assert!(r.ode.raw.abs() <= 1e-10);
        }
    }

    #[test]
    fn unnormalized_ruling_needs_flag() {
        let jet = PlaneCurveJet { x: 0.0, y: 1.0, dx: 1.0, dy: 0.5, ddx: 0.0, ddy: -0.1 };
        let w = Vec3::new(-1.0, 1.0, 0.0);
        let g = MotionGenerators::new(0.0, 0.5, 0.0, Axis::X);
        assert!(matches!(
            cylindrical_residuals_i(&jet, &w, &g, Default::default()),
            Err(Error::ParamViolation { .. })
        ));
        let opts = CylinderOptions { allow_unnormalized_w: true };
        assert!(cylindrical_residuals_i(&jet, &w, &g, opts).is_ok());
    }

    #[test]
    fn parallel_directrix_is_degenerate() {
        let jet = PlaneCurveJet { x: 0.0, y: 0.0, dx: 1.0, dy: 0.0, ddx: 0.0, ddy: 0.0 };
        let w = Vec3::new(0.0, 1.0, 0.0);
        let r = cylindrical_residuals_i(&jet, &w, &MotionGenerators::zero(Axis::X), Default::default());
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn helicoid_quartic_vanishes() {
        let hel = RuledSurface::helicoid(1.0);
        let c = noncylindrical_quartic(&hel, &MotionGenerators::zero(Axis::Z), 0.4).unwrap();
        assert!(c.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn varying_lambda_shows_in_linear_coefficient() {
        // w the equator, β' = λ(s) e₃ with λ = 1 + s / 2
        let surf = RuledSurface::noncylindrical(
            SmoothFn::analytic(
                |s| Vec3::new(0.0, 0.0, s + 0.25 * s * s),
                |s| Vec3::new(0.0, 0.0, 1.0 + 0.5 * s),
                |_| Vec3::new(0.0, 0.0, 0.5),
            ),
            RuledSurface::helicoid(1.0).w,
        );
        let c = noncylindrical_quartic(&surf, &MotionGenerators::zero(Axis::Z), 0.3).unwrap();
        let inv = surf.invariants(0.3).unwrap();
        assert!((inv.lambda_prime - 0.5).abs() < 1e-15);
        assert_eq!(c[3], inv.lambda_prime);
    }

    #[test]
    fn bisection_finds_cylinder_dilation_rate() {
        let r = 1.7;
        let cyl = RevolutionSurface::cylinder(r);
        let c = bisect(
            |c| revolution_soliton_residual(&cyl.jet(0.0), &MotionGenerators::new(0.0, 0.0, c, Axis::Z))
                .unwrap()
                .raw,
            -10.0,
            10.0,
            1e-12,
        )
        .unwrap();
        assert!((c + 1.0 / (2.0 * r * r)).abs() < 1e-11);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn report_json_and_csv() {
        let grid = GridSpec::new((0.0, 1.0, 2), (0.0, 0.0, 1));
        let rep = ResidualReport::from_samples(
            grid,
            vec![
                ResidualSample { s: 0.0, u: 0.0, residual: 3.0 },
                ResidualSample { s: 1.0, u: 0.0, residual: -4.0 },
            ],
        );
        assert_eq!(rep.max_abs, 4.0);
        assert_eq!(rep.l2, 5.0);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json(false)).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!(v.get("samples").is_none());
        assert_eq!(rep.to_csv().lines().count(), 3);
        let merged = rep.clone().merge(rep.clone());
        assert_eq!(merged.samples.len(), 4);
        assert!((merged.l2 - 50f64.sqrt()).abs() < 1e-14);
    }
}
