//! Normals, fundamental forms and curvatures of the four surface families.

use serde::Serialize;

use crate::smooth::SmoothFn;
use crate::{Error, Result, Vec2, Vec3, TOL_PARAM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuledKind {
    /// `w' ≠ 0`, parameterized on the line of striction with `|w| = |w'| = 1`.
    Noncylindrical,
    /// Constant ruling direction.
    Cylindrical,
    /// Fixed vertex `β ≡ P`.
    Conical,
}

/// `X(s,u) = β(s) + u w(s)`.
#[derive(Debug, Clone)]
pub struct RuledSurface {
    pub beta: SmoothFn<Vec3>,
    pub w: SmoothFn<Vec3>,
    pub kind: RuledKind,
}

/// Distribution parameter and companions of a noncylindrical ruled surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuledInvariants {
    /// `λ = ⟨β'∧w, w'⟩`
    pub lambda: f64,
    pub lambda_prime: f64,
    /// `⟨β', w⟩`
    pub f: f64,
    /// `⟨w∧w', w''⟩`, the geodesic curvature of `w` on the unit sphere.
    pub j: f64,
}

/// Point, unit normal and curvatures at one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSample {
    pub s: f64,
    pub u: f64,
    pub point: Vec3,
    pub normal: Vec3,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
}

pub trait Surface: Sync {
    fn point(&self, s: f64, u: f64) -> Vec3;
    fn sample(&self, s: f64, u: f64) -> Result<SurfaceSample>;
}

fn triple(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.cross(b).dot(c)
}

impl RuledSurface {
    pub fn noncylindrical(beta: SmoothFn<Vec3>, w: SmoothFn<Vec3>) -> Self {
        Self {
            beta,
            w,
            kind: RuledKind::Noncylindrical,
        }
    }

    /// Cylinder over `beta` with constant rulings along `direction`. The
    /// direction need not be unit; curvature only depends on the line it spans.
    pub fn cylindrical(beta: SmoothFn<Vec3>, direction: Vec3) -> Self {
        Self {
            beta,
            w: SmoothFn::constant(direction),
            kind: RuledKind::Cylindrical,
        }
    }

    pub fn conical(apex: Vec3, w: SmoothFn<Vec3>) -> Self {
        Self {
            beta: SmoothFn::constant(apex),
            w,
            kind: RuledKind::Conical,
        }
    }

    /// `β = (0, 0, h s)`, `w = (cos s, sin s, 0)`.
    pub fn helicoid(h: f64) -> Self {
        Self::noncylindrical(
            SmoothFn::analytic(
                move |s| Vec3::new(0.0, 0.0, h * s),
                move |_| Vec3::new(0.0, 0.0, h),
                |_| Vec3::zeros(),
            ),
            SmoothFn::analytic(
                |s: f64| Vec3::new(s.cos(), s.sin(), 0.0),
                |s: f64| Vec3::new(-s.sin(), s.cos(), 0.0),
                |s: f64| Vec3::new(-s.cos(), -s.sin(), 0.0),
            ),
        )
    }

    fn require(&self, kind: RuledKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: match kind {
                    RuledKind::Noncylindrical => "noncylindrical ruled",
                    RuledKind::Cylindrical => "cylindrical",
                    RuledKind::Conical => "conical",
                },
            })
        }
    }

    /// Checks `|w| = 1`, `|w'| = 1` and `⟨β', w'⟩ = 0` at `s`.
    pub fn check_striction(&self, s: f64) -> Result<()> {
        let w = self.w.eval(s);
        let dw = self.w.d1(s);
        let db = self.beta.d1(s);
        let checks = [
            ("|w| = 1", (w.norm() - 1.0).abs()),
            ("|w'| = 1", (dw.norm() - 1.0).abs()),
            ("<beta', w'> = 0", db.dot(&dw).abs()),
        ];
        for (what, deviation) in checks {
            if deviation > TOL_PARAM || !deviation.is_finite() {
                return Err(Error::ParamViolation { what, deviation });
            }
        }
        Ok(())
    }

    pub fn invariants(&self, s: f64) -> Result<RuledInvariants> {
        self.require(RuledKind::Noncylindrical)?;
        self.check_striction(s)?;
        let (w, dw, ddw) = self.w.jet(s);
        let (_, db, ddb) = self.beta.jet(s);
        Ok(RuledInvariants {
            lambda: triple(&db, &w, &dw),
            lambda_prime: triple(&ddb, &w, &dw),
            f: db.dot(&w),
            j: triple(&w, &dw, &ddw),
        })
    }

    pub fn normal(&self, s: f64, u: f64) -> Result<Vec3> {
        let inv = self.invariants(s)?;
        let denom = (inv.lambda * inv.lambda + u * u).sqrt();
        if denom == 0.0 {
            return Err(Error::Singular(format!(
                "lambda = u = 0 at s = {s} (singular point of the ruled surface)"
            )));
        }
        let w = self.w.eval(s);
        let dw = self.w.d1(s);
        Ok((dw * inv.lambda + dw.cross(&w) * u) / denom)
    }

    pub fn mean_curvature(&self, s: f64, u: f64) -> Result<f64> {
        let inv = self.invariants(s)?;
        noncylindrical_mean_curvature(&inv, u)
    }

    pub fn gauss_curvature(&self, s: f64, u: f64) -> Result<f64> {
        let inv = self.invariants(s)?;
        let q = inv.lambda * inv.lambda + u * u;
        if q == 0.0 {
            return Err(Error::Singular(format!("lambda = u = 0 at s = {s}")));
        }
        Ok(-inv.lambda * inv.lambda / (q * q))
    }

    fn cylinder_frame(&self, s: f64) -> Result<(Vec3, f64)> {
        self.require(RuledKind::Cylindrical)?;
        let w = self.w.eval(s);
        let wn = w.norm();
        if wn == 0.0 {
            return Err(Error::Degenerate("zero ruling direction".into()));
        }
        let w = w / wn;
        let db = self.beta.d1(s);
        let f = db.dot(&w);
        let gram = db.norm_squared() - f * f;
        if gram <= f64::EPSILON * db.norm_squared().max(1.0) {
            return Err(Error::Degenerate(format!(
                "beta' is parallel to the rulings at s = {s}"
            )));
        }
        Ok((db.cross(&w), gram))
    }

    /// `H = ⟨β'', β'∧ŵ⟩ / 2(|β'|² − ⟨β',ŵ⟩²)^{3/2}`; independent of `u`.
    pub fn cylindrical_mean_curvature(&self, s: f64) -> Result<f64> {
        let (bw, gram) = self.cylinder_frame(s)?;
        Ok(self.beta.d2(s).dot(&bw) / (2.0 * gram.powf(1.5)))
    }

    pub fn cylindrical_normal(&self, s: f64) -> Result<Vec3> {
        let (bw, gram) = self.cylinder_frame(s)?;
        Ok(bw / gram.sqrt())
    }

    fn conical_frame(&self, s: f64) -> Result<(Vec3, Vec3, Vec3)> {
        self.require(RuledKind::Conical)?;
        let (w, dw, ddw) = self.w.jet(s);
        let dev = (w.norm() - 1.0).abs();
        if dev > TOL_PARAM {
            return Err(Error::ParamViolation {
                what: "|w| = 1",
                deviation: dev,
            });
        }
        if dw.norm() <= TOL_PARAM {
            return Err(Error::Degenerate(format!("w' vanishes at s = {s}")));
        }
        Ok((w, dw, ddw))
    }

    /// `⟨w'', w'∧w⟩`, shared by the conical mean curvature and the constant
    /// term of the conical soliton system.
    pub fn conical_triple(&self, s: f64) -> Result<(f64, f64)> {
        let (w, dw, ddw) = self.conical_frame(s)?;
        Ok((ddw.dot(&dw.cross(&w)), dw.norm()))
    }

    /// `H = ⟨w'', w'∧w⟩ / (2u|w'|³)`.
    pub fn conical_mean_curvature(&self, s: f64, u: f64) -> Result<f64> {
        let (t, dwn) = self.conical_triple(s)?;
        if u == 0.0 {
            return Err(Error::Singular("apex of the cone (u = 0)".into()));
        }
        Ok(t / (2.0 * u * dwn.powi(3)))
    }

    pub fn conical_normal(&self, s: f64) -> Result<Vec3> {
        let (w, dw, _) = self.conical_frame(s)?;
        Ok(dw.cross(&w) / dw.norm())
    }
}

/// Mean curvature of a noncylindrical ruled surface from its invariants.
pub fn noncylindrical_mean_curvature(inv: &RuledInvariants, u: f64) -> Result<f64> {
    let RuledInvariants {
        lambda: l,
        lambda_prime: dl,
        f,
        j,
    } = *inv;
    let q = l * l + u * u;
    if q == 0.0 {
        return Err(Error::Singular("lambda = u = 0".into()));
    }
    Ok(-(l * f + l * l * j + u * dl + u * u * j) / (2.0 * q.powf(1.5)))
}

impl Surface for RuledSurface {
    fn point(&self, s: f64, u: f64) -> Vec3 {
        self.beta.eval(s) + self.w.eval(s) * u
    }

    fn sample(&self, s: f64, u: f64) -> Result<SurfaceSample> {
        let (normal, mean_curvature, gauss_curvature) = match self.kind {
            RuledKind::Noncylindrical => (
                self.normal(s, u)?,
                self.mean_curvature(s, u)?,
                self.gauss_curvature(s, u)?,
            ),
            RuledKind::Cylindrical => (
                self.cylindrical_normal(s)?,
                self.cylindrical_mean_curvature(s)?,
                0.0,
            ),
            RuledKind::Conical => (
                self.conical_normal(s)?,
                self.conical_mean_curvature(s, u)?,
                0.0,
            ),
        };
        Ok(SurfaceSample {
            s,
            u,
            point: self.point(s, u),
            normal,
            mean_curvature,
            gauss_curvature,
        })
    }
}

/// `X(u,s) = (φ(s) cos u, φ(s) sin u, ψ(s))`.
#[derive(Debug, Clone)]
pub struct RevolutionSurface {
    pub phi: SmoothFn<f64>,
    pub psi: SmoothFn<f64>,
}

impl RevolutionSurface {
    pub fn new(phi: SmoothFn<f64>, psi: SmoothFn<f64>) -> Self {
        Self { phi, psi }
    }

    /// Round cylinder of radius `r` about the z-axis.
    pub fn cylinder(r: f64) -> Self {
        Self::new(SmoothFn::constant(r), SmoothFn::analytic(|s| s, |_| 1.0, |_| 0.0))
    }

    pub fn catenoid() -> Self {
        Self::new(
            SmoothFn::analytic(f64::cosh, f64::sinh, f64::cosh),
            SmoothFn::analytic(|s| s, |_| 1.0, |_| 0.0),
        )
    }

    /// Unit sphere through the profile `(cos s, sin s)`, `|s| < π/2`.
    pub fn sphere() -> Self {
        Self::new(
            SmoothFn::analytic(f64::cos, |s: f64| -s.sin(), |s: f64| -s.cos()),
            SmoothFn::analytic(f64::sin, f64::cos, |s: f64| -s.sin()),
        )
    }

    pub fn jet(&self, s: f64) -> PlaneCurveJet {
        let (x, dx, ddx) = self.phi.jet(s);
        let (y, dy, ddy) = self.psi.jet(s);
        PlaneCurveJet {
            x,
            y,
            dx,
            dy,
            ddx,
            ddy,
        }
    }

    fn regular_jet(&self, s: f64) -> Result<PlaneCurveJet> {
        let jet = self.jet(s);
        if jet.x <= 0.0 {
            return Err(Error::Singular(format!("phi = {} <= 0 at s = {s}", jet.x)));
        }
        if jet.speed_sq() == 0.0 {
            return Err(Error::Singular(format!("profile is not regular at s = {s}")));
        }
        Ok(jet)
    }

    pub fn normal(&self, s: f64, u: f64) -> Result<Vec3> {
        let dphi = self.phi.d1(s);
        let dpsi = self.psi.d1(s);
        let g = (dphi * dphi + dpsi * dpsi).sqrt();
        if g == 0.0 {
            return Err(Error::Singular(format!("phi' = psi' = 0 at s = {s}")));
        }
        Ok(Vec3::new(dpsi * u.cos(), dpsi * u.sin(), -dphi) / g)
    }

    /// `H = [φ(φ''ψ' − φ'ψ'') − ψ'(φ'² + ψ'²)] / 2φ(φ'² + ψ'²)^{3/2}`.
    pub fn mean_curvature(&self, s: f64) -> Result<f64> {
        let j = self.regular_jet(s)?;
        let g = j.speed_sq();
        Ok((j.x * (j.ddx * j.dy - j.dx * j.ddy) - j.dy * g) / (2.0 * j.x * g.powf(1.5)))
    }

    /// `K = (−ψ'²φ'' + φ'ψ'ψ'') / φ(φ'² + ψ'²)²`.
    pub fn gauss_curvature(&self, s: f64) -> Result<f64> {
        let j = self.regular_jet(s)?;
        let g = j.speed_sq();
        Ok((-j.dy * j.dy * j.ddx + j.dx * j.dy * j.ddy) / (j.x * g * g))
    }
}

impl Surface for RevolutionSurface {
    fn point(&self, s: f64, u: f64) -> Vec3 {
        let r = self.phi.eval(s);
        Vec3::new(r * u.cos(), r * u.sin(), self.psi.eval(s))
    }

    fn sample(&self, s: f64, u: f64) -> Result<SurfaceSample> {
        Ok(SurfaceSample {
            s,
            u,
            point: self.point(s, u),
            normal: self.normal(s, u)?,
            mean_curvature: self.mean_curvature(s)?,
            gauss_curvature: self.gauss_curvature(s)?,
        })
    }
}

/// Second-order jet of a plane curve `s ↦ (x(s), y(s))`.
///
/// For a revolution profile `x = φ`, `y = ψ`; for a cylinder directrix
/// `(0, h, q)` or `(h, q, 0)` the pair is `(h, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneCurveJet {
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
    pub ddx: f64,
    pub ddy: f64,
}

impl PlaneCurveJet {
    pub fn from_fns(x: &SmoothFn<f64>, y: &SmoothFn<f64>, s: f64) -> Self {
        let (x0, dx, ddx) = x.jet(s);
        let (y0, dy, ddy) = y.jet(s);
        Self {
            x: x0,
            y: y0,
            dx,
            dy,
            ddx,
            ddy,
        }
    }

    pub fn speed_sq(&self) -> f64 {
        self.dx * self.dx + self.dy * self.dy
    }

    /// `x''y' − y''x'`, i.e. `κ |τ|³`.
    pub fn curvature_numerator(&self) -> f64 {
        self.ddx * self.dy - self.ddy * self.dx
    }
}

/// Tangent `τ`, normal `η = (y', −x')` and signed curvature of a plane curve,
/// in profile-plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveFrame {
    pub tau: Vec2,
    pub eta: Vec2,
    pub kappa: f64,
}

pub fn curve_frame(jet: &PlaneCurveJet) -> Result<CurveFrame> {
    let g = jet.speed_sq();
    if g == 0.0 {
        return Err(Error::Singular("curve is not regular".into()));
    }
    Ok(CurveFrame {
        tau: Vec2::new(jet.dx, jet.dy),
        eta: Vec2::new(jet.dy, -jet.dx),
        kappa: jet.curvature_numerator() / g.powf(1.5),
    })
}
