//! Generating-curve ODEs: the arc-length revolution system, the reduced
//! cylinder graph equations, figure presets and sampled plane curves.

use std::fmt;

use serde::Serialize;

use crate::geom::PlaneCurveJet;
use crate::ode::{integrate, Method, SolverConfig, StopReason};
use crate::soliton::{revolution_soliton_residual, Axis, MotionGenerators};
use crate::{Error, Result, Vec2, Vec3};

/// Speed tolerance for unit-speed revolution profiles.
pub const TOL_SPEED: f64 = 1e-7;

/// Arc-length state of a revolution generating curve `α = (0, φ, ψ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileState {
    pub s: f64,
    pub phi: f64,
    pub psi: f64,
    pub dphi: f64,
    pub dpsi: f64,
}

impl ProfileState {
    pub fn new(s: f64, phi: f64, psi: f64, dphi: f64, dpsi: f64) -> Self {
        Self { s, phi, psi, dphi, dpsi }
    }

    pub fn speed(&self) -> f64 {
        self.dphi.hypot(self.dpsi)
    }

    /// Same point, tangent rescaled to unit length.
    pub fn normalized(&self) -> Result<Self> {
        let v = self.speed();
        if v == 0.0 {
            return Err(Error::BadInitialSpeed(0.0));
        }
        Ok(Self {
            dphi: self.dphi / v,
            dpsi: self.dpsi / v,
            ..*self
        })
    }

    fn to_array(self) -> [f64; 4] {
        [self.phi, self.psi, self.dphi, self.dpsi]
    }

    fn from_array(s: f64, y: &[f64; 4]) -> Self {
        Self::new(s, y[0], y[1], y[2], y[3])
    }
}

/// `Q = 2c(φψ' − φ'ψ) − 2bφ' + ψ'/φ`; the profile satisfies `φ'' = ψ'Q`,
/// `ψ'' = −φ'Q`. Returns `(φ', ψ', φ'', ψ'')`.
pub fn revolution_rhs(state: &ProfileState, b: f64, c: f64) -> Result<[f64; 4]> {
    let ProfileState { phi, psi, dphi, dpsi, .. } = *state;
    if phi <= 0.0 {
        return Err(Error::Singular(format!("phi = {phi} <= 0")));
    }
    let q = 2.0 * c * (phi * dpsi - dphi * psi) - 2.0 * b * dphi + dpsi / phi;
    Ok([dphi, dpsi, dpsi * q, -dphi * q])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrationConfig {
    pub method: Method,
    /// End of the integration interval (may be below the start).
    pub s_max: f64,
    pub phi_floor: f64,
    pub max_steps: usize,
    /// Spacing of stored samples.
    pub output_step: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            method: Method::Rk45 { rtol: 1e-10, atol: 1e-12 },
            s_max: 10.0,
            phi_floor: 1e-6,
            max_steps: 5_000_000,
            output_step: 1e-3,
        }
    }
}

impl IntegrationConfig {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            method: self.method,
            output_step: Some(self.output_step),
            max_steps: self.max_steps,
        }
    }
}

/// Whether the initial tangent must have unit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpeedMode {
    /// Reject initial tangents that are not unit length.
    UnitSpeed,
    /// Integrate the tangent as given; the curve then has constant speed
    /// `|τ₀|` and still satisfies the general (non-arc-length) equation.
    Literal,
}

/// Integrates the revolution profile from `init` towards `cfg.s_max`.
pub fn integrate_revolution_profile(
    init: &ProfileState,
    b: f64,
    c: f64,
    cfg: &IntegrationConfig,
    mode: SpeedMode,
) -> Result<SampledCurve> {
    let speed = init.speed();
    if mode == SpeedMode::UnitSpeed && (speed - 1.0).abs() > TOL_SPEED {
        return Err(Error::BadInitialSpeed(speed));
    }
    if speed == 0.0 {
        return Err(Error::BadInitialSpeed(speed));
    }
    if init.phi <= cfg.phi_floor {
        return Err(Error::DomainViolation(format!(
            "initial phi = {} is below the floor {}",
            init.phi, cfg.phi_floor
        )));
    }
    let floor = cfg.phi_floor;
    let traj = integrate(
        |s, y: &[f64; 4]| revolution_rhs(&ProfileState::from_array(s, y), b, c),
        |y| y[0] - floor,
        init.s,
        init.to_array(),
        cfg.s_max,
        &cfg.solver(),
    )?;
    let mut s = traj.s;
    let mut y = traj.y;
    if cfg.s_max < init.s {
        s.reverse();
        y.reverse();
    }
    let points = y.iter().map(|v| Vec2::new(v[0], v[1])).collect();
    let tangents = y.iter().map(|v| Vec2::new(v[2], v[3])).collect();
    let mut curve = SampledCurve::from_parts(s, points, tangents, false)?;
    curve.stop = Some(traj.stop);
    Ok(curve)
}

/// Integrates forward to `s_span` and backward to `−s_span` from `init` and
/// joins the two branches.
pub fn integrate_revolution_profile_both(
    init: &ProfileState,
    b: f64,
    c: f64,
    s_span: f64,
    cfg: &IntegrationConfig,
    mode: SpeedMode,
) -> Result<(SampledCurve, [StopReason; 2])> {
    let fwd = integrate_revolution_profile(
        init,
        b,
        c,
        &IntegrationConfig { s_max: init.s + s_span, ..*cfg },
        mode,
    )?;
    let bwd = integrate_revolution_profile(
        init,
        b,
        c,
        &IntegrationConfig { s_max: init.s - s_span, ..*cfg },
        mode,
    )?;
    let stops = [bwd.stop.unwrap_or(StopReason::Reached), fwd.stop.unwrap_or(StopReason::Reached)];
    let mut samples = bwd.samples;
    samples.pop();
    samples.extend(fwd.samples);
    let mut curve = SampledCurve::from_parts(
        samples.iter().map(|p| p.s).collect(),
        samples.iter().map(|p| p.point).collect(),
        samples.iter().map(|p| p.tangent).collect(),
        false,
    )?;
    curve.stop = Some(if stops.contains(&StopReason::StepLimit) {
        StopReason::StepLimit
    } else if stops.contains(&StopReason::SingularStop) {
        StopReason::SingularStop
    } else {
        StopReason::Reached
    });
    Ok((curve, stops))
}

/// Residual of the curvature relation at every sample of an integrated
/// revolution profile, with curvature taken from the sampled tangents.
pub fn profile_residuals(curve: &SampledCurve, b: f64, c: f64) -> Result<Vec<f64>> {
    let gens = MotionGenerators::new(0.0, b, c, Axis::Z);
    let dt = curve.tangent_derivatives();
    curve
        .samples
        .iter()
        .zip(dt)
        .map(|(p, d)| {
            let jet = PlaneCurveJet {
                x: p.point.x,
                y: p.point.y,
                dx: p.tangent.x,
                dy: p.tangent.y,
                ddx: d.x,
                ddy: d.y,
            };
            revolution_soliton_residual(&jet, &gens).map(|r| r.raw)
        })
        .collect()
}

/// Reduced second-order equations for cylinder directrices given as graphs
/// `β = (0, s, q(s))` over the plane `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CylindricalGraphOde {
    /// Pure translation (`a = c = 0`):
    /// `2b(z₀ − y₀q') = −x₀q'' / (1 + q'² − (y₀ + z₀q')²)`.
    /// Evaluated literally, so `w` need not be unit.
    ItemIReduced { b: f64, w: Vec3 },
    /// `−q'' = 1 + (3/4) q'²`.
    GrimReaper,
    /// The full Item I equation with `h = s`; the algebraic constraint
    /// `a x₀ ⟨w, τ⟩ = 0` is not enforced.
    Custom { a: f64, b: f64, c: f64, w: Vec3 },
}

const DENOM_FLOOR: f64 = 1e-12;

impl CylindricalGraphOde {
    /// `q''` from `(s, q, q')`.
    pub fn second_derivative(&self, s: f64, q: f64, dq: f64) -> Result<f64> {
        let den = |w: &Vec3| -> Result<f64> {
            let p = w.y + w.z * dq;
            let d = 1.0 + dq * dq - p * p;
            if d.abs() <= DENOM_FLOOR {
                return Err(Error::DenominatorBlowup { s, value: d });
            }
            Ok(d)
        };
        match *self {
            Self::GrimReaper => Ok(-(1.0 + 0.75 * dq * dq)),
            Self::ItemIReduced { b, w } => {
                Self::require_x0(&w)?;
                Ok(-2.0 * b * (w.z - w.y * dq) * den(&w)? / w.x)
            }
            Self::Custom { a, b, c, w } => {
                Self::require_x0(&w)?;
                let rhs = 2.0 * c * w.x * (s * dq - q) + 2.0 * b * (w.z - w.y * dq)
                    - 2.0 * a * w.x * (q * dq + s);
                Ok(-rhs * den(&w)? / w.x)
            }
        }
    }

    fn require_x0(w: &Vec3) -> Result<()> {
        if w.x == 0.0 {
            return Err(Error::Degenerate("x0 = 0 removes the curvature term".into()));
        }
        Ok(())
    }
}

/// Integrates `q'' = F(s, q, q')` from `(s0, q0, dq0)` to `s_end` and returns
/// the graph `s ↦ (s, q(s))`.
pub fn integrate_cylindrical_graph(
    ode: &CylindricalGraphOde,
    s0: f64,
    q0: f64,
    dq0: f64,
    s_end: f64,
    cfg: &IntegrationConfig,
) -> Result<SampledCurve> {
    let traj = integrate(
        |s, y: &[f64; 2]| Ok([y[1], ode.second_derivative(s, y[0], y[1])?]),
        |_| 1.0,
        s0,
        [q0, dq0],
        s_end,
        &cfg.solver(),
    )?;
    if traj.stop == StopReason::StepLimit {
        return Err(Error::StepLimit(traj.steps));
    }
    let mut s = traj.s;
    let mut y = traj.y;
    if s_end < s0 {
        s.reverse();
        y.reverse();
    }
    let points = s.iter().zip(&y).map(|(s, v)| Vec2::new(*s, v[0])).collect();
    let tangents = y.iter().map(|v| Vec2::new(1.0, v[1])).collect();
    let mut curve = SampledCurve::from_parts(s, points, tangents, false)?;
    curve.stop = Some(traj.stop);
    Ok(curve)
}

/// Qualitative motion type read off the generator signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MotionClass {
    pub translating: bool,
    pub dilation: Dilation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dilation {
    Shrinking,
    Expanding,
    None,
}

impl MotionClass {
    pub fn from_generators(b: f64, c: f64) -> Self {
        Self {
            translating: b != 0.0,
            dilation: if c < 0.0 {
                Dilation::Shrinking
            } else if c > 0.0 {
                Dilation::Expanding
            } else {
                Dilation::None
            },
        }
    }
}

impl fmt::Display for MotionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dil = match self.dilation {
            Dilation::Shrinking => Some("shrinking"),
            Dilation::Expanding => Some("expanding"),
            Dilation::None => None,
        };
        match (self.translating, dil) {
            (true, Some(d)) => write!(f, "translating+{d}"),
            (true, None) => f.write_str("translating"),
            (false, Some(d)) => f.write_str(d),
            (false, None) => f.write_str("static"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigurePreset {
    pub figure: u32,
    pub b: f64,
    pub c: f64,
    pub initial: ProfileState,
    /// Motion type stated in the figure caption, as `(b, c)`.
    pub caption: (f64, f64),
}

impl FigurePreset {
    pub fn label(&self) -> MotionClass {
        MotionClass::from_generators(self.caption.0, self.caption.1)
    }

    pub fn is_unit_speed(&self) -> bool {
        (self.initial.speed() - 1.0).abs() <= TOL_SPEED
    }
}

pub const FIGURE_COUNT: u32 = 10;

pub fn figure_preset(n: u32) -> Result<FigurePreset> {
    let (b, c, phi, psi, dphi, dpsi) = match n {
        1 => (1.0, 0.0, 1.0, 0.0, 0.75f64.sqrt(), 0.25f64.sqrt()),
        2 => (1.0, 1.0, 1.0, 0.0, 1.0, 0.0),
        3 => (1.0, -2.0, 1.0, 0.0, 1.0, 0.0),
        4 => (1.0, -1.0, 1.0, 0.0, 1.0, 1.0),
        5 => (0.0, -2.0, 1.0, 0.0, 0.0, 1.0),
        6 => (0.0, 2.0, 1.0, 0.0, 0.0, 1.0),
        7 => (1.0, -4.0, 1.0, 1.0, 1.0, 1.0),
        8 => (1.0, -4.0, 0.5, 0.5, -1.0, 1.0),
        9 => (0.0, -6.0, 1.0, 0.0, 0.0, 1.0),
        10 => (0.0, -2.0, 1.0, 1.0, 0.0, 1.0),
        _ => return Err(Error::UnknownFigure(n)),
    };
    Ok(FigurePreset {
        figure: n,
        b,
        c,
        initial: ProfileState::new(0.0, phi, psi, dphi, dpsi),
        caption: (b, c),
    })
}

/// Residuals are evaluated on a grid this many times finer than the output
/// spacing and then subsampled.
pub const RESIDUAL_REFINE: usize = 10;

/// Result of integrating a figure preset forward over `[0, cfg.s_max]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRun {
    pub schema_version: u32,
    pub figure: u32,
    pub b: f64,
    pub c: f64,
    pub mode: SpeedMode,
    /// Initial state as listed in the preset table.
    pub preset_initial: ProfileState,
    /// Initial state actually integrated.
    pub initial: ProfileState,
    pub label: String,
    pub stop: StopReason,
    pub max_residual: f64,
    /// `max |φ'² + ψ'² − |τ₀|²|`.
    pub max_speed_drift: f64,
    pub note: Option<String>,
    #[serde(skip)]
    pub curve: SampledCurve,
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

pub fn run_figure(n: u32, mode: SpeedMode, cfg: &IntegrationConfig) -> Result<FigureRun> {
    let preset = figure_preset(n)?;
    let (initial, note) = match mode {
        SpeedMode::UnitSpeed if !preset.is_unit_speed() => (
            preset.initial.normalized()?,
            Some(format!(
                "initial tangent ({}, {}) has length {:.6}; normalized to unit length",
                preset.initial.dphi,
                preset.initial.dpsi,
                preset.initial.speed()
            )),
        ),
        SpeedMode::Literal if !preset.is_unit_speed() => (
            preset.initial,
            Some(format!(
                "initial tangent used as given (length {:.6}); the curve has constant speed and solves the non-arc-length equation",
                preset.initial.speed()
            )),
        ),
        _ => (preset.initial, None),
    };
    let fine = IntegrationConfig {
        output_step: cfg.output_step / RESIDUAL_REFINE as f64,
        ..*cfg
    };
    let dense = integrate_revolution_profile(&initial, preset.b, preset.c, &fine, mode)?;
    let dense_res = profile_residuals(&dense, preset.b, preset.c)?;
    let keep: Vec<usize> = (0..dense.len())
        .filter(|i| i % RESIDUAL_REFINE == 0 || *i == dense.len() - 1)
        .collect();
    let mut curve = dense.clone();
    curve.samples = keep.iter().map(|&i| dense.samples[i]).collect();
    let residuals: Vec<f64> = keep.iter().map(|&i| dense_res[i]).collect();
    let v0 = initial.speed().powi(2);
    let max_speed_drift = dense
        .samples
        .iter()
        .map(|p| (p.tangent.norm_squared() - v0).abs())
        .fold(0.0, f64::max);
    Ok(FigureRun {
        schema_version: crate::soliton::SCHEMA_VERSION,
        figure: n,
        b: preset.b,
        c: preset.c,
        mode,
        preset_initial: preset.initial,
        initial,
        label: preset.label().to_string(),
        stop: dense.stop.unwrap_or(StopReason::Reached),
        max_residual: dense_res.iter().fold(0.0, |m, r| m.max(r.abs())),
        max_speed_drift,
        note,
        curve,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub s: f64,
    pub point: Vec2,
    pub tangent: Vec2,
    pub kappa: f64,
}

/// Ordered samples of a plane curve, in profile-plane coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledCurve {
    pub samples: Vec<CurveSample>,
    /// The last sample connects back to the first.
    pub closed: bool,
    pub stop: Option<StopReason>,
}

fn is_uniform(s: &[f64]) -> bool {
    if s.len() < 2 {
        return true;
    }
    let d0 = s[1] - s[0];
    s.windows(2).all(|w| ((w[1] - w[0]) - d0).abs() <= 1e-9 * d0.abs())
}

/// `d/ds` of sampled values: seven- and five-point stencils (one-sided at
/// the ends of open curves) where the local spacing is uniform, second-order three-point
/// stencils elsewhere. Periodic when
/// `period` is given (the period of the parameter).
pub fn differentiate(s: &[f64], v: &[Vec2], period: Option<f64>) -> Vec<Vec2> {
    let n = s.len();
    assert_eq!(n, v.len());
    if n < 2 {
        return vec![Vec2::zeros(); n];
    }
    let at = |i: isize| -> (f64, Vec2) {
        match period {
            Some(p) => {
                let k = i.rem_euclid(n as isize) as usize;
                let wraps = i.div_euclid(n as isize) as f64;
                (s[k] + wraps * p, v[k])
            }
            None => (s[i as usize], v[i as usize]),
        }
    };
    let three = |s0: f64, s1: f64, s2: f64, v0: Vec2, v1: Vec2, v2: Vec2, x: f64| -> Vec2 {
        // derivative of the quadratic interpolant at x
        let l0 = (2.0 * x - s1 - s2) / ((s0 - s1) * (s0 - s2));
        let l1 = (2.0 * x - s0 - s2) / ((s1 - s0) * (s1 - s2));
        let l2 = (2.0 * x - s0 - s1) / ((s2 - s0) * (s2 - s1));
        v0 * l0 + v1 * l1 + v2 * l2
    };
    (0..n as isize)
        .map(|i| {
            let inside = |k: isize| period.is_some() || (k >= 0 && k < n as isize);
            if inside(i - 3) && inside(i + 3) && n >= 7 {
                let pts: Vec<(f64, Vec2)> = (-3..=3).map(|k| at(i + k)).collect();
                let h = pts[4].0 - pts[3].0;
                let uniform = pts.windows(2).all(|w| ((w[1].0 - w[0].0) - h).abs() <= 1e-9 * h.abs());
                if uniform {
                    return (pts[6].1 - pts[0].1 + (pts[1].1 - pts[5].1) * 9.0 + (pts[4].1 - pts[2].1) * 45.0)
                        / (60.0 * h);
                }
            }
            if inside(i - 2) && inside(i + 2) && n >= 5 {
                let pts: Vec<(f64, Vec2)> = (-2..=2).map(|k| at(i + k)).collect();
                let h = pts[3].0 - pts[2].0;
                let uniform = pts.windows(2).all(|w| ((w[1].0 - w[0].0) - h).abs() <= 1e-9 * h.abs());
                if uniform {
                    return (pts[0].1 - pts[1].1 * 8.0 + pts[3].1 * 8.0 - pts[4].1) / (12.0 * h);
                }
            }
            if period.is_none() && n >= 5 && (i < 2 || i >= n as isize - 2) {
                let (lo, sign) = if i < 2 { (0usize, 1.0) } else { (n - 1, -1.0) };
                let idx = |k: usize| if sign > 0.0 { lo + k } else { lo - k };
                let h = s[idx(1)] - s[idx(0)];
                let uniform = (1..5).all(|k| ((s[idx(k)] - s[idx(k - 1)]) - h).abs() <= 1e-9 * h.abs());
                if uniform {
                    let f = |k: usize| v[idx(k)];
                    let d = if i == 0 || i == n as isize - 1 {
                        f(0) * -25.0 + f(1) * 48.0 - f(2) * 36.0 + f(3) * 16.0 - f(4) * 3.0
                    } else {
                        f(0) * -3.0 - f(1) * 10.0 + f(2) * 18.0 - f(3) * 6.0 + f(4)
                    };
                    return d / (12.0 * h);
                }
            }
            let (j0, j1, j2) = if n < 3 {
                return (v[1] - v[0]) / (s[1] - s[0]);
            } else if inside(i - 1) && inside(i + 1) {
                (i - 1, i, i + 1)
            } else if !inside(i - 1) {
                (i, i + 1, i + 2)
            } else {
                (i - 2, i - 1, i)
            };
            let (a, b, c) = (at(j0), at(j1), at(j2));
            three(a.0, b.0, c.0, a.1, b.1, c.1, at(i).0)
        })
        .collect()
}

fn signed_curvature(tangent: &Vec2, dtangent: &Vec2) -> f64 {
    let speed = tangent.norm();
    (dtangent.x * tangent.y - dtangent.y * tangent.x) / speed.powi(3)
}

impl SampledCurve {
    /// Builds a curve from parameters, points and tangents; curvature is
    /// estimated from the tangents.
    pub fn from_parts(s: Vec<f64>, points: Vec<Vec2>, tangents: Vec<Vec2>, closed: bool) -> Result<Self> {
        if s.len() != points.len() || s.len() != tangents.len() {
            return Err(Error::Config("mismatched sample arrays".into()));
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("sample parameters must increase strictly".into()));
        }
        if points.iter().chain(&tangents).any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::Config("non-finite sample".into()));
        }
        let mut curve = Self {
            samples: s
                .iter()
                .zip(points.iter().zip(&tangents))
                .map(|(&s, (&point, &tangent))| CurveSample {
                    s,
                    point,
                    tangent,
                    kappa: 0.0,
                })
                .collect(),
            closed,
            stop: None,
        };
        let dt = curve.tangent_derivatives();
        for (p, d) in curve.samples.iter_mut().zip(dt) {
            p.kappa = signed_curvature(&p.tangent, &d);
        }
        Ok(curve)
    }

    /// Builds a curve from points alone: tangents by differentiation,
    /// curvature from three-point circumcircles.
    pub fn from_points(s: Vec<f64>, points: Vec<Vec2>, closed: bool) -> Result<Self> {
        let period = closed.then(|| Self::closing_period(&s, &points));
        let tangents = differentiate(&s, &points, period);
        let mut curve = Self::from_parts(s, points, tangents, closed)?;
        let k = menger_curvature(&curve.points(), closed);
        for (p, k) in curve.samples.iter_mut().zip(k) {
            p.kappa = k;
        }
        Ok(curve)
    }

    fn closing_period(s: &[f64], points: &[Vec2]) -> f64 {
        let n = s.len();
        let gap = if n > 1 && is_uniform(s) {
            s[1] - s[0]
        } else {
            (points[0] - points[n - 1]).norm()
        };
        s[n - 1] - s[0] + gap
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn params(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.s).collect()
    }

    pub fn points(&self) -> Vec<Vec2> {
        self.samples.iter().map(|p| p.point).collect()
    }

    fn period(&self) -> Option<f64> {
        self.closed
            .then(|| Self::closing_period(&self.params(), &self.points()))
    }

    /// `d/ds` of the stored tangents.
    pub fn tangent_derivatives(&self) -> Vec<Vec2> {
        let tangents: Vec<Vec2> = self.samples.iter().map(|p| p.tangent).collect();
        differentiate(&self.params(), &tangents, self.period())
    }

    pub fn has_uniform_spacing(&self) -> bool {
        is_uniform(&self.params())
    }

    fn hermite_segments(&self) -> Vec<HermiteSeg> {
        let n = self.len();
        let acc = self.tangent_derivatives();
        let closing = self.period().map(|p| p - (self.samples[n - 1].s - self.samples[0].s));
        (0..self.segment_count())
            .map(|i| {
                let a = &self.samples[i];
                let j = (i + 1) % n;
                let b = &self.samples[j];
                let ds = if j > i { b.s - a.s } else { closing.unwrap_or_default() };
                HermiteSeg {
                    p0: a.point,
                    m0: a.tangent * ds,
                    a0: acc[i] * (ds * ds),
                    p1: b.point,
                    m1: b.tangent * ds,
                    a1: acc[j] * (ds * ds),
                }
            })
            .collect()
    }

    fn segment_count(&self) -> usize {
        if self.closed {
            self.len()
        } else {
            self.len().saturating_sub(1)
        }
    }

    /// Length of the quintic Hermite interpolant through points, tangents
    /// and tangent derivatives.
    pub fn length(&self) -> f64 {
        self.hermite_segments().iter().map(|g| hermite_arc(g, 1.0)).sum()
    }

    /// Resamples at `n` points equally spaced in arc length of the Hermite
    /// interpolant; the new parameter is arc length from the first sample.
    pub fn resample_arclength(&self, n: usize) -> Result<SampledCurve> {
        if n < 2 || self.len() < 2 {
            return Err(Error::Config("resampling needs at least two samples".into()));
        }
        let unit_speed = self.samples.iter().all(|p| (p.tangent.norm() - 1.0).abs() <= 1e-12);
        if n == self.len() && unit_speed && self.has_uniform_spacing() {
            return Ok(self.clone());
        }
        let segs = self.hermite_segments();
        let lens: Vec<f64> = segs.iter().map(|g| hermite_arc(g, 1.0)).collect();
        let total: f64 = lens.iter().sum();
        let count = if self.closed { n } else { n - 1 };
        let step = total / count as f64;
        let s0 = self.samples[0].s;
        let mut s = Vec::with_capacity(n);
        let mut pts = Vec::with_capacity(n);
        let mut tans = Vec::with_capacity(n);
        let mut seg = 0usize;
        let mut start = 0.0;
        for k in 0..n {
            let target = if !self.closed && k == n - 1 { total } else { k as f64 * step };
            while seg + 1 < segs.len() && start + lens[seg] < target {
                start += lens[seg];
                seg += 1;
            }
            let t = hermite_param_at(&segs[seg], lens[seg], target - start);
            let (p, d) = hermite_eval(&segs[seg], t);
            s.push(s0 + target);
            pts.push(p);
            tans.push(d / d.norm());
        }
        let mut out = SampledCurve::from_parts(s, pts, tans, self.closed)?;
        out.stop = self.stop;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
struct HermiteSeg {
    p0: Vec2,
    m0: Vec2,
    a0: Vec2,
    p1: Vec2,
    m1: Vec2,
    a1: Vec2,
}

/// Quintic Hermite point and derivative at `t ∈ [0, 1]`.
fn hermite_eval(g: &HermiteSeg, t: f64) -> (Vec2, Vec2) {
    let (t2, t3) = (t * t, t * t * t);
    let (t4, t5) = (t3 * t, t3 * t2);
    let p = g.p0 * (1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5)
        + g.m0 * (t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5)
        + g.a0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5)
        + g.a1 * (0.5 * t3 - t4 + 0.5 * t5)
        + g.m1 * (-4.0 * t3 + 7.0 * t4 - 3.0 * t5)
        + g.p1 * (10.0 * t3 - 15.0 * t4 + 6.0 * t5);
    let d = g.p0 * (-30.0 * t2 + 60.0 * t3 - 30.0 * t4)
        + g.m0 * (1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4)
        + g.a0 * (t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4)
        + g.a1 * (1.5 * t2 - 4.0 * t3 + 2.5 * t4)
        + g.m1 * (-12.0 * t2 + 28.0 * t3 - 15.0 * t4)
        + g.p1 * (30.0 * t2 - 60.0 * t3 + 30.0 * t4);
    (p, d)
}

const GAUSS5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
];

/// Arc length of a Hermite segment over `[0, t]`.
fn hermite_arc(seg: &HermiteSeg, t: f64) -> f64 {
    GAUSS5
        .iter()
        .map(|(x, w)| {
            let tau = 0.5 * t * (x + 1.0);
            w * hermite_eval(seg, tau).1.norm()
        })
        .sum::<f64>()
        * 0.5
        * t
}

fn hermite_param_at(seg: &HermiteSeg, seg_len: f64, target: f64) -> f64 {
    if seg_len <= 0.0 {
        return 0.0;
    }
    let mut t = (target / seg_len).clamp(0.0, 1.0);
    for _ in 0..30 {
        let f = hermite_arc(seg, t) - target;
        let d = hermite_eval(seg, t).1.norm();
        if d == 0.0 {
            break;
        }
        let next = (t - f / d).clamp(0.0, 1.0);
        if (next - t).abs() <= 1e-15 {
            t = next;
            break;
        }
        t = next;
    }
    t
}

/// Signed three-point circumcircle curvature, sign matching
/// `(x''y' − y''x') / |τ|³`. Endpoints of open curves copy their neighbour.
pub fn menger_curvature(points: &[Vec2], closed: bool) -> Vec<f64> {
    let n = points.len();
    if n < 3 {
        return vec![0.0; n];
    }
    let k = |a: Vec2, b: Vec2, c: Vec2| -> f64 {
        let u = b - a;
        let v = c - b;
        let cross = u.x * v.y - u.y * v.x;
        -2.0 * cross / (u.norm() * v.norm() * (c - a).norm())
    };
    let mut out: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                if closed {
                    let prev = points[(i + n - 1) % n];
                    let next = points[(i + 1) % n];
                    k(prev, points[i], next)
                } else {
                    0.0
                }
            } else {
                k(points[i - 1], points[i], points[i + 1])
            }
        })
        .collect();
    if !closed {
        out[0] = out[1];
        out[n - 1] = out[n - 2];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> SampledCurve {
        let s: Vec<f64> = (0..n).map(|i| 2.0 * PI * i as f64 / (n - 1) as f64).collect();
        let p = s.iter().map(|t| Vec2::new(t.cos(), t.sin())).collect();
        let t = s.iter().map(|t| Vec2::new(-t.sin(), t.cos())).collect();
        SampledCurve::from_parts(s, p, t, false).unwrap()
    }

    #[test]
    fn cylinder_is_fixed_point_of_rhs() {
        let r = 0.8;
        let st = ProfileState::new(0.0, r, 3.0, 0.0, 1.0);
        let d = revolution_rhs(&st, 0.0, -1.0 / (2.0 * r * r)).unwrap();
        assert!(d[2].abs() < 1e-15 && d[3].abs() < 1e-15);
    }

    #[test]
    fn rhs_conserves_speed() {
        let st = ProfileState::new(0.0, 1.3, -0.4, 0.6, 0.8);
        let d = revolution_rhs(&st, 0.7, -1.1).unwrap();
        assert!((st.dphi * d[2] + st.dpsi * d[3]).abs() < 1e-15);
        assert!(revolution_rhs(&ProfileState::new(0.0, 0.0, 0.0, 0.0, 1.0), 0.0, 0.0).is_err());
    }

    #[test]
    fn catenoid_germ_exact() {
        let init = ProfileState::new(0.0, 1.0, 0.0, 0.0, 1.0);
        let cfg = IntegrationConfig { s_max: 2.0, ..Default::default() };
        let curve = integrate_revolution_profile(&init, 0.0, 0.0, &cfg, SpeedMode::UnitSpeed).unwrap();
        for p in &curve.samples {
            assert!((p.point.x - (1.0 + p.s * p.s).sqrt()).abs() < 1e-8);
            assert!((p.point.y - p.s.asinh()).abs() < 1e-8);
        }
    }

    #[test]
    fn cylinder_equilibrium_profile() {
        // Q vanishes exactly in floating point for r = 1/2, c = −2
        let init = ProfileState::new(0.0, 0.5, 0.0, 0.0, 1.0);
        let curve =
            integrate_revolution_profile(&init, 0.0, -2.0, &Default::default(), SpeedMode::UnitSpeed).unwrap();
        assert_eq!(curve.stop, Some(StopReason::Reached));
        assert!(curve.samples.iter().all(|p| (p.point.x - 0.5).abs() < 1e-9));

        // for r = 1/√2 the rounding of Q seeds the e^{s²} mode of the
        // linearization, which is still invisible on [0, 4]
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let init = ProfileState::new(0.0, r, 0.0, 0.0, 1.0);
        let cfg = IntegrationConfig { s_max: 4.0, ..Default::default() };
        let curve = integrate_revolution_profile(&init, 0.0, -1.0, &cfg, SpeedMode::UnitSpeed).unwrap();
        assert!(curve.samples.iter().all(|p| (p.point.x - r).abs() < 1e-9));
    }

    #[test]
    fn bad_speed_rejected_unless_literal() {
        let p = figure_preset(4).unwrap();
        let cfg = IntegrationConfig { s_max: 0.5, ..Default::default() };
        assert!(matches!(
            integrate_revolution_profile(&p.initial, p.b, p.c, &cfg, SpeedMode::UnitSpeed),
            Err(Error::BadInitialSpeed(_))
        ));
        let lit = integrate_revolution_profile(&p.initial, p.b, p.c, &cfg, SpeedMode::Literal).unwrap();
        let v0 = p.initial.speed();
        assert!(lit.samples.iter().all(|q| (q.tangent.norm() - v0).abs() < 1e-8));
    }

    #[test]
    fn presets_match_table() {
        let p1 = figure_preset(1).unwrap();
        assert_eq!((p1.b, p1.c), (1.0, 0.0));
        assert_eq!(p1.initial.dphi, 0.75f64.sqrt());
        let p8 = figure_preset(8).unwrap();
        assert_eq!(
            (p8.initial.phi, p8.initial.psi, p8.initial.dphi, p8.initial.dpsi),
            (0.5, 0.5, -1.0, 1.0)
        );
        assert_eq!(figure_preset(11), Err(Error::UnknownFigure(11)));
        assert_eq!(figure_preset(0), Err(Error::UnknownFigure(0)));
        assert_eq!(figure_preset(5).unwrap().label().to_string(), "shrinking");
        assert_eq!(figure_preset(1).unwrap().label().to_string(), "translating");
        assert_eq!(figure_preset(2).unwrap().label().to_string(), "translating+expanding");
        let unit: Vec<u32> = (1..=10).filter(|&n| !figure_preset(n).unwrap().is_unit_speed()).collect();
        assert_eq!(unit, vec![4, 7, 8]);
    }

    #[test]
    fn grim_reaper_graph_matches_closed_form() {
        let q = |s: f64| {
            let t = 3f64.sqrt() * s / 2.0;
            (2.0 / 3.0) * (0.75 * (t.sin() - t.cos()).powi(2)).ln()
        };
        let dq = |s: f64| {
            let t = 3f64.sqrt() * s / 2.0;
            (2.0 * 3f64.sqrt() / 3.0) * (t.cos() + t.sin()) / (t.sin() - t.cos())
        };
        let s0 = 2.5;
        let curve = integrate_cylindrical_graph(
            &CylindricalGraphOde::GrimReaper,
            s0,
            q(s0),
            dq(s0),
            4.0,
            &Default::default(),
        )
        .unwrap();
        let dev = curve
            .samples
            .iter()
            .map(|p| (p.point.y - q(p.s)).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-7, "{dev}");
    }

    #[test]
    fn straight_line_stays_affine() {
        let ode = CylindricalGraphOde::Custom { a: 0.0, b: 0.0, c: 0.0, w: Vec3::x() };
        let curve = integrate_cylindrical_graph(&ode, 0.0, 1.0, 0.3, 2.0, &Default::default()).unwrap();
        assert!(curve.samples.iter().all(|p| (p.point.y - (1.0 + 0.3 * p.s)).abs() < 1e-12));
    }

    #[test]
    fn denominator_blowup_reported() {
        // w = (1, 1, 0): 1 + q'² − 1 vanishes at q' = 0
        let ode = CylindricalGraphOde::ItemIReduced { b: 0.5, w: Vec3::new(1.0, 1.0, 0.0) };
        let r = integrate_cylindrical_graph(&ode, 0.0, 0.0, 0.0, 1.0, &Default::default());
        assert!(matches!(r, Err(Error::DenominatorBlowup { .. })));
    }

    #[test]
    fn sampled_circle_curvature() {
        let c = circle(200);
        for p in &c.samples[2..198] {
            assert!((p.kappa + 1.0).abs() < 1e-7);
        }
        let m = menger_curvature(&c.points(), false);
        assert!(m[1..199].iter().all(|k| (k + 1.0).abs() < 1e-3));
    }

    #[test]
    fn resample_preserves_length() {
        let c = circle(100);
        assert!((c.length() - 2.0 * PI).abs() < 1e-6);
        let r = c.resample_arclength(50).unwrap();
        assert_eq!(r.len(), 50);
        assert!((r.length() - 2.0 * PI).abs() < 1e-6, "{}", r.length() - 2.0 * PI);
        assert!(r.samples.windows(2).all(|w| w[1].s > w[0].s));
        assert_eq!(c.resample_arclength(100).unwrap(), c);
    }

    #[test]
    fn differentiate_nonuniform() {
        let s = vec![0.0, 0.1, 0.25, 0.3, 0.5, 0.6];
        let v: Vec<Vec2> = s.iter().map(|x| Vec2::new(x * x, 3.0 * x)).collect();
        for (x, d) in s.iter().zip(differentiate(&s, &v, None)) {
            assert!((d.x - 2.0 * x).abs() < 1e-12);
            assert!((d.y - 3.0).abs() < 1e-12);
        }
    }
}
