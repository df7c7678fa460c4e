//! Short-time mean curvature flow of profile curves and homothety fits that
//! certify self-similarity.
//!
//! Points move by `H N` with `N` the unit profile normal `η/|η|`. For a
//! cylinder whose rulings are orthogonal to the profile plane `H = κ/2`; for
//! a surface of revolution `H = κ/2 − ψ'/(2φ|τ|)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::ode::StopReason;
use crate::profile::{menger_curvature, SampledCurve};
use crate::soliton::{Axis, SCHEMA_VERSION};
use crate::{Error, Result, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowFamily {
    /// Profile `(φ, ψ)` of a surface of revolution about the `ψ` axis.
    Revolution,
    /// Cross-section of a cylinder by a plane orthogonal to its rulings.
    CylindricalOrthogonal,
}

impl FlowFamily {
    pub fn axis(self) -> Axis {
        match self {
            FlowFamily::Revolution => Axis::Z,
            FlowFamily::CylindricalOrthogonal => Axis::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Each end moves with the velocity of its neighbour.
    Free,
    /// Ends stay fixed.
    Pinned,
}

/// CFL-style bound `dt ≤ CFL · Δs²`.
pub const CFL: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Number of curve samples after the initial arc-length resampling.
    pub samples: usize,
    /// Resample to uniform arc length every this many steps.
    pub resample_every: usize,
    /// Time between stored snapshots.
    pub snapshot_interval: f64,
    pub boundary: Boundary,
    pub phi_floor: f64,
    /// Fraction of the arc length at each end of an open snapshot left out
    /// of the homothety fit.
    pub fit_trim: f64,
}

impl FlowConfig {
    /// Largest sample count of a curve of length `len` that satisfies the
    /// step bound with spacing margin `margin ≥ 1`.
    pub fn samples_for(len: f64, dt: f64, margin: f64) -> usize {
        let h = (dt / CFL).sqrt() * margin;
        ((len / h).floor() as usize + 1).max(3)
    }

    pub fn new(dt: f64, t_end: f64, samples: usize) -> Self {
        Self {
            dt,
            t_end,
            samples,
            resample_every: 10,
            snapshot_interval: t_end / 10.0,
            boundary: Boundary::Free,
            phi_floor: 1e-6,
            fit_trim: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    pub curve: SampledCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowRun {
    pub family: FlowFamily,
    pub snapshots: Vec<Snapshot>,
    pub stop: StopReason,
    pub steps: usize,
}

fn unit_tangents(p: &[Vec2], closed: bool) -> Vec<Vec2> {
    let n = p.len();
    (0..n)
        .map(|i| {
            let d = if closed {
                p[(i + 1) % n] - p[(i + n - 1) % n]
            } else if i == 0 {
                p[1] - p[0]
            } else if i == n - 1 {
                p[n - 1] - p[n - 2]
            } else {
                p[i + 1] - p[i - 1]
            };
            d / d.norm()
        })
        .collect()
}

fn min_spacing(p: &[Vec2], closed: bool) -> f64 {
    let mut m = p.windows(2).map(|w| (w[1] - w[0]).norm()).fold(f64::INFINITY, f64::min);
    if closed && p.len() > 1 {
        m = m.min((p[0] - p[p.len() - 1]).norm());
    }
    m
}

/// Resamples to uniform arc length, using the sample index as parameter
/// of the interpolant.
fn resample(points: Vec<Vec2>, closed: bool, n: usize) -> Result<SampledCurve> {
    let m = points.len();
    let s = (0..m).map(|i| i as f64 / m as f64).collect();
    SampledCurve::from_points(s, points, closed)?.resample_arclength(n)
}

/// Normal velocity field `H N` at every sample.
pub fn flow_velocity(points: &[Vec2], closed: bool, family: FlowFamily) -> Result<Vec<Vec2>> {
    let kappa = menger_curvature(points, closed);
    let tau = unit_tangents(points, closed);
    points
        .iter()
        .zip(kappa.iter().zip(&tau))
        .map(|(p, (k, t))| {
            let eta = Vec2::new(t.y, -t.x);
            let h = match family {
                FlowFamily::CylindricalOrthogonal => 0.5 * k,
                FlowFamily::Revolution => {
                    if p.x <= 0.0 {
                        return Err(Error::Singular(format!("phi = {} <= 0", p.x)));
                    }
                    0.5 * k - t.y / (2.0 * p.x)
                }
            };
            Ok(eta * h)
        })
        .collect()
}

/// Evolves `curve` by explicit Euler steps of `H N`.
pub fn evolve_profile(curve: &SampledCurve, family: FlowFamily, cfg: &FlowConfig) -> Result<FlowRun> {
    if !(cfg.dt > 0.0) || !(cfg.t_end >= 0.0) {
        return Err(Error::Config("dt must be positive and t_end non-negative".into()));
    }
    let closed = curve.closed;
    let mut cur = curve.resample_arclength(cfg.samples)?;
    let spacing = min_spacing(&cur.points(), closed);
    let bound = CFL * spacing * spacing;
    if cfg.dt > bound {
        return Err(Error::CflViolation { dt: cfg.dt, bound });
    }
    let n_steps = (cfg.t_end / cfg.dt).round() as usize;
    let snap_every = ((cfg.snapshot_interval / cfg.dt).round() as usize).max(1);
    let mut run = FlowRun {
        family,
        snapshots: vec![Snapshot { t: 0.0, curve: cur.clone() }],
        stop: StopReason::Reached,
        steps: 0,
    };
    let k_max = 1.0 / (10.0 * cfg.dt);
    let mut pts = cur.points();
    for step in 1..=n_steps {
        let mut v = flow_velocity(&pts, closed, family)?;
        if !closed && pts.len() >= 3 {
            let n = pts.len();
            match cfg.boundary {
                Boundary::Free => {
                    v[0] = v[1];
                    v[n - 1] = v[n - 2];
                }
                Boundary::Pinned => {
                    v[0] = Vec2::zeros();
                    v[n - 1] = Vec2::zeros();
                }
            }
        }
        for (p, v) in pts.iter_mut().zip(&v) {
            *p += v * cfg.dt;
        }
        run.steps = step;
        let singular = match family {
            FlowFamily::Revolution => pts.iter().any(|p| p.x < cfg.phi_floor),
            FlowFamily::CylindricalOrthogonal => false,
        } || menger_curvature(&pts, closed).iter().any(|k| k.abs() > k_max || !k.is_finite());
        if singular {
            run.stop = StopReason::SingularStop;
            return Ok(run);
        }
        if step % cfg.resample_every.max(1) == 0 || step == n_steps || step % snap_every == 0 {
            // keep the step bound as the curve shrinks by coarsening
            let len: f64 = pts.windows(2).map(|w| (w[1] - w[0]).norm()).sum::<f64>()
                + if closed { (pts[0] - pts[pts.len() - 1]).norm() } else { 0.0 };
            let gaps = if closed { pts.len() } else { pts.len() - 1 };
            let mut n = pts.len();
            if CFL * (len / gaps as f64).powi(2) < cfg.dt {
                n = FlowConfig::samples_for(len, cfg.dt, 1.05);
                if closed {
                    n -= 1;
                }
            }
            cur = resample(pts, closed, n)?;
            pts = cur.points();
        }
        if step % snap_every == 0 || step == n_steps {
            run.snapshots.push(Snapshot {
                t: step as f64 * cfg.dt,
                curve: cur.clone(),
            });
        }
    }
    Ok(run)
}

/// `P ↦ σ R(ξ) P + ζ e₂` in profile-plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomotheticMotion {
    pub sigma: f64,
    pub xi: f64,
    pub zeta: f64,
    pub axis: Axis,
}

impl HomotheticMotion {
    pub fn identity(axis: Axis) -> Self {
        Self {
            sigma: 1.0,
            xi: 0.0,
            zeta: 0.0,
            axis,
        }
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        let (s, c) = self.xi.sin_cos();
        Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y) * self.sigma + Vec2::new(0.0, self.zeta)
    }
}

struct Polyline {
    pts: Vec<Vec2>,
}

impl Polyline {
    fn new(points: &[Vec2], closed: bool) -> Self {
        let mut pts = points.to_vec();
        if closed {
            pts.push(points[0]);
        } else {
            let n = points.len();
            let len: f64 = points.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
            let head = (points[0] - points[1]).normalize();
            let tail = (points[n - 1] - points[n - 2]).normalize();
            pts.insert(0, points[0] + head * (0.5 * len));
            pts.push(points[n - 1] + tail * (0.5 * len));
        }
        Self { pts }
    }

    /// Closest point: (segment index, parameter, foot, distance).
    fn closest(&self, p: &Vec2) -> (usize, f64, Vec2, f64) {
        let mut best = (0, 0.0, self.pts[0], f64::INFINITY);
        for (i, w) in self.pts.windows(2).enumerate() {
            let d = w[1] - w[0];
            let l2 = d.norm_squared();
            let t = if l2 == 0.0 {
                0.0
            } else {
                ((p - w[0]).dot(&d) / l2).clamp(0.0, 1.0)
            };
            let f = w[0] + d * t;
            let dist = (p - f).norm();
            if dist < best.3 {
                best = (i, t, f, dist);
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomothetyFit {
    pub motion: HomotheticMotion,
    /// RMS distance from the snapshot samples (ends excluded for open
    /// curves) to the transformed reference polyline.
    pub residual: f64,
    pub iterations: usize,
}

fn rms_distance(snapshot: &[Vec2], poly: &Polyline, skip_ends: bool) -> f64 {
    let range = if skip_ends && snapshot.len() > 2 {
        1..snapshot.len() - 1
    } else {
        0..snapshot.len()
    };
    let n = range.len() as f64;
    (range.map(|i| poly.closest(&snapshot[i]).3.powi(2)).sum::<f64>() / n).sqrt()
}

/// Least-squares homothety mapping `reference` onto `snapshot`.
///
/// The rotation `ξ` is only fitted for [`Axis::X`] (in the revolution
/// family a rotation about the axis does not move the profile). Directions
/// the data cannot see (translation along a straight profile, dilation of a
/// line through the origin) stay at their identity values.
pub fn fit_homothety(snapshot: &SampledCurve, reference: &SampledCurve, axis: Axis) -> Result<HomothetyFit> {
    const MIN_SAMPLES: usize = 10;
    if snapshot.len() < MIN_SAMPLES || reference.len() < MIN_SAMPLES {
        return Err(Error::DegenerateFit(format!(
            "need at least {MIN_SAMPLES} samples, got {} and {}",
            snapshot.len(),
            reference.len()
        )));
    }
    let snap = snapshot.points();
    let refp = reference.points();
    let closed = reference.closed;
    let n_par = if axis == Axis::X { 3 } else { 2 };
    let mut m = HomotheticMotion::identity(axis);
    let mut iterations = 0;
    for it in 0..100 {
        iterations = it + 1;
        let moved: Vec<Vec2> = refp.iter().map(|p| m.apply(p)).collect();
        let poly = Polyline::new(&moved, closed);
        let base = Polyline::new(&refp, closed);
        let mut jac = DMatrix::<f64>::zeros(snap.len(), n_par);
        let mut res = DVector::<f64>::zeros(snap.len());
        let (sx, cx) = m.xi.sin_cos();
        for (row, p) in snap.iter().enumerate() {
            let (seg, t, foot, _) = poly.closest(p);
            let d = poly.pts[seg + 1] - poly.pts[seg];
            if d.norm() == 0.0 {
                continue;
            }
            let normal = Vec2::new(d.y, -d.x) / d.norm();
            // pre-image of the foot on the untransformed reference
            let c = base.pts[seg] + (base.pts[seg + 1] - base.pts[seg]) * t;
            let rc = Vec2::new(cx * c.x - sx * c.y, sx * c.x + cx * c.y);
            let drc = Vec2::new(-sx * c.x - cx * c.y, cx * c.x - sx * c.y) * m.sigma;
            res[row] = (p - foot).dot(&normal);
            jac[(row, 0)] = rc.dot(&normal);
            if n_par == 3 {
                jac[(row, 1)] = drc.dot(&normal);
            }
            jac[(row, n_par - 1)] = normal.y;
        }
        let svd = jac.clone().svd(true, true);
        let smax = svd.singular_values.max();
        if smax == 0.0 {
            return Err(Error::DegenerateFit("normal matrix is zero".into()));
        }
        let step = svd
            .solve(&res, smax * 1e-9)
            .map_err(|e| Error::DegenerateFit(e.to_string()))?;
        m.sigma += step[0];
        if n_par == 3 {
            m.xi += step[1];
        }
        m.zeta += step[n_par - 1];
        if !(m.sigma > 0.0) {
            return Err(Error::DegenerateFit(format!("dilation left the positive range: {}", m.sigma)));
        }
        if step.norm() <= 1e-14 * (1.0 + m.sigma.abs() + m.zeta.abs()) {
            break;
        }
    }
    let moved: Vec<Vec2> = refp.iter().map(|p| m.apply(p)).collect();
    let residual = rms_distance(&snap, &Polyline::new(&moved, closed), !closed);
    Ok(HomothetyFit {
        motion: m,
        residual,
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitRecord {
    pub t: f64,
    pub sigma: f64,
    pub xi: f64,
    pub zeta: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfSimilarityReport {
    pub schema_version: u32,
    pub name: String,
    pub family: FlowFamily,
    pub dt: f64,
    pub samples: usize,
    pub stop: StopReason,
    pub tolerance: f64,
    pub records: Vec<FitRecord>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Drops the samples of an open curve that lie within `fraction` of the
/// arc length from either end.
pub fn trim_ends(curve: &SampledCurve, fraction: f64) -> Result<SampledCurve> {
    if curve.closed || fraction <= 0.0 {
        return Ok(curve.clone());
    }
    let p = curve.points();
    let mut acc = vec![0.0];
    for w in p.windows(2) {
        acc.push(acc.last().unwrap() + (w[1] - w[0]).norm());
    }
    let total = *acc.last().unwrap();
    let keep: Vec<usize> = (0..p.len())
        .filter(|&i| acc[i] >= fraction * total && acc[i] <= (1.0 - fraction) * total)
        .collect();
    let mut out = curve.clone();
    out.samples = keep.iter().map(|&i| curve.samples[i]).collect();
    Ok(out)
}

/// Evolves a profile and fits a homothety to every snapshot.
pub fn self_similarity_report(
    name: &str,
    curve: &SampledCurve,
    family: FlowFamily,
    cfg: &FlowConfig,
    tolerance: f64,
) -> Result<(SelfSimilarityReport, FlowRun)> {
    let run = evolve_profile(curve, family, cfg)?;
    let reference = &run.snapshots[0].curve;
    let records = run
        .snapshots
        .iter()
        .map(|snap| {
            let fit = fit_homothety(&trim_ends(&snap.curve, cfg.fit_trim)?, reference, family.axis())?;
            Ok(FitRecord {
                t: snap.t,
                sigma: fit.motion.sigma,
                xi: fit.motion.xi,
                zeta: fit.motion.zeta,
                residual: fit.residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = records.iter().map(|r| r.residual).fold(0.0, f64::max);
    let pass = run.stop == StopReason::Reached && max_residual <= tolerance;
    Ok((
        SelfSimilarityReport {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            family,
            dt: cfg.dt,
            samples: cfg.samples,
            stop: run.stop,
            tolerance,
            records,
            max_residual,
            pass,
        },
        run,
    ))
}

/// Initial profile and expected behaviour for a named flow check.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSetup {
    pub name: String,
    pub family: FlowFamily,
    pub curve: SampledCurve,
    pub expectation: Expectation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Expectation {
    /// The profile does not move.
    Stationary { tolerance: f64 },
    /// Dilation soliton with `σ(t)² = 1 + 2ct`.
    Dilation { c: f64, tolerance: f64 },
    /// Translator moving with speed `speed` along the second coordinate.
    Translation { speed: f64, tolerance: f64 },
    /// Shrinking profile: fitted `σ` decreases and the fit stays within
    /// `tolerance`.
    Shrinking { tolerance: f64 },
}

/// Names accepted by [`flow_setup`].
pub const FLOW_SETUPS: [&str; 6] = ["plane", "cylinder", "circle", "catenoid", "grim-reaper", "figure5"];

fn sampled(s0: f64, s1: f64, n: usize, closed: bool, f: impl Fn(f64) -> Vec2) -> Result<SampledCurve> {
    let div = if closed { n } else { n - 1 };
    let s: Vec<f64> = (0..n).map(|i| s0 + (s1 - s0) * i as f64 / div as f64).collect();
    let p = s.iter().map(|&t| f(t)).collect();
    SampledCurve::from_points(s, p, closed)
}

pub fn flow_setup(name: &str) -> Result<FlowSetup> {
    use crate::catalog::{grim_reaper_q, grim_reaper_singularity};
    use crate::profile::{figure_preset, integrate_revolution_profile_both, IntegrationConfig, SpeedMode};
    const FINE: usize = 2001;
    let (family, curve, expectation) = match name {
        "plane" => (
            FlowFamily::CylindricalOrthogonal,
            sampled(-2.0, 2.0, FINE, false, |y| Vec2::new(y, 0.0))?,
            Expectation::Stationary { tolerance: 1e-12 },
        ),
        "cylinder" => (
            FlowFamily::Revolution,
            sampled(-1.0, 1.0, FINE, false, |z| Vec2::new(1.0, z))?,
            Expectation::Dilation { c: -0.5, tolerance: 5e-3 },
        ),
        "circle" => (
            FlowFamily::CylindricalOrthogonal,
            sampled(0.0, 2.0 * std::f64::consts::PI, FINE, true, |t| Vec2::new(t.cos(), t.sin()))?,
            Expectation::Dilation { c: -0.5, tolerance: 5e-3 },
        ),
        "catenoid" => (
            FlowFamily::Revolution,
            sampled(-1.0, 1.0, FINE, false, |z| Vec2::new(z.cosh(), z))?,
            Expectation::Stationary { tolerance: 5e-4 },
        ),
        "grim-reaper" => {
            // cross-section orthogonal to the unit ruling (√3/2, 0, 1/2)
            let q = grim_reaper_q();
            let mid = 0.5 * (grim_reaper_singularity(0) + grim_reaper_singularity(1));
            let k = 3f64.sqrt() / 2.0;
            (
                FlowFamily::CylindricalOrthogonal,
                sampled(mid - 1.5, mid + 1.5, FINE, false, |y| Vec2::new(y, -k * q.eval(y)))?,
                Expectation::Translation {
                    speed: 3f64.sqrt() / 4.0,
                    tolerance: 5e-3,
                },
            )
        }
        "figure5" => {
            let p = figure_preset(5)?;
            let cfg = IntegrationConfig::default();
            let (curve, _) = integrate_revolution_profile_both(&p.initial, p.b, p.c, 0.5, &cfg, SpeedMode::UnitSpeed)?;
            (FlowFamily::Revolution, curve, Expectation::Shrinking { tolerance: 1e-2 })
        }
        _ => return Err(Error::UnknownEntry(name.to_string())),
    };
    Ok(FlowSetup {
        name: name.to_string(),
        family,
        curve,
        expectation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowCheck {
    pub label: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl FlowCheck {
    fn new(label: &str, value: f64, tolerance: f64) -> Self {
        Self {
            label: label.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowVerdict {
    pub report: SelfSimilarityReport,
    pub expectation: Expectation,
    pub checks: Vec<FlowCheck>,
    pub pass: bool,
    #[serde(skip)]
    pub run: FlowRun,
}

/// Sample count used when none is given: spacing `1.5·√(dt/CFL)`.
pub fn default_samples(setup: &FlowSetup, dt: f64) -> usize {
    let n = FlowConfig::samples_for(setup.curve.length(), dt, 1.5);
    if setup.curve.closed {
        n - 1
    } else {
        n
    }
}

fn distance_to(points: &[Vec2], reference: &[Vec2], closed: bool) -> f64 {
    let poly = Polyline::new(reference, closed);
    points.iter().map(|p| poly.closest(p).3).fold(0.0, f64::max)
}

/// Evolves a named setup and checks its expectation.
pub fn run_flow_check(setup: &FlowSetup, cfg: &FlowConfig) -> Result<FlowVerdict> {
    let tol = match setup.expectation {
        Expectation::Stationary { tolerance }
        | Expectation::Dilation { tolerance, .. }
        | Expectation::Translation { tolerance, .. }
        | Expectation::Shrinking { tolerance } => tolerance,
    };
    let (report, run) = self_similarity_report(&setup.name, &setup.curve, setup.family, cfg, tol)?;
    let mut checks = Vec::new();
    match setup.expectation {
        Expectation::Stationary { tolerance } => {
            let reference = run.snapshots[0].curve.points();
            let drift = run
                .snapshots
                .iter()
                .map(|s| distance_to(&s.curve.points(), &reference, s.curve.closed))
                .fold(0.0, f64::max);
            checks.push(FlowCheck::new("max-displacement", drift, tolerance));
            let dsig = report.records.iter().map(|r| (r.sigma - 1.0).abs()).fold(0.0, f64::max);
            checks.push(FlowCheck::new("sigma-deviation", dsig, tolerance));
        }
        Expectation::Dilation { c, tolerance } => {
            let dev = report
                .records
                .iter()
                .map(|r| (r.sigma - (1.0 + 2.0 * c * r.t).sqrt()).abs())
                .fold(0.0, f64::max);
            checks.push(FlowCheck::new("sigma-vs-law", dev, tolerance));
            checks.push(FlowCheck::new("fit-residual", report.max_residual, tolerance));
        }
        Expectation::Translation { speed, tolerance } => {
            checks.push(FlowCheck::new("fit-residual", report.max_residual, tolerance));
            let dz = report
                .records
                .iter()
                .map(|r| (r.zeta - speed * r.t).abs())
                .fold(0.0, f64::max);
            checks.push(FlowCheck::new("zeta-vs-speed", dz, tolerance));
        }
        Expectation::Shrinking { tolerance } => {
            let rises = report.records.windows(2).filter(|w| w[1].sigma >= w[0].sigma).count();
            checks.push(FlowCheck::new("sigma-increases", rises as f64, 0.0));
            checks.push(FlowCheck::new("fit-residual", report.max_residual, tolerance));
        }
    }
    let pass = run.stop == StopReason::Reached && checks.iter().all(|c| c.pass);
    Ok(FlowVerdict {
        report,
        expectation: setup.expectation,
        checks,
        pass,
        run,
    })
}
