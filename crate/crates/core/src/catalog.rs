//! Exact and trivial solitons with machine verification, and the
//! adjudication of the two printed variants of the arctangent solution.

use std::f64::consts::PI;

use serde::Serialize;

use crate::geom::{PlaneCurveJet, RevolutionSurface, RuledSurface, Surface};
use crate::ode::{integrate, Method, SolverConfig};
use crate::profile::differentiate;
use crate::smooth::SmoothFn;
use crate::soliton::{
    cylindrical_residuals_i, residual_grid, revolution_soliton_residual, Axis, CylinderOptions,
    GridSpec, MotionGenerators, ResidualReport, ResidualSample, SCHEMA_VERSION,
};
use crate::{Error, Result, Vec2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Revolution,
    Cylindrical,
    Ruled,
    Conical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// All non-informational checks must pass.
    Verified,
    /// The printed formula is internally inconsistent; the verification is
    /// a report and never fails.
    Disputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EntryKind {
    Plane,
    Helicoid { h: f64 },
    Catenoid,
    Cylinder { r: f64 },
    GrimReaper,
    Sol2,
    Sol1,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactSolution {
    pub name: &'static str,
    pub family: Family,
    pub kind: EntryKind,
    pub gens: MotionGenerators,
    /// Open parameter interval on which the closed form is smooth.
    pub domain: (f64, f64),
    pub status: Status,
    pub provenance: &'static str,
}

/// Singularities of the grim reaper closed form, `s = π/(2√3) + 2kπ/√3`.
pub fn grim_reaper_singularity(k: i32) -> f64 {
    PI / (2.0 * 3f64.sqrt()) + k as f64 * 2.0 * PI / 3f64.sqrt()
}

pub fn catalog_entries() -> Vec<ExactSolution> {
    vec![
        ExactSolution {
            name: "plane",
            family: Family::Cylindrical,
            kind: EntryKind::Plane,
            gens: MotionGenerators::zero(Axis::X),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            status: Status::Verified,
            provenance: "trivial minimal surface: cylinder over a line",
        },
        ExactSolution {
            name: "helicoid",
            family: Family::Ruled,
            kind: EntryKind::Helicoid { h: 1.0 },
            gens: MotionGenerators::zero(Axis::Z),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            status: Status::Verified,
            provenance: "trivial minimal ruled surface, beta = (0,0,hs), w = (cos s, sin s, 0)",
        },
        ExactSolution {
            name: "catenoid",
            family: Family::Revolution,
            kind: EntryKind::Catenoid,
            gens: MotionGenerators::zero(Axis::Z),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            status: Status::Verified,
            provenance: "trivial minimal surface of revolution, phi = cosh s, psi = s",
        },
        ExactSolution {
            name: "cylinder",
            family: Family::Revolution,
            kind: EntryKind::Cylinder { r: 1.0 },
            gens: MotionGenerators::new(0.0, 0.0, -0.5, Axis::Z),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            status: Status::Verified,
            provenance: "round cylinder, shrinker with c = -1/(2r^2)",
        },
        ExactSolution {
            name: "grim-reaper",
            family: Family::Cylindrical,
            kind: EntryKind::GrimReaper,
            gens: MotionGenerators::new(0.0, 1.0, 0.0, Axis::X),
            domain: (grim_reaper_singularity(0), grim_reaper_singularity(1)),
            status: Status::Verified,
            provenance: "X = (u, s, u/2 + q(s)), q = (2/3) log((3/4)(sin(sqrt3 s/2) - cos(sqrt3 s/2))^2), \
                         printed w = (1, 0, 1/2), b = 1; the unit ruling w = (sqrt3/2, 0, 1/2) with \
                         b = sqrt3/2 gives the same equation",
        },
        ExactSolution {
            name: "sol2",
            family: Family::Cylindrical,
            kind: EntryKind::Sol2,
            gens: MotionGenerators::new(0.0, 0.5, 0.0, Axis::X),
            domain: (-1.0, f64::INFINITY),
            status: Status::Verified,
            provenance: "X = (-u, u + s, sqrt(2s + 2)), w = (-1, 1, 0) (not unit), b = 1/2; \
                         verified against the reduced equation as printed",
        },
        ExactSolution {
            name: "sol1",
            family: Family::Cylindrical,
            kind: EntryKind::Sol1,
            gens: MotionGenerators::new(0.0, 0.5, 0.0, Axis::X),
            domain: (SOL1_START - 0.1, f64::INFINITY),
            status: Status::Disputed,
            provenance: "q = (4 sqrt3/3) atan(sqrt(e^{ks} - 4)/2), printed with both k = 3/2 and k = 3/4",
        },
    ]
}

pub fn find_entry(name: &str) -> Result<ExactSolution> {
    catalog_entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// `q` of the grim reaper closed form with analytic derivatives.
pub fn grim_reaper_q() -> SmoothFn<f64> {
    let k = 3f64.sqrt() / 2.0;
    SmoothFn::analytic(
        move |s: f64| {
            let t = k * s;
            (2.0 / 3.0) * (0.75 * (t.sin() - t.cos()).powi(2)).ln()
        },
        move |s: f64| {
            let t = k * s;
            (2.0 * 3f64.sqrt() / 3.0) * (t.cos() + t.sin()) / (t.sin() - t.cos())
        },
        move |s: f64| {
            let t = k * s;
            -2.0 / (t.sin() - t.cos()).powi(2)
        },
    )
}

/// Cylinder over `β = (0, s, q(s))` with rulings `w`.
pub fn graph_cylinder(q: SmoothFn<f64>, w: Vec3) -> RuledSurface {
    let (q0, q1, q2) = (q.clone(), q.clone(), q);
    RuledSurface::cylindrical(
        SmoothFn::analytic(
            move |s| Vec3::new(0.0, s, q0.eval(s)),
            move |s| Vec3::new(0.0, 1.0, q1.d1(s)),
            move |s| Vec3::new(0.0, 0.0, q2.d2(s)),
        ),
        w,
    )
}

/// Unit ruling for which the grim reaper is a translator along `e₁`.
pub fn grim_reaper_unit() -> (RuledSurface, MotionGenerators) {
    let w = Vec3::new(3f64.sqrt() / 2.0, 0.0, 0.5);
    (
        graph_cylinder(grim_reaper_q(), w),
        MotionGenerators::new(0.0, 3f64.sqrt() / 2.0, 0.0, Axis::X),
    )
}

pub fn sol2_q() -> SmoothFn<f64> {
    SmoothFn::analytic(
        |s: f64| (2.0 * s + 2.0).sqrt(),
        |s: f64| (2.0 * s + 2.0).powf(-0.5),
        |s: f64| -(2.0 * s + 2.0).powf(-1.5),
    )
}

/// `y₀q' − x₀q'' / (1 + q'² − y₀²)`.
pub fn graph_ode_residual(q: &SmoothFn<f64>, x0: f64, y0: f64, s: f64) -> Result<f64> {
    let (_, dq, ddq) = q.jet(s);
    let den = 1.0 + dq * dq - y0 * y0;
    if den.abs() <= 1e-14 {
        return Err(Error::DenominatorBlowup { s, value: den });
    }
    Ok(y0 * dq - x0 * ddq / den)
}

pub fn shrinking_cylinder(r: f64) -> (RevolutionSurface, MotionGenerators) {
    (
        RevolutionSurface::cylinder(r),
        MotionGenerators::new(0.0, 0.0, -1.0 / (2.0 * r * r), Axis::Z),
    )
}

pub fn plane_surface() -> RuledSurface {
    RuledSurface::cylindrical(
        SmoothFn::analytic(|s| Vec3::new(0.0, s, 0.0), |_| Vec3::y(), |_| Vec3::zeros()),
        Vec3::x(),
    )
}

/// Slope `q'/h'` forced by `a x₀ ⟨w, τ⟩ = 0` when `a ≠ 0` and `x₀ z₀ ≠ 0`.
pub fn forced_slope_item_i(w: &Vec3) -> Result<f64> {
    if w.x == 0.0 || w.z == 0.0 {
        return Err(Error::Degenerate("needs x0 z0 != 0".into()));
    }
    Ok(-w.y / w.z)
}

/// Slope `q'/h'` forced by `a[(1 − x₀²)h' − x₀y₀q'] = 0` when `a ≠ 0` and
/// `x₀ y₀ ≠ 0`.
pub fn forced_slope_item_ii(w: &Vec3) -> Result<f64> {
    if w.x == 0.0 || w.y == 0.0 {
        return Err(Error::Degenerate("needs x0 y0 != 0".into()));
    }
    Ok((1.0 - w.x * w.x) / (w.x * w.y))
}

/// One residual family checked against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: String,
    pub tolerance: f64,
    /// Reported but not part of the verdict.
    pub informational: bool,
    #[serde(skip)]
    pub report: ResidualReport,
    pub max_abs: f64,
    pub l2: f64,
    pub samples: usize,
    pub pass: bool,
}

impl Check {
    fn new(label: &str, tolerance: f64, informational: bool, report: ResidualReport) -> Self {
        Self {
            label: label.to_string(),
            tolerance,
            informational,
            max_abs: report.max_abs,
            l2: report.l2,
            samples: report.samples.len(),
            pass: report.max_abs <= tolerance && report.max_abs.is_finite(),
            report,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjudication: Option<Sol1Report>,
    pub pass: bool,
}

impl Verification {
    fn new(entry: &ExactSolution, checks: Vec<Check>, notes: Vec<String>) -> Self {
        let pass = entry.status == Status::Disputed
            || checks.iter().filter(|c| !c.informational).all(|c| c.pass);
        Self {
            name: entry.name.to_string(),
            status: entry.status,
            checks,
            notes,
            adjudication: None,
            pass,
        }
    }

    /// The first non-informational check, used as the entry's headline.
    pub fn primary(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.informational)
    }
}

fn line_report(grid: GridSpec, values: impl IntoIterator<Item = Result<(f64, f64)>>) -> Result<ResidualReport> {
    let samples = values
        .into_iter()
        .map(|r| r.map(|(s, residual)| ResidualSample { s, u: 0.0, residual }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_samples(grid, samples))
}

/// `s` samples of `[0.1, 1.7]` with the window around the first grim reaper
/// singularity removed.
pub fn grim_reaper_check_points() -> Vec<f64> {
    let sing = grim_reaper_singularity(0);
    (0..=160)
        .map(|i| 0.1 + 0.01 * i as f64)
        .filter(|s| (s - sing).abs() >= 0.05)
        .collect()
}

const DEFAULT_U: (f64, f64, usize) = (-2.0, 2.0, 20);

pub fn verify(entry: &ExactSolution) -> Result<Verification> {
    let mut notes = Vec::new();
    let checks = match entry.kind {
        EntryKind::Plane => {
            let g = GridSpec::new((-3.0, 3.0, 50), DEFAULT_U);
            vec![Check::new("pointwise", 1e-12, false, residual_grid(&plane_surface(), &entry.gens, &g)?)]
        }
        EntryKind::Helicoid { h } => {
            let g = GridSpec::new((-3.0, 3.0, 50), DEFAULT_U);
            vec![Check::new(
                "pointwise",
                1e-12,
                false,
                residual_grid(&RuledSurface::helicoid(h), &entry.gens, &g)?,
            )]
        }
        EntryKind::Catenoid => revolution_checks(&RevolutionSurface::catenoid(), &entry.gens)?,
        EntryKind::Cylinder { r } => {
            let (surf, gens) = shrinking_cylinder(r);
            revolution_checks(&surf, &gens)?
        }
        EntryKind::GrimReaper => grim_reaper_checks(entry, &mut notes)?,
        EntryKind::Sol2 => sol2_checks(entry, &mut notes)?,
        EntryKind::Sol1 => {
            let rep = adjudicate_sol1()?;
            notes.push(rep.verdict.clone());
            let mut v = Verification::new(entry, Vec::new(), notes);
            v.adjudication = Some(rep);
            return Ok(v);
        }
    };
    Ok(Verification::new(entry, checks, notes))
}

fn revolution_checks(surf: &RevolutionSurface, gens: &MotionGenerators) -> Result<Vec<Check>> {
    let g = GridSpec::new((-2.0, 2.0, 50), (0.0, 2.0 * PI, 20));
    let profile = line_report(
        GridSpec::new((-2.0, 2.0, 50), (0.0, 0.0, 1)),
        g.s_values()
            .into_iter()
            .map(|s| revolution_soliton_residual(&surf.jet(s), gens).map(|r| (s, r.raw))),
    )?;
    Ok(vec![
        Check::new("pointwise", 1e-12, false, residual_grid(surf, gens, &g)?),
        Check::new("profile-curvature", 1e-12, false, profile),
    ])
}

fn grim_reaper_checks(entry: &ExactSolution, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let q = grim_reaper_q();
    let pts = grim_reaper_check_points();
    let line = GridSpec::new((0.1, 1.7, pts.len()), (0.0, 0.0, 1));
    let ode = line_report(
        line,
        pts.iter().map(|&s| {
            let (_, dq, ddq) = q.jet(s);
            Ok((s, -ddq - 1.0 - 0.75 * dq * dq))
        }),
    )?;
    let w = Vec3::new(1.0, 0.0, 0.5);
    let opts = CylinderOptions { allow_unnormalized_w: true };
    let literal = line_report(
        line,
        pts.iter().map(|&s| {
            let (h, dh, ddh) = (s, 1.0, 0.0);
            let (qv, dq, ddq) = q.jet(s);
            let jet = PlaneCurveJet { x: h, y: qv, dx: dh, dy: dq, ddx: ddh, ddy: ddq };
            let r = cylindrical_residuals_i(&jet, &w, &entry.gens, opts)?;
            Ok((s, if r.alg.abs() > r.ode.raw.abs() { r.alg } else { r.ode.raw }))
        }),
    )?;
    let (surf, gens) = grim_reaper_unit();
    let (lo, hi) = entry.domain;
    let grid = GridSpec::new((lo + 0.1, hi - 0.1, 50), (-2.0, 2.0, 10));
    let geometric = residual_grid(&surf, &gens, &grid)?;
    notes.push(
        "printed ruling (1, 0, 1/2) is not unit; the geometric check uses w = (sqrt3/2, 0, 1/2), b = sqrt3/2"
            .to_string(),
    );
    notes.push(format!(
        "closed form is singular at s = {:.6} + k 2pi/sqrt3; [0.1, 1.7] is checked with |s - {:.6}| >= 0.05",
        grim_reaper_singularity(0),
        grim_reaper_singularity(0)
    ));
    Ok(vec![
        Check::new("graph-ode", 1e-10, false, ode),
        Check::new("item-i-literal", 1e-9, false, literal),
        Check::new("pointwise-unit-ruling", 1e-9, false, geometric),
    ])
}

fn sol2_checks(entry: &ExactSolution, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let q = sol2_q();
    let line = GridSpec::new((0.0, 5.0, 501), (0.0, 0.0, 1));
    let t1 = line_report(
        line,
        line.s_values().into_iter().map(|s| Ok((s, graph_ode_residual(&q, -1.0, 1.0, s)?))),
    )?;
    let w = Vec3::new(-1.0, 1.0, 0.0);
    let opts = CylinderOptions { allow_unnormalized_w: true };
    let literal = line_report(
        line,
        line.s_values().into_iter().map(|s| {
            let (qv, dq, ddq) = q.jet(s);
            let jet = PlaneCurveJet { x: s, y: qv, dx: 1.0, dy: dq, ddx: 0.0, ddy: ddq };
            Ok((s, cylindrical_residuals_i(&jet, &w, &entry.gens, opts)?.ode.raw))
        }),
    )?;
    let surf = graph_cylinder(q, w);
    let geometric = residual_grid(&surf, &entry.gens, &GridSpec::new((0.0, 5.0, 50), (-2.0, 2.0, 10)))?;
    notes.push(format!(
        "|w| = sqrt2: the reduced equation holds as printed, the geometric residual is {:.3e}",
        geometric.max_abs
    ));
    Ok(vec![
        Check::new("graph-ode", 1e-12, false, t1),
        Check::new("item-i-literal", 1e-12, false, literal),
        Check::new("pointwise-geometric", 0.0, true, geometric),
    ])
}

/// Printed arctangent solution `q = (4√3/3) atan(√(e^{ks} − 4) / 2)`.
pub fn sol1_variant(k: f64) -> SmoothFn<f64> {
    let a = 4.0 * 3f64.sqrt() / 3.0;
    let g = move |s: f64| ((k * s).exp() - 4.0).sqrt();
    SmoothFn::analytic(
        move |s| a * (0.5 * g(s)).atan(),
        move |s| a * k / g(s),
        move |s| -a * k * k * (k * s).exp() / (2.0 * g(s).powi(3)),
    )
}

/// `q'' = −(1/2) q' (3/4 + q'²)`, the reduced equation with `x₀ = −1`,
/// `y₀ = 1/2`, `b = 1/2`.
pub fn sol1_rhs(dq: f64) -> f64 {
    -0.5 * dq * (0.75 + dq * dq)
}

/// Start of the shared domain of the two variants.
pub const SOL1_START: f64 = 4.0 / 3.0 * std::f64::consts::LN_2 * 2.0 + 0.1;
pub const SOL1_END: f64 = 4.0;

#[derive(Debug, Clone, Serialize)]
pub struct Sol1Variant {
    pub exponent: String,
    pub k: f64,
    /// sup |q_variant − q_reference| with the reference started from the
    /// variant's own value and slope.
    pub sup_deviation: f64,
    /// sup |q'' − F(q')| of the closed form.
    pub ode_residual: f64,
    pub solves: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sol1Report {
    pub schema_version: u32,
    pub equation: String,
    pub domain: (f64, f64),
    pub samples: usize,
    pub match_tolerance: f64,
    pub variants: Vec<Sol1Variant>,
    /// sup |D q' − F(q')| along the numeric references.
    pub reference_self_residual: f64,
    pub verdict: String,
}

pub const SOL1_MATCH_TOL: f64 = 1e-4;

pub fn adjudicate_sol1() -> Result<Sol1Report> {
    let cfg = SolverConfig {
        method: Method::Rk45 { rtol: 1e-12, atol: 1e-14 },
        output_step: Some(1e-4),
        max_steps: 10_000_000,
    };
    let mut variants = Vec::new();
    let mut self_res = 0.0f64;
    let mut samples = 0;
    for (label, k) in [("3s/2", 1.5), ("3s/4", 0.75)] {
        let q = sol1_variant(k);
        let (q0, dq0, _) = q.jet(SOL1_START);
        let traj = integrate(
            |_, y: &[f64; 2]| Ok([y[1], sol1_rhs(y[1])]),
            |_| 1.0,
            SOL1_START,
            [q0, dq0],
            SOL1_END,
            &cfg,
        )?;
        samples = traj.s.len();
        let slopes: Vec<Vec2> = traj.y.iter().map(|y| Vec2::new(y[1], 0.0)).collect();
        let d = differentiate(&traj.s, &slopes, None);
        let n = traj.s.len();
        for i in 2..n.saturating_sub(2) {
            self_res = self_res.max((d[i].x - sol1_rhs(traj.y[i][1])).abs());
        }
        let mut dev = 0.0f64;
        let mut ode = 0.0f64;
        for (s, y) in traj.s.iter().zip(&traj.y) {
            let (qv, dq, ddq) = q.jet(*s);
            dev = dev.max((qv - y[0]).abs());
            ode = ode.max((ddq - sol1_rhs(dq)).abs());
        }
        variants.push(Sol1Variant {
            exponent: format!("e^({label})"),
            k,
            sup_deviation: dev,
            ode_residual: ode,
            solves: dev <= SOL1_MATCH_TOL,
        });
    }
    let solving: Vec<&str> = variants.iter().filter(|v| v.solves).map(|v| v.exponent.as_str()).collect();
    let verdict = match solving.as_slice() {
        [] => "closed form as printed does not solve the graph ODE; see report".to_string(),
        [one] => format!(
            "only the {one} variant solves the graph ODE; the other printed exponent is inconsistent with the equation"
        ),
        _ => "both printed variants solve the graph ODE".to_string(),
    };
    Ok(Sol1Report {
        schema_version: SCHEMA_VERSION,
        equation: "q'' = -(1/2) q' (3/4 + q'^2)".to_string(),
        domain: (SOL1_START, SOL1_END),
        samples,
        match_tolerance: SOL1_MATCH_TOL,
        variants,
        reference_self_residual: self_res,
        verdict,
    })
}

/// Surface of an entry, when it has a single parameterization.
pub fn entry_surface(entry: &ExactSolution) -> Option<Box<dyn Surface>> {
    Some(match entry.kind {
        EntryKind::Plane => Box::new(plane_surface()),
        EntryKind::Helicoid { h } => Box::new(RuledSurface::helicoid(h)),
        EntryKind::Catenoid => Box::new(RevolutionSurface::catenoid()),
        EntryKind::Cylinder { r } => Box::new(RevolutionSurface::cylinder(r)),
        EntryKind::GrimReaper => Box::new(grim_reaper_unit().0),
        EntryKind::Sol2 => Box::new(graph_cylinder(sol2_q(), Vec3::new(-1.0, 1.0, 0.0))),
        EntryKind::Sol1 => return None,
    })
}
