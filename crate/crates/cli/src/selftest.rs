//! The acceptance suite behind `mcfsol selftest`. Each criterion returns its
//! measurements and the files it wants written; nothing here depends on wall
//! time, so two runs with the same seed produce identical output.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use mcfsol::catalog::{
    adjudicate_sol1, find_entry, forced_slope_item_i, forced_slope_item_ii, grim_reaper_check_points,
    grim_reaper_q, plane_surface, shrinking_cylinder, sol2_q, graph_ode_residual, verify,
};
use mcfsol::flow::{default_samples, flow_setup, run_flow_check, FlowConfig, FlowVerdict};
use mcfsol::ode::{Method, StopReason};
use mcfsol::oracle::fundamental_forms;
use mcfsol::profile::{
    figure_preset, integrate_revolution_profile, run_figure, IntegrationConfig, ProfileState, SpeedMode,
    FIGURE_COUNT,
};
use mcfsol::random_surfaces::*;
use mcfsol::soliton::{
    conical_residual_system, cylindrical_residuals_i, cylindrical_residuals_ii, eval_quartic,
    noncylindrical_quartic, pointwise_residual, residual_grid, revolution_soliton_residual, CylinderOptions,
    GridSpec,
};
use mcfsol::{Axis, MotionGenerators, PlaneCurveJet, RevolutionSurface, RuledSurface, SmoothFn, Surface, Vec3};

use crate::commands::{figure_artifacts, flow_artifacts};
use crate::Artifact;

#[derive(Debug, Clone, Serialize)]
pub struct Measure {
    pub label: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    pub pass: bool,
}

impl Measure {
    fn new(label: impl Into<String>, value: f64, min: Option<f64>, max: Option<f64>) -> Self {
        let pass = value.is_finite() && min.is_none_or(|m| value >= m) && max.is_none_or(|m| value <= m);
        Self {
            label: label.into(),
            value,
            min,
            max,
            pass,
        }
    }

    pub fn at_most(label: impl Into<String>, value: f64, max: f64) -> Self {
        Self::new(label, value, None, Some(max))
    }

    pub fn at_least(label: impl Into<String>, value: f64, min: f64) -> Self {
        Self::new(label, value, Some(min), None)
    }

    pub fn within(label: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self::new(label, value, Some(lo), Some(hi))
    }

    pub fn bound(&self) -> String {
        match (self.min, self.max) {
            (Some(lo), Some(hi)) => format!("in [{lo}, {hi}]"),
            (None, Some(hi)) => format!("<= {hi:e}"),
            (Some(lo), None) => format!(">= {lo}"),
            (None, None) => String::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub measures: Vec<Measure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl CriterionResult {
    fn new(id: u32, measures: Vec<Measure>, notes: Vec<String>) -> Self {
        Self {
            id,
            name: criterion_name(id).to_string(),
            pass: !measures.is_empty() && measures.iter().all(|m| m.pass),
            measures,
            notes,
        }
    }

    /// One-line summary: `PASS criterion 3 shrinking cylinder: ...`.
    pub fn line(&self) -> String {
        let parts: Vec<String> = self
            .measures
            .iter()
            .map(|m| format!("{} = {:.3e} {}", m.label, m.value, m.bound()))
            .collect();
        format!(
            "{} criterion {} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            parts.join("; ")
        )
    }
}

pub struct Evaluation {
    pub result: CriterionResult,
    pub artifacts: Vec<Artifact>,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub integration: IntegrationConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            integration: IntegrationConfig::default(),
        }
    }
}

/// Criteria evaluated in-process; determinism across runs is checked by
/// running the binary twice.
pub const CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

pub fn criterion_name(id: u32) -> &'static str {
    match id {
        1 => "minimal-surface zeros",
        2 => "oracle equivalence",
        3 => "shrinking cylinder",
        4 => "grim reaper",
        5 => "sol2 reduced equation",
        6 => "sol1 adjudication",
        7 => "profile ODE invariants",
        8 => "quartic identity",
        9 => "triviality properties",
        10 => "figure reproduction",
        11 => "determinism",
        _ => "unknown",
    }
}

pub fn evaluate(id: u32, cfg: &SuiteConfig) -> anyhow::Result<Evaluation> {
    match id {
        1 => minimal_zeros(),
        2 => oracle_equivalence(cfg.seed),
        3 => shrinking_cylinder_criterion(),
        4 => grim_reaper(),
        5 => sol2(),
        6 => sol1(),
        7 => ode_invariants(&cfg.integration),
        8 => quartic_identity(cfg.seed),
        9 => triviality(cfg.seed),
        10 => figures(&cfg.integration),
        _ => anyhow::bail!(crate::UsageError(format!("no in-process criterion {id}"))),
    }
}

fn done(id: u32, measures: Vec<Measure>) -> anyhow::Result<Evaluation> {
    Ok(Evaluation {
        result: CriterionResult::new(id, measures, Vec::new()),
        artifacts: Vec::new(),
    })
}

pub fn minimal_zeros() -> anyhow::Result<Evaluation> {
    let grid = GridSpec::new((-2.0, 2.0, 50), (-1.0, 1.0, 20));
    let zero = MotionGenerators::zero(Axis::Z);
    let surfaces: [(&str, Box<dyn Surface>); 3] = [
        ("helicoid", Box::new(RuledSurface::helicoid(1.0))),
        ("catenoid", Box::new(RevolutionSurface::catenoid())),
        ("plane", Box::new(plane_surface())),
    ];
    let mut measures = Vec::new();
    for (name, s) in &surfaces {
        let r = residual_grid(s.as_ref(), &zero, &grid)?;
        measures.push(Measure::at_least(format!("{name} samples"), r.samples.len() as f64, 1000.0));
        measures.push(Measure::at_most(format!("{name} max |H|"), r.max_abs, 1e-12));
    }
    done(1, measures)
}

pub const ORACLE_DRAWS: usize = 100;
const ORACLE_REL: f64 = 1e-5;
const ORACLE_FLOOR: f64 = 1e-7;

/// `|a − b|` in units of the oracle tolerance; `≤ 1` means agreement.
fn scaled_gap(value: f64, reference: f64) -> f64 {
    let gap = (value - reference).abs();
    gap / (ORACLE_REL * value.abs().max(reference.abs())).max(ORACLE_FLOOR)
}

#[derive(Default)]
struct Worst {
    h: f64,
    k: f64,
    normal: f64,
    draws: usize,
}

impl Worst {
    fn push(&mut self, h: f64, k: Option<f64>, normal: f64) {
        self.h = self.h.max(h);
        self.k = self.k.max(k.unwrap_or(0.0));
        self.normal = self.normal.max(normal);
        self.draws += 1;
    }

    fn measures(&self, family: &str, with_k: bool, out: &mut Vec<Measure>) {
        out.push(Measure::at_least(format!("{family} draws"), self.draws as f64, ORACLE_DRAWS as f64));
        out.push(Measure::at_most(format!("{family} H gap/tol"), self.h, 1.0));
        if with_k {
            out.push(Measure::at_most(format!("{family} K gap/tol"), self.k, 1.0));
        }
        out.push(Measure::at_most(format!("{family} normal gap"), self.normal, 1e-6));
    }
}

pub fn oracle_equivalence(seed: u64) -> anyhow::Result<Evaluation> {
    let mut measures = Vec::new();

    let mut g = rng(seed.wrapping_add(11));
    let mut w = Worst::default();
    for _ in 0..ORACLE_DRAWS {
        let r = random_noncylindrical(&mut g);
        let (s, u) = (g.random_range(S_RANGE.0..S_RANGE.1), g.random_range(-1.5..1.5));
        let sample = r.sample(s, u)?;
        let o = fundamental_forms(|p, q| r.point(p, q), s, u);
        w.push(
            scaled_gap(sample.mean_curvature, o.mean_curvature),
            Some(scaled_gap(sample.gauss_curvature, o.gauss_curvature)),
            (sample.normal - o.normal).norm(),
        );
    }
    w.measures("noncylindrical", true, &mut measures);

    let mut g = rng(seed.wrapping_add(12));
    let mut w = Worst::default();
    for _ in 0..ORACLE_DRAWS {
        let rev = random_revolution(&mut g);
        let (s, u) = (g.random_range(S_RANGE.0..S_RANGE.1), g.random_range(0.0..std::f64::consts::TAU));
        // oracle parameters (u, s) reproduce the module orientation
        let o = fundamental_forms(|p, q| rev.point(q, p), u, s);
        w.push(
            scaled_gap(rev.mean_curvature(s)?, o.mean_curvature),
            Some(scaled_gap(rev.gauss_curvature(s)?, o.gauss_curvature)),
            (rev.normal(s, u)? - o.normal).norm(),
        );
    }
    w.measures("revolution", true, &mut measures);

    let mut g = rng(seed.wrapping_add(13));
    let mut w = Worst::default();
    for _ in 0..ORACLE_DRAWS {
        let c = random_cylindrical(&mut g);
        let (s, u) = (g.random_range(S_RANGE.0..S_RANGE.1), g.random_range(-1.5..1.5));
        let o = fundamental_forms(|p, q| c.point(p, q), s, u);
        w.push(
            scaled_gap(c.cylindrical_mean_curvature(s)?, o.mean_curvature),
            None,
            (c.cylindrical_normal(s)? - o.normal).norm(),
        );
    }
    w.measures("cylindrical", false, &mut measures);

    let mut g = rng(seed.wrapping_add(14));
    let mut w = Worst::default();
    for _ in 0..ORACLE_DRAWS {
        let c = random_conical(&mut g);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let mut u = g.random_range(0.3..2.0);
        if g.random_bool(0.5) {
            u = -u;
        }
        let o = fundamental_forms(|p, q| c.point(p, q), s, u);
        // the parametric normal flips with u, the module normal does not
        let sign = u.signum();
        w.push(
            scaled_gap(c.conical_mean_curvature(s, u)? * sign, o.mean_curvature),
            None,
            (c.conical_normal(s)? * sign - o.normal).norm(),
        );
    }
    w.measures("conical", false, &mut measures);
    done(2, measures)
}

pub fn shrinking_cylinder_criterion() -> anyhow::Result<Evaluation> {
    let mut measures = Vec::new();
    for r in [0.5, 1.0, 2.0] {
        let (surf, gens) = shrinking_cylinder(r);
        let worst = (0..=40)
            .map(|k| -2.0 + 0.1 * k as f64)
            .map(|s| revolution_soliton_residual(&surf.jet(s), &gens).map(|v| v.raw.abs()))
            .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
        measures.push(Measure::at_most(format!("profile residual r={r}"), worst, 1e-12));
    }
    let verdict = flow_verdict("cylinder", 1e-4, 0.3)?;
    let dev = verdict
        .report
        .records
        .iter()
        .map(|r| (r.sigma - (1.0 - r.t).sqrt()).abs())
        .fold(0.0, f64::max);
    let t_last = verdict.report.records.last().map_or(0.0, |r| r.t);
    measures.push(Measure::at_least("flow final t", t_last, 0.3 - 1e-9));
    measures.push(Measure::at_most("max |sigma - sqrt(1-t)|", dev, 5e-3));
    Ok(Evaluation {
        result: CriterionResult::new(3, measures, Vec::new()),
        artifacts: flow_artifacts("cylinder", &verdict),
    })
}

fn flow_verdict(name: &str, dt: f64, t_end: f64) -> anyhow::Result<FlowVerdict> {
    let setup = flow_setup(name)?;
    let cfg = FlowConfig::new(dt, t_end, default_samples(&setup, dt));
    Ok(run_flow_check(&setup, &cfg)?)
}

pub fn grim_reaper() -> anyhow::Result<Evaluation> {
    let q = grim_reaper_q();
    let ode = grim_reaper_check_points()
        .into_iter()
        .map(|s| {
            let (_, dq, ddq) = q.jet(s);
            (-ddq - 1.0 - 0.75 * dq * dq).abs()
        })
        .fold(0.0, f64::max);
    let v = verify(&find_entry("grim-reaper")?)?;
    let literal = v
        .checks
        .iter()
        .find(|c| c.label == "item-i-literal")
        .map_or(f64::NAN, |c| c.max_abs);
    let flow = flow_verdict("grim-reaper", 1e-4, 0.1)?;
    let measures = vec![
        Measure::at_most("graph ODE residual", ode, 1e-10),
        Measure::at_most("item I max_abs", literal, 1e-9),
        Measure::at_most("translation fit residual", flow.report.max_residual, 5e-3),
    ];
    let mut artifacts = flow_artifacts("grim-reaper", &flow);
    artifacts.push(Artifact::json("verify-grim-reaper.json", &v));
    Ok(Evaluation {
        result: CriterionResult::new(4, measures, Vec::new()),
        artifacts,
    })
}

pub fn sol2() -> anyhow::Result<Evaluation> {
    let q = sol2_q();
    let worst = (0..=500)
        .map(|k| graph_ode_residual(&q, -1.0, 1.0, 0.01 * k as f64).map(f64::abs))
        .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
    done(5, vec![Measure::at_most("graph ODE residual on [0, 5]", worst, 1e-12)])
}

pub fn sol1() -> anyhow::Result<Evaluation> {
    let rep = adjudicate_sol1()?;
    let mut measures = vec![
        Measure::at_most("reference self-residual", rep.reference_self_residual, 1e-10),
        Measure::at_least("variants tabulated", rep.variants.len() as f64, 2.0),
    ];
    for v in &rep.variants {
        measures.push(Measure::at_least(format!("{} sup deviation", v.exponent), v.sup_deviation, 0.0));
    }
    measures.push(Measure::at_least("verdict length", rep.verdict.len() as f64, 1.0));
    Ok(Evaluation {
        result: CriterionResult::new(6, measures, vec![rep.verdict.clone()]),
        artifacts: vec![Artifact::json("sol1-adjudication.json", &rep)],
    })
}

fn catenoid_error(step: f64) -> anyhow::Result<f64> {
    // arc-length catenoid germ: φ = √(1+s²), ψ = asinh s
    let cfg = IntegrationConfig {
        method: Method::Rk4 { step },
        s_max: 2.0,
        output_step: 0.5,
        ..Default::default()
    };
    let init = ProfileState::new(0.0, 1.0, 0.0, 0.0, 1.0);
    let curve = integrate_revolution_profile(&init, 0.0, 0.0, &cfg, SpeedMode::UnitSpeed)?;
    Ok(curve
        .samples
        .iter()
        .map(|p| {
            let err_phi = (p.point.x - (1.0 + p.s * p.s).sqrt()).abs();
            err_phi.max((p.point.y - p.s.asinh()).abs())
        })
        .fold(0.0, f64::max))
}

pub fn rk4_order_ratio() -> anyhow::Result<f64> {
    Ok(catenoid_error(0.1)? / catenoid_error(0.05)?)
}

pub fn ode_invariants(integration: &IntegrationConfig) -> anyhow::Result<Evaluation> {
    let runs = (1..=FIGURE_COUNT)
        .into_par_iter()
        .map(|n| run_figure(n, SpeedMode::UnitSpeed, integration))
        .collect::<Result<Vec<_>, _>>()?;
    let drift = runs.iter().map(|r| r.max_speed_drift).fold(0.0, f64::max);
    let residual = runs.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let short = runs
        .iter()
        .filter(|r| r.stop != StopReason::Reached || r.curve.samples.last().is_none_or(|p| p.s < 10.0 - 1e-9))
        .count();
    done(
        7,
        vec![
            Measure::at_most("presets stopped before s = 10", short as f64, 0.0),
            Measure::at_most("max speed drift", drift, 1e-7),
            Measure::at_most("max profile residual", residual, 1e-6),
            Measure::within("RK4 error ratio h/(h/2)", rk4_order_ratio()?, 12.0, 20.0),
        ],
    )
}

pub const QUARTIC_DRAWS: usize = 20;

pub fn quartic_identity(seed: u64) -> anyhow::Result<Evaluation> {
    let mut g = rng(seed.wrapping_add(21));
    let mut worst = 0.0f64;
    for _ in 0..QUARTIC_DRAWS {
        let r = random_noncylindrical(&mut g);
        let axis = if g.random_bool(0.5) { Axis::Z } else { Axis::X };
        let gens = random_generators(&mut g, axis);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        worst = worst.max(quartic_gap(&r, &gens, s, &[-2.0, -1.0, 0.0, 1.0, 2.0])?);
    }
    done(
        8,
        vec![
            Measure::at_least("draws", QUARTIC_DRAWS as f64, 20.0),
            Measure::at_most("max |quartic - 2(l^2+u^2)^1.5 r|", worst, 1e-8),
        ],
    )
}

/// Largest gap between the quartic and the scaled pointwise residual.
pub fn quartic_gap(r: &RuledSurface, gens: &MotionGenerators, s: f64, us: &[f64]) -> mcfsol::Result<f64> {
    let quartic = noncylindrical_quartic(r, gens, s)?;
    let lambda = r.invariants(s)?.lambda;
    let mut worst = 0.0f64;
    for &u in us {
        let scaled = 2.0 * (lambda * lambda + u * u).powf(1.5) * pointwise_residual(&r.sample(s, u)?, gens);
        worst = worst.max((eval_quartic(&quartic, u) - scaled).abs());
    }
    Ok(worst)
}

pub const TRIVIALITY_DRAWS: usize = 50;

fn great_circle_cone(g: &mut impl Rng) -> RuledSurface {
    let rot = random_rotation(g);
    let k = g.random_range(0.5..2.0);
    RuledSurface::conical(
        random_unit(g),
        SmoothFn::analytic(
            move |s: f64| rot * Vec3::new((k * s).cos(), (k * s).sin(), 0.0),
            move |s: f64| rot * Vec3::new(-(k * s).sin(), (k * s).cos(), 0.0) * k,
            move |s: f64| rot * Vec3::new(-(k * s).cos(), -(k * s).sin(), 0.0) * (k * k),
        ),
    )
}

fn line_jet(m: f64, h1: f64, h2: f64, c0: f64, s: f64) -> PlaneCurveJet {
    let (h, dh, ddh) = (h1 * s + h2 * s * s, h1 + 2.0 * h2 * s, 2.0 * h2);
    PlaneCurveJet {
        x: h,
        y: m * h + c0,
        dx: dh,
        dy: m * dh,
        ddx: ddh,
        ddy: m * ddh,
    }
}

fn planar_directrix(jet: PlaneCurveJet, item_ii: bool) -> SmoothFn<Vec3> {
    let lift = move |a: f64, b: f64| if item_ii { Vec3::new(a, b, 0.0) } else { Vec3::new(0.0, a, b) };
    SmoothFn::analytic(
        move |t| lift(jet.x + jet.dx * t + 0.5 * jet.ddx * t * t, jet.y + jet.dy * t + 0.5 * jet.ddy * t * t),
        move |t| lift(jet.dx + jet.ddx * t, jet.dy + jet.ddy * t),
        move |_| lift(jet.ddx, jet.ddy),
    )
}

/// Admissible cylinders keep the rulings at least `asin 0.1` away from the
/// directrix; closer to parallel the surface degenerates.
fn transverse(jet: &PlaneCurveJet, w: &Vec3, item_ii: bool) -> bool {
    let t = planar_directrix(*jet, item_ii).d1(0.0).normalize();
    t.cross(w).norm() >= 0.1
}

pub fn triviality(seed: u64) -> anyhow::Result<Evaluation> {
    // cones: u|w'|H equals the u-free coefficient, so a residual vanishing in
    // u forces H = 0
    let mut g = rng(seed.wrapping_add(31));
    let mut identity = 0.0f64;
    for _ in 0..TRIVIALITY_DRAWS {
        let c = random_conical(&mut g);
        let gens = random_generators(&mut g, Axis::Z);
        let s = g.random_range(S_RANGE.0..S_RANGE.1);
        let sys = conical_residual_system(&c, &gens, s)?;
        let dwn = c.w.d1(s).norm();
        for u in [-1.5, 0.5, 2.0] {
            let h = c.conical_mean_curvature(s, u)?;
            identity = identity.max((u * dwn * h - sys.constant).abs());
        }
    }
    let mut planar = 0.0f64;
    for _ in 0..TRIVIALITY_DRAWS {
        let c = great_circle_cone(&mut g);
        let s = g.random_range(-1.0..1.0);
        let sys = conical_residual_system(&c, &MotionGenerators::zero(Axis::Z), s)?;
        planar = planar.max(sys.constant.abs());
        for u in [-2.0, 0.5, 3.0] {
            planar = planar.max(c.conical_mean_curvature(s, u)?.abs());
        }
    }

    let mut g = rng(seed.wrapping_add(32));
    let mut forced = 0.0f64;
    let mut draws = 0usize;
    while draws < TRIVIALITY_DRAWS {
        let w = random_unit(&mut g);
        let gens = MotionGenerators::new(
            g.random_range(0.2..1.0),
            g.random_range(-1.0..1.0),
            g.random_range(-1.0..1.0),
            Axis::X,
        );
        let (h1, h2, c0) = (g.random_range(0.5..1.5), g.random_range(-0.5..0.5), g.random_range(-1.0..1.0));
        let s = g.random_range(-1.0..1.0);
        let mut used = false;
        for item_ii in [false, true] {
            let slope = if item_ii { forced_slope_item_ii(&w) } else { forced_slope_item_i(&w) };
            let Ok(m) = slope else { continue };
            let jet = line_jet(m, h1, h2, c0, s);
            if !transverse(&jet, &w, item_ii) {
                continue;
            }
            let res = if item_ii {
                cylindrical_residuals_ii(&jet, &w, &gens, CylinderOptions::default())
            } else {
                cylindrical_residuals_i(&jet, &w, &gens, CylinderOptions::default())
            };
            let Ok(res) = res else { continue };
            let h = RuledSurface::cylindrical(planar_directrix(jet, item_ii), w).cylindrical_mean_curvature(0.0)?;
            forced = forced.max(res.alg.abs()).max(h.abs());
            used = true;
        }
        draws += usize::from(used);
    }
    done(
        9,
        vec![
            Measure::at_most("cone max |u|w'|H - constant|", identity, 1e-12),
            Measure::at_most("planar cones max |constant|, |H|", planar, 1e-14),
            Measure::at_least("forced-slope draws", draws as f64, TRIVIALITY_DRAWS as f64),
            Measure::at_most("forced-slope max |alg|, |H|", forced, 1e-10),
        ],
    )
}

/// Motion named in each figure caption, indexed by figure number − 1.
pub const CAPTION_MOTION: [&str; 10] = [
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

pub fn figures(integration: &IntegrationConfig) -> anyhow::Result<Evaluation> {
    let runs = (1..=FIGURE_COUNT)
        .into_par_iter()
        .map(|n| run_figure(n, SpeedMode::UnitSpeed, integration))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mismatches = 0usize;
    let mut notes = Vec::new();
    let mut artifacts = Vec::new();
    for run in &runs {
        let caption = CAPTION_MOTION[run.figure as usize - 1];
        let preset = figure_preset(run.figure)?;
        // classification must follow the generator signs of the preset
        if run.label != caption || preset.label().to_string() != caption {
            mismatches += 1;
            notes.push(format!("figure {}: classified {} but captioned {caption}", run.figure, run.label));
        }
        artifacts.extend(figure_artifacts(run));
    }
    let files = artifacts.iter().filter(|a| !a.name.ends_with(".json")).count();
    Ok(Evaluation {
        result: CriterionResult::new(
            10,
            vec![
                Measure::at_least("figures completed", runs.len() as f64, 10.0),
                Measure::at_least("csv and svg files", files as f64, 20.0),
                Measure::at_most("label mismatches", mismatches as f64, 0.0),
            ],
            notes,
        ),
        artifacts,
    })
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub generator: &'static str,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}
