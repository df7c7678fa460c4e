use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use mcfsol::catalog::{adjudicate_sol1 as adjudicate, catalog_entries, find_entry, verify as verify_entry, Status};
use mcfsol::flow::{default_samples, flow_setup, run_flow_check, Expectation, FlowConfig, FlowFamily, FlowVerdict};
use mcfsol::io::{profile_csv, snapshots_csv, svg_plot, Series};
use mcfsol::ode::StopReason;
use mcfsol::profile::{run_figure, FigureRun, IntegrationConfig, SpeedMode};
use mcfsol::soliton::{residual_grid, GridSpec, SCHEMA_VERSION};
use mcfsol::surface_file::SurfaceSpec;
use mcfsol::MotionGenerators;

use crate::selftest::{self, SuiteConfig, SuiteReport, CRITERIA};
use crate::{Artifact, CliConfig, Outcome, UsageError};

/// Largest profile residual accepted by `figure`.
pub const FIGURE_TOL: f64 = 1e-6;
/// Default pass threshold of `residual`.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Pass threshold of the quartic cross-check.
pub const QUARTIC_TOL: f64 = 1e-8;

fn stop_name(stop: StopReason) -> &'static str {
    match stop {
        StopReason::Reached => "reached",
        StopReason::SingularStop => "singular-stop",
        StopReason::StepLimit => "step-limit",
    }
}

fn report_written(out: &mut dyn Write, paths: &[PathBuf]) -> anyhow::Result<()> {
    for p in paths {
        writeln!(out, "  wrote {}", p.display())?;
    }
    Ok(())
}

pub fn figure_artifacts(run: &FigureRun) -> Vec<Artifact> {
    let n = run.figure;
    let title = format!("figure {n}: b = {}, c = {} ({})", run.b, run.c, run.label);
    vec![
        Artifact::csv(format!("fig{n}.csv"), profile_csv(&run.curve, Some(&run.residuals))),
        Artifact::svg(
            format!("fig{n}.svg"),
            svg_plot(&title, "psi", "phi", &[Series::profile(&format!("fig{n}"), &run.curve)]),
        ),
        Artifact::json(format!("fig{n}.json"), run),
    ]
}

pub fn figure(cfg: &CliConfig, n: u32, literal: bool, s_max: f64, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if !(s_max > 0.0 && s_max.is_finite()) {
        return Err(UsageError(format!("--s-max must be positive, got {s_max}")).into());
    }
    let mode = if literal { SpeedMode::Literal } else { SpeedMode::UnitSpeed };
    let icfg = IntegrationConfig { s_max, ..cfg.integration() };
    let run = run_figure(n, mode, &icfg)?;
    writeln!(
        out,
        "figure {n}: {} (b = {}, c = {}), stop {}, max residual {:.3e}, speed drift {:.3e}",
        run.label,
        run.b,
        run.c,
        stop_name(run.stop),
        run.max_residual,
        run.max_speed_drift
    )?;
    if let Some(note) = &run.note {
        writeln!(out, "  note: {note}")?;
    }
    report_written(out, &cfg.emit_all(&figure_artifacts(&run))?)?;
    Ok(Outcome::from_pass(run.max_residual <= FIGURE_TOL))
}

pub fn verify(cfg: &CliConfig, target: &str, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let entries = if target == "all" { catalog_entries() } else { vec![find_entry(target)?] };
    let results = entries
        .par_iter()
        .map(verify_entry)
        .collect::<Result<Vec<_>, _>>()?;
    let mut artifacts = Vec::new();
    for v in &results {
        if v.status == Status::Disputed {
            writeln!(out, "INFO {}: disputed, informational only", v.name)?;
            for n in &v.notes {
                writeln!(out, "  {n}")?;
            }
        } else {
            writeln!(out, "{} {}", if v.pass { "PASS" } else { "FAIL" }, v.name)?;
            for c in &v.checks {
                let verdict = match (c.informational, c.pass) {
                    (true, _) => "info",
                    (false, true) => "ok",
                    (false, false) => "fail",
                };
                writeln!(out, "  {:<22} max_abs {:.3e}  tol {:.0e}  {verdict}", c.label, c.max_abs, c.tolerance)?;
            }
        }
        artifacts.push(Artifact::json(format!("verify-{}.json", v.name), v));
    }
    if target == "all" {
        artifacts.push(Artifact::json("verify-all.json", &results));
    }
    report_written(out, &cfg.emit_all(&artifacts)?)?;
    Ok(Outcome::from_pass(results.iter().all(|v| v.pass)))
}

#[derive(Debug, Serialize)]
pub struct QuarticCheck {
    pub max_identity_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ResidualSummary {
    pub schema_version: u32,
    pub name: String,
    pub gens: MotionGenerators,
    pub grid: GridSpec,
    pub max_abs: f64,
    pub l2: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic: Option<QuarticCheck>,
    pub pass: bool,
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

pub fn residual(cfg: &CliConfig, file: &Path, quartic: bool, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", file.display())))?;
    let spec = SurfaceSpec::parse(&text).with_context(|| format!("in {}", file.display()))?;
    let report = residual_grid(spec.surface(), &spec.gens, &spec.grid)?;
    let tolerance = cfg.atol.unwrap_or(RESIDUAL_TOL);
    let quartic = if quartic {
        let ruled = spec
            .noncylindrical()
            .ok_or_else(|| UsageError("--quartic needs a surface with family = \"ruled\"".into()))?;
        let us = spec.grid.u_values();
        let worst = spec
            .grid
            .s_values()
            .into_par_iter()
            .map(|s| selftest::quartic_gap(ruled, &spec.gens, s, &us))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Some(QuarticCheck {
            max_identity_error: worst,
            tolerance: QUARTIC_TOL,
            pass: worst <= QUARTIC_TOL,
        })
    } else {
        None
    };
    let pass = report.max_abs <= tolerance && quartic.as_ref().is_none_or(|q| q.pass);
    let summary = ResidualSummary {
        schema_version: SCHEMA_VERSION,
        name: spec.name.clone(),
        gens: spec.gens,
        grid: spec.grid,
        max_abs: report.max_abs,
        l2: report.l2,
        tolerance,
        quartic,
        pass,
    };
    writeln!(
        out,
        "{} {}: {} samples, max_abs {:.3e} (tol {:.0e}), l2 {:.3e}",
        if pass { "PASS" } else { "FAIL" },
        spec.name,
        report.samples.len(),
        report.max_abs,
        tolerance,
        report.l2
    )?;
    if let Some(q) = &summary.quartic {
        writeln!(out, "  quartic identity max error {:.3e} (tol {:.0e})", q.max_identity_error, q.tolerance)?;
    }
    let stem = file_stem(&spec.name);
    let artifacts = [
        Artifact::csv(format!("{stem}-residual.csv"), report.to_csv()),
        Artifact::json(format!("{stem}-residual.json"), &summary),
    ];
    report_written(out, &cfg.emit_all(&artifacts)?)?;
    Ok(Outcome::from_pass(pass))
}

pub fn flow_artifacts(name: &str, verdict: &FlowVerdict) -> Vec<Artifact> {
    let snaps = &verdict.run.snapshots;
    let series: Vec<Series> = snaps
        .iter()
        .map(|s| {
            let label = format!("t = {:.3}", s.t);
            match verdict.run.family {
                FlowFamily::Revolution => Series::profile(&label, &s.curve),
                FlowFamily::CylindricalOrthogonal => Series::section(&label, &s.curve),
            }
        })
        .collect();
    let (x, y) = match verdict.run.family {
        FlowFamily::Revolution => ("psi", "phi"),
        FlowFamily::CylindricalOrthogonal => ("y", "z"),
    };
    vec![
        Artifact::csv(format!("flow-{name}.csv"), snapshots_csv(snaps)),
        Artifact::svg(format!("flow-{name}.svg"), svg_plot(&format!("flow: {name}"), x, y, &series)),
        Artifact::json(format!("flow-{name}.json"), verdict),
    ]
}

pub fn flow(
    cfg: &CliConfig,
    entry: &str,
    dt: f64,
    t_end: f64,
    samples: Option<usize>,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    for (flag, v) in [("--dt", dt), ("--t", t_end)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(UsageError(format!("{flag} must be positive, got {v}")).into());
        }
    }
    let setup = flow_setup(entry)?;
    let n = samples.unwrap_or_else(|| default_samples(&setup, dt));
    let verdict = run_flow_check(&setup, &FlowConfig::new(dt, t_end, n))?;
    writeln!(
        out,
        "flow {entry}: {} samples, dt {dt:e}, {} steps, stop {}",
        verdict.report.samples,
        verdict.run.steps,
        stop_name(verdict.report.stop)
    )?;
    let expected = |t: f64| match verdict.expectation {
        Expectation::Dilation { c, .. } => Some(("sqrt(1+2ct)", (1.0 + 2.0 * c * t).sqrt())),
        Expectation::Translation { speed, .. } => Some(("speed*t", speed * t)),
        Expectation::Stationary { .. } => Some(("sigma", 1.0)),
        Expectation::Shrinking { .. } => None,
    };
    let head = expected(0.0).map_or("", |e| e.0);
    writeln!(out, "  {:>8} {:>12} {:>12} {:>12} {:>12}", "t", "sigma", "zeta", "residual", head)?;
    for r in &verdict.report.records {
        let e = expected(r.t).map_or(String::new(), |e| format!("{:>12.6}", e.1));
        writeln!(out, "  {:>8.4} {:>12.6} {:>12.6} {:>12.3e} {e}", r.t, r.sigma, r.zeta, r.residual)?;
    }
    for c in &verdict.checks {
        writeln!(
            out,
            "  {} {} = {:.3e} (tol {:.0e})",
            if c.pass { "ok  " } else { "FAIL" },
            c.label,
            c.value,
            c.tolerance
        )?;
    }
    report_written(out, &cfg.emit_all(&flow_artifacts(entry, &verdict))?)?;
    Ok(Outcome::from_pass(verdict.pass))
}

pub fn adjudicate_sol1(cfg: &CliConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let rep = adjudicate()?;
    writeln!(out, "sol1 on [{:.4}, {}], equation {}", rep.domain.0, rep.domain.1, rep.equation)?;
    writeln!(out, "  reference self-residual {:.3e}", rep.reference_self_residual)?;
    writeln!(out, "  {:<10} {:>14} {:>14}  solves", "variant", "sup deviation", "ode residual")?;
    for v in &rep.variants {
        writeln!(out, "  {:<10} {:>14.3e} {:>14.3e}  {}", v.exponent, v.sup_deviation, v.ode_residual, v.solves)?;
    }
    writeln!(out, "  verdict: {}", rep.verdict)?;
    report_written(out, &cfg.emit_all(&[Artifact::json("sol1-adjudication.json", &rep)])?)?;
    Ok(Outcome::Pass)
}

pub fn selftest(cfg: &CliConfig, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let suite = SuiteConfig {
        seed: cfg.seed,
        integration: cfg.integration(),
    };
    let mut criteria = Vec::new();
    let mut artifacts = Vec::new();
    for id in CRITERIA {
        let start = Instant::now();
        let eval = selftest::evaluate(id, &suite)?;
        writeln!(out, "{} ({:.2} s)", eval.result.line(), start.elapsed().as_secs_f64())?;
        criteria.push(eval.result);
        artifacts.extend(eval.artifacts);
    }
    let pass = criteria.iter().all(|c| c.pass);
    artifacts.push(Artifact::json(
        "selftest.json",
        &SuiteReport {
            schema_version: SCHEMA_VERSION,
            generator: mcfsol::io::GENERATOR,
            seed: cfg.seed,
            criteria,
            pass,
        },
    ));
    let written = cfg.emit_all(&artifacts)?;
    writeln!(out, "{} files written to {}", written.len(), cfg.out.display())?;
    Ok(Outcome::from_pass(pass))
}
