//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with its measurements.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mcfsol_cli::selftest::{criterion_name, evaluate, CriterionResult, Measure, SuiteConfig};

fn report(result: &CriterionResult) {
    println!("{}", result.line());
    for n in &result.notes {
        println!("    {n}");
    }
    assert!(result.pass, "criterion {} failed", result.id);
}

fn in_process(id: u32, budget: Option<Duration>) {
    let start = Instant::now();
    let mut eval = evaluate(id, &SuiteConfig::default()).expect("criterion runs");
    let elapsed = start.elapsed().as_secs_f64();
    if let Some(b) = budget {
        eval.result.measures.push(Measure::at_most("runtime s", elapsed, b.as_secs_f64()));
        eval.result.pass = eval.result.measures.iter().all(|m| m.pass);
    }
    report(&eval.result);
}

#[test]
fn criterion_01_minimal_surface_zeros() {
    in_process(1, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_oracle_equivalence() {
    in_process(2, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_03_shrinking_cylinder() {
    in_process(3, None);
}

#[test]
fn criterion_04_grim_reaper() {
    in_process(4, None);
}

#[test]
fn criterion_05_sol2() {
    in_process(5, None);
}

#[test]
fn criterion_06_sol1_adjudication() {
    in_process(6, None);
}

#[test]
fn criterion_07_profile_ode_invariants() {
    in_process(7, None);
}

#[test]
fn criterion_08_quartic_identity() {
    in_process(8, None);
}

#[test]
fn criterion_09_triviality() {
    in_process(9, None);
}

fn mcfsol(args: &[&str], out: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mcfsol"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Motion named in the caption text of each figure.
const CAPTIONS: [&str; 10] = [
    "translating",
    "translating and expanding",
    "translating and shrinking",
    "translating and shrinking",
    "shrinking",
    "expanding",
    "translating and shrinking",
    "translating and shrinking",
    "shrinking",
    "shrinking",
];

#[test]
fn criterion_10_figure_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let mut failures = 0;
    let mut mismatches = 0;
    for n in 1..=10u32 {
        let out = mcfsol(&["figure", &n.to_string()], dir.path());
        let csv = dir.path().join(format!("fig{n}.csv"));
        let svg = dir.path().join(format!("fig{n}.svg"));
        if !out.status.success() || !csv.is_file() || !svg.is_file() {
            failures += 1;
            continue;
        }
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("fig{n}.json"))).unwrap()).unwrap();
        let label = json["label"].as_str().unwrap_or("").replace('+', " and ");
        if label != CAPTIONS[n as usize - 1] {
            mismatches += 1;
            println!("    figure {n}: label {label:?}, caption {:?}", CAPTIONS[n as usize - 1]);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let measures = vec![
        Measure::at_most("failed runs", failures as f64, 0.0),
        Measure::at_most("label mismatches", mismatches as f64, 0.0),
        Measure::at_most("runtime s", elapsed, 30.0),
    ];
    report(&CriterionResult {
        id: 10,
        name: criterion_name(10).to_string(),
        pass: measures.iter().all(|m| m.pass),
        measures,
        notes: Vec::new(),
    });
}

fn read_outputs(dir: &Path) -> BTreeMap<String, String> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let text = if p.extension().is_some_and(|e| e == "svg") {
                mcfsol::io::strip_generator(&text)
            } else {
                text
            };
            (p.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect()
}

#[test]
fn criterion_11_determinism() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ra = mcfsol(&["selftest"], a.path());
    let rb = mcfsol(&["selftest"], b.path());
    let (fa, fb) = (read_outputs(a.path()), read_outputs(b.path()));
    let data_files = fa.keys().filter(|k| k.ends_with(".csv") || k.ends_with(".json")).count();
    let differing = fa.iter().filter(|(k, v)| fb.get(*k) != Some(v)).count() + fb.keys().filter(|k| !fa.contains_key(*k)).count();
    let measures = vec![
        Measure::at_most("failed selftest runs", [&ra, &rb].iter().filter(|r| !r.status.success()).count() as f64, 0.0),
        Measure::at_least("csv and json files", data_files as f64, 20.0),
        Measure::at_most("differing files", differing as f64, 0.0),
    ];
    report(&CriterionResult {
        id: 11,
        name: criterion_name(11).to_string(),
        pass: measures.iter().all(|m| m.pass),
        measures,
        notes: Vec::new(),
    });
}
