//! CSV, SVG and JSON writers. Numbers use the shortest round-trip decimal
//! form, so output is byte-identical across runs.

use std::fmt::Write as _;

use serde::Serialize;

use crate::flow::Snapshot;
use crate::profile::SampledCurve;

/// Generator string embedded in SVG comments.
pub const GENERATOR: &str = concat!("mcfsol ", env!("CARGO_PKG_VERSION"));

/// Profile samples as `s,phi,psi,dphi,dpsi,kappa,residual`. Missing
/// residuals are written as empty fields.
pub fn profile_csv(curve: &SampledCurve, residuals: Option<&[f64]>) -> String {
    let mut out = String::from("s,phi,psi,dphi,dpsi,kappa,residual\n");
    for (i, p) in curve.samples.iter().enumerate() {
        let r = residuals.and_then(|r| r.get(i)).map(|r| r.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.s, p.point.x, p.point.y, p.tangent.x, p.tangent.y, p.kappa, r
        );
    }
    out
}

/// Flow snapshots as `t,index,y,z`.
pub fn snapshots_csv(snapshots: &[Snapshot]) -> String {
    let mut out = String::from("t,index,y,z\n");
    for snap in snapshots {
        for (i, p) in snap.curve.samples.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", snap.t, i, p.point.x, p.point.y);
        }
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// One polyline of a plot, in plot coordinates `(horizontal, vertical)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

impl Series {
    /// Profile-plane view of a curve: `ψ` horizontal, `φ` vertical.
    pub fn profile(label: &str, curve: &SampledCurve) -> Self {
        Self {
            label: label.to_string(),
            points: curve.samples.iter().map(|p| (p.point.y, p.point.x)).collect(),
            closed: curve.closed,
        }
    }

    /// Cross-section view: first coordinate horizontal.
    pub fn section(label: &str, curve: &SampledCurve) -> Self {
        Self {
            label: label.to_string(),
            points: curve.samples.iter().map(|p| (p.point.x, p.point.y)).collect(),
            closed: curve.closed,
        }
    }
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Minimal SVG document with axes and one polyline per series.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 48.0;
    let finite = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    // equal scales keep the geometry undistorted
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = ((W - 2.0 * M) / span).min((H - 2.0 * M) / span);
    let cx = 0.5 * (x0 + x1);
    let cy = 0.5 * (y0 + y1);
    let px = |x: f64| W / 2.0 + (x - cx) * scale;
    let py = |y: f64| H / 2.0 - (y - cy) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(out, "<!-- generator: {GENERATOR} -->");
    let _ = writeln!(out, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(out, "<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>", W / 2.0, escape(title));
    let (ax, ay) = (px(0.0).clamp(M, W - M), py(0.0).clamp(M, H - M));
    let _ = writeln!(out, "<line x1=\"{M}\" y1=\"{ay:.2}\" x2=\"{}\" y2=\"{ay:.2}\" stroke=\"#888\"/>", W - M);
    let _ = writeln!(out, "<line x1=\"{ax:.2}\" y1=\"{M}\" x2=\"{ax:.2}\" y2=\"{}\" stroke=\"#888\"/>", H - M);
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>", W - M + 4.0, ay + 4.0, escape(x_label));
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>", ax - 4.0, M - 6.0, escape(y_label));
    let _ = writeln!(
        out,
        "<text x=\"{M}\" y=\"{}\" font-size=\"11\">{x_label} [{x0:.3}, {x1:.3}]  {y_label} [{y0:.3}, {y1:.3}]</text>",
        H - 12.0
    );
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let tag = if s.closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            out,
            "<{tag} fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"><title>{}</title></{tag}>",
            pts.join(" "),
            escape(&s.label)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{}</text>",
            W - M - 120.0,
            M + 14.0 * k as f64,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Removes the generator comment so two SVG documents can be compared.
pub fn strip_generator(svg: &str) -> String {
    svg.lines()
        .filter(|l| !l.starts_with("<!-- generator:"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec2;

    fn curve() -> SampledCurve {
        let s: Vec<f64> = (0..5).map(|i| i as f64 * 0.25).collect();
        let p = s.iter().map(|&t| Vec2::new(1.0 + t * t, t)).collect();
        SampledCurve::from_points(s, p, false).unwrap()
    }

    #[test]
    fn csv_columns() {
        let c = curve();
        let csv = profile_csv(&c, Some(&[0.0, 1e-9, 0.0, 0.0, 0.0]));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "s,phi,psi,dphi,dpsi,kappa,residual");
        assert_eq!(lines.len(), 6);
        assert!(lines[2].starts_with("0.25,1.0625,0.25,"));
        assert!(lines[2].ends_with(",0.000000001"));
        assert!(profile_csv(&c, None).lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn snapshot_columns() {
        let snaps = vec![Snapshot { t: 0.0, curve: curve() }, Snapshot { t: 0.5, curve: curve() }];
        let csv = snapshots_csv(&snaps);
        assert_eq!(csv.lines().next(), Some("t,index,y,z"));
        assert_eq!(csv.lines().count(), 11);
        assert_eq!(csv.lines().nth(6), Some("0.5,0,1,0"));
    }

    #[test]
    fn svg_is_deterministic_and_well_formed() {
        let c = curve();
        let a = svg_plot("t", "psi", "phi", &[Series::profile("a", &c)]);
        let b = svg_plot("t", "psi", "phi", &[Series::profile("a", &c)]);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<polyline").count(), 1);
        assert!(!strip_generator(&a).contains("generator"));
    }
}
