//! Declarative surface descriptions in TOML.
//!
//! ```toml
//! name = "helicoid"
//! family = "ruled"            # ruled | cylindrical | conical | revolution
//! params = { h = 1.0 }
//! beta = ["0", "0", "h*s"]    # ruled, cylindrical
//! w = ["cos(s)", "sin(s)", 0] # ruled, conical
//! # direction = [1, 0, 0]     # cylindrical
//! # apex = [0, 0, 0]          # conical
//! # phi = "cosh(s)"           # revolution
//! # psi = "s"
//!
//! [gens]
//! a = 0.0
//! b = 0.0
//! c = 0.0
//! axis = "z"
//!
//! [grid]
//! s = [-2.0, 2.0, 50]
//! u = [-1.0, 1.0, 20]
//! ```
//!
//! Expressions are functions of `s` and may use the named `params`; their
//! derivatives are taken symbolically.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::expr::Expr;
use crate::soliton::{Axis, GridSpec, MotionGenerators};
use crate::{Error, Result, RevolutionSurface, RuledSurface, SmoothFn, Surface, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecFamily {
    Ruled,
    Cylindrical,
    Conical,
    Revolution,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Field {
    Num(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GensRaw {
    #[serde(default)]
    a: f64,
    #[serde(default)]
    b: f64,
    #[serde(default)]
    c: f64,
    #[serde(default = "default_axis")]
    axis: String,
}

fn default_axis() -> String {
    "z".into()
}

impl Default for GensRaw {
    fn default() -> Self {
        Self {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            axis: default_axis(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRaw {
    s: (f64, f64, usize),
    u: (f64, f64, usize),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    name: String,
    family: SpecFamily,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    beta: Option<[Field; 3]>,
    w: Option<[Field; 3]>,
    direction: Option<[f64; 3]>,
    apex: Option<[f64; 3]>,
    phi: Option<Field>,
    psi: Option<Field>,
    #[serde(default)]
    gens: GensRaw,
    grid: Option<GridRaw>,
}

pub enum SpecSurface {
    Ruled(RuledSurface),
    Revolution(RevolutionSurface),
}

pub struct SurfaceSpec {
    pub name: String,
    pub family: SpecFamily,
    pub gens: MotionGenerators,
    pub grid: GridSpec,
    pub surface: SpecSurface,
}

impl std::fmt::Debug for SurfaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfaceSpec")
            .field("name", &self.name)
            .field("family", &self.family)
            .field("gens", &self.gens)
            .field("grid", &self.grid)
            .finish()
    }
}

/// A scalar expression of `s` with its first two derivatives.
struct Compiled {
    value: Expr,
    d1: Expr,
    d2: Expr,
}

fn compile(field: &Field, params: &BTreeMap<String, f64>) -> Result<Compiled> {
    let e = match field {
        Field::Num(v) => Expr::Num(*v),
        Field::Text(t) => Expr::parse(t)?.bind(params),
    };
    if let Some(v) = e.free_variables().into_iter().find(|v| v != "s") {
        return Err(Error::Parse(format!("unknown name '{v}'")));
    }
    let d1 = e.diff("s");
    let d2 = d1.diff("s");
    Ok(Compiled { value: e, d1, d2 })
}

fn ev(e: &Expr, s: f64) -> f64 {
    e.eval("s", s).unwrap_or(f64::NAN)
}

fn scalar(field: &Field, params: &BTreeMap<String, f64>) -> Result<SmoothFn<f64>> {
    let c = std::sync::Arc::new(compile(field, params)?);
    let (a, b, d) = (c.clone(), c.clone(), c);
    Ok(SmoothFn::analytic(
        move |s| ev(&a.value, s),
        move |s| ev(&b.d1, s),
        move |s| ev(&d.d2, s),
    ))
}

fn vector(fields: &[Field; 3], params: &BTreeMap<String, f64>) -> Result<SmoothFn<Vec3>> {
    let c: Vec<Compiled> = fields.iter().map(|f| compile(f, params)).collect::<Result<_>>()?;
    let c = std::sync::Arc::new(c);
    let at = |c: std::sync::Arc<Vec<Compiled>>, pick: fn(&Compiled) -> &Expr| {
        move |s: f64| Vec3::new(ev(pick(&c[0]), s), ev(pick(&c[1]), s), ev(pick(&c[2]), s))
    };
    Ok(SmoothFn::analytic(
        at(c.clone(), |c| &c.value),
        at(c.clone(), |c| &c.d1),
        at(c, |c| &c.d2),
    ))
}

fn need<T>(v: Option<T>, key: &str, family: SpecFamily) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("family {family:?} needs `{key}`")))
}

impl SurfaceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Raw = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let axis = match raw.gens.axis.to_ascii_lowercase().as_str() {
            "z" => Axis::Z,
            "x" => Axis::X,
            other => return Err(Error::Parse(format!("unknown axis '{other}'"))),
        };
        let gens = MotionGenerators::new(raw.gens.a, raw.gens.b, raw.gens.c, axis);
        let grid = match raw.grid {
            Some(g) => GridSpec::new(g.s, g.u),
            None => GridSpec::new((-2.0, 2.0, 50), (-1.0, 1.0, 20)),
        };
        let p = &raw.params;
        let fam = raw.family;
        let surface = match fam {
            SpecFamily::Ruled => SpecSurface::Ruled(RuledSurface::noncylindrical(
                vector(&need(raw.beta, "beta", fam)?, p)?,
                vector(&need(raw.w, "w", fam)?, p)?,
            )),
            SpecFamily::Cylindrical => {
                let d = need(raw.direction, "direction", fam)?;
                SpecSurface::Ruled(RuledSurface::cylindrical(
                    vector(&need(raw.beta, "beta", fam)?, p)?,
                    Vec3::new(d[0], d[1], d[2]),
                ))
            }
            SpecFamily::Conical => {
                let a = need(raw.apex, "apex", fam)?;
                SpecSurface::Ruled(RuledSurface::conical(
                    Vec3::new(a[0], a[1], a[2]),
                    vector(&need(raw.w, "w", fam)?, p)?,
                ))
            }
            SpecFamily::Revolution => SpecSurface::Revolution(RevolutionSurface::new(
                scalar(&need(raw.phi, "phi", fam)?, p)?,
                scalar(&need(raw.psi, "psi", fam)?, p)?,
            )),
        };
        Ok(Self {
            name: raw.name,
            family: fam,
            gens,
            grid,
            surface,
        })
    }

    pub fn surface(&self) -> &dyn Surface {
        match &self.surface {
            SpecSurface::Ruled(r) => r,
            SpecSurface::Revolution(r) => r,
        }
    }

    /// The underlying surface when the file describes a noncylindrical ruled one.
    pub fn noncylindrical(&self) -> Option<&RuledSurface> {
        match (&self.surface, self.family) {
            (SpecSurface::Ruled(r), SpecFamily::Ruled) => Some(r),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soliton::residual_grid;

    const HELICOID: &str = r#"
name = "helicoid"
family = "ruled"
params = { h = 1.5 }
beta = ["0", "0", "h*s"]
w = ["cos(s)", "sin(s)", 0]
"#;

    #[test]
    fn helicoid_is_minimal() {
        let spec = SurfaceSpec::parse(HELICOID).unwrap();
        assert_eq!(spec.grid.s_count, 50);
        let r = residual_grid(spec.surface(), &spec.gens, &spec.grid).unwrap();
        assert!(r.max_abs <= 1e-12, "{}", r.max_abs);
        assert!(spec.noncylindrical().is_some());
    }

    #[test]
    fn shrinking_cylinder_spec() {
        let spec = SurfaceSpec::parse(
            r#"
name = "cylinder"
family = "revolution"
phi = 1
psi = "s"
[gens]
c = -0.5
[grid]
s = [-2.0, 2.0, 10]
u = [0.0, 6.28, 8]
"#,
        )
        .unwrap();
        let r = residual_grid(spec.surface(), &spec.gens, &spec.grid).unwrap();
        assert_eq!(r.samples.len(), 80);
        assert!(r.max_abs <= 1e-12, "{}", r.max_abs);
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            "name = 'x'\nfamily = 'ruled'\nw = ['1','0','0']",
            "name = 'x'\nfamily = 'revolution'\nphi = 'q*s'\npsi = 's'",
            "name = 'x'\nfamily = 'blob'",
            "name = 'x'\nfamily = 'revolution'\nphi = '1'\npsi = 's'\ncolor = 3",
            "name = 'x'\nfamily = 'revolution'\nphi = '1'\npsi = 's'\n[gens]\naxis = 'y'",
        ] {
            assert!(matches!(SurfaceSpec::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
