//! Generic fundamental-form oracle.
//!
//! Works from point evaluations `X(p, q)` only: all first and second partial
//! derivatives are finite differences, and `H`, `K` come from the textbook
//! expressions `(Eg − 2fF + Ge) / 2(EG − F²)` and `(eg − f²) / (EG − F²)`.
//! It shares no code path with the specialized formulas in [`crate::geom`]
//! and is what tests and `selftest` compare them against.

use crate::Vec3;

#[derive(Debug, Clone, Copy)]
pub struct OracleSample {
    /// `X_p ∧ X_q / |X_p ∧ X_q|`
    pub normal: Vec3,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    pub first_form: [f64; 3],
    pub second_form: [f64; 3],
}

const H1: f64 = 1e-5;
const H2: f64 = 1e-3;

fn second_pure(x: &dyn Fn(f64) -> Vec3, h: f64) -> Vec3 {
    let d = |h: f64| (x(h) - x(0.0) * 2.0 + x(-h)) / (h * h);
    (d(0.5 * h) * 4.0 - d(h)) / 3.0
}

pub fn fundamental_forms(x: impl Fn(f64, f64) -> Vec3, p: f64, q: f64) -> OracleSample {
    let xp = (x(p + H1, q) - x(p - H1, q)) / (2.0 * H1);
    let xq = (x(p, q + H1) - x(p, q - H1)) / (2.0 * H1);
    let xpp = second_pure(&|t| x(p + t, q), H2);
    let xqq = second_pure(&|t| x(p, q + t), H2);
    let mixed = |h: f64| {
        (x(p + h, q + h) - x(p + h, q - h) - x(p - h, q + h) + x(p - h, q - h)) / (4.0 * h * h)
    };
    let xpq = (mixed(0.5 * H2) * 4.0 - mixed(H2)) / 3.0;

    let cross = xp.cross(&xq);
    let normal = cross / cross.norm();
    let (e_, f_, g_) = (xp.dot(&xp), xp.dot(&xq), xq.dot(&xq));
    let (e, f, g) = (normal.dot(&xpp), normal.dot(&xpq), normal.dot(&xqq));
    let det = e_ * g_ - f_ * f_;
    OracleSample {
        normal,
        mean_curvature: (e_ * g - 2.0 * f * f_ + g_ * e) / (2.0 * det),
        gauss_curvature: (e * g - f * f) / det,
        first_form: [e_, f_, g_],
        second_form: [e, f, g],
    }
}

/// Relative agreement with an absolute floor near zero.
pub fn agrees(value: f64, reference: f64, rel: f64, abs_floor: f64) -> bool {
    (value - reference).abs() <= rel * reference.abs().max(value.abs()) || (value - reference).abs() <= abs_floor
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sphere() {
        let x = |u: f64, s: f64| Vec3::new(s.cos() * u.cos(), s.cos() * u.sin(), s.sin());
        let o = fundamental_forms(x, 0.3, 0.2);
        assert!((o.mean_curvature + 1.0).abs() < 1e-7);
        assert!((o.gauss_curvature - 1.0).abs() < 1e-7);
    }
}
