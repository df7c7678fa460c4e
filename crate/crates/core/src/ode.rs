//! Explicit Runge–Kutta integrators for small autonomous-or-not systems
//! `y' = f(s, y)` with a terminal event.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Method {
    /// Classical fourth-order method with a fixed step.
    Rk4 { step: f64 },
    /// Dormand–Prince 5(4) with embedded error control.
    Rk45 { rtol: f64, atol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Reached,
    /// The event function crossed zero, or the right-hand side became
    /// singular and the step could not be shrunk further.
    SingularStop,
    StepLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Spacing of the stored samples. Steps are clipped so that every output
    /// node is hit exactly; `None` stores every accepted step.
    pub output_step: Option<f64>,
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    pub s: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub stop: StopReason,
    pub steps: usize,
}

type Rhs<'a, const N: usize> = &'a dyn Fn(f64, &[f64; N]) -> Result<[f64; N]>;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        *o += h * acc;
    }
    out
}

fn rk4_step<const N: usize>(f: Rhs<N>, s: f64, y: &[f64; N], h: f64) -> Result<[f64; N]> {
    let k1 = f(s, y)?;
    let k2 = f(s + 0.5 * h, &axpy(y, h, &[(0.5, &k1)]))?;
    let k3 = f(s + 0.5 * h, &axpy(y, h, &[(0.5, &k2)]))?;
    let k4 = f(s + h, &axpy(y, h, &[(1.0, &k3)]))?;
    Ok(axpy(
        y,
        h,
        &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)],
    ))
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// One Dormand–Prince step: fifth-order solution and its error estimate.
fn dopri_step<const N: usize>(
    f: Rhs<N>,
    s: f64,
    y: &[f64; N],
    h: f64,
) -> Result<([f64; N], [f64; N])> {
    let k1 = f(s, y)?;
    let k2 = f(s + h / 5.0, &axpy(y, h, &[(A21, &k1)]))?;
    let k3 = f(s + 0.3 * h, &axpy(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = f(s + 0.8 * h, &axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(
        s + 8.0 / 9.0 * h,
        &axpy(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = f(
        s + h,
        &axpy(y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    )?;
    let y5 = axpy(y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(s + h, &y5)?;
    let err = axpy(
        &[0.0; N],
        h,
        &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
    );
    Ok((y5, err))
}

fn error_norm<const N: usize>(
    err: &[f64; N],
    y0: &[f64; N],
    y1: &[f64; N],
    rtol: f64,
    atol: f64,
) -> f64 {
    let sum: f64 = (0..N)
        .map(|i| {
            let sc = atol + rtol * y0[i].abs().max(y1[i].abs());
            (err[i] / sc).powi(2)
        })
        .sum();
    (sum / N as f64).sqrt()
}

/// Integrates from `(s0, y0)` towards `s_end` (either direction).
///
/// Integration stops early when `event(y)` changes from positive to
/// non-positive; the crossing is located by bisection on the step length and
/// the last stored sample sits on the event surface.
pub fn integrate<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> Result<[f64; N]>,
    event: impl Fn(&[f64; N]) -> f64,
    s0: f64,
    y0: [f64; N],
    s_end: f64,
    cfg: &SolverConfig,
) -> Result<Trajectory<N>> {
    let f: Rhs<N> = &f;
    let dir = if s_end >= s0 { 1.0 } else { -1.0 };
    let span = (s_end - s0).abs();
    let mut traj = Trajectory {
        s: vec![s0],
        y: vec![y0],
        stop: StopReason::Reached,
        steps: 0,
    };
    if span == 0.0 {
        return Ok(traj);
    }
    if event(&y0) <= 0.0 {
        traj.stop = StopReason::SingularStop;
        return Ok(traj);
    }
    let out_step = cfg.output_step.map(f64::abs).filter(|h| *h > 0.0);
    let out_count = out_step.map(|h| (span / h).round().max(1.0) as usize);
    let out_node = |k: usize| -> f64 {
        match out_count {
            Some(n) if k >= n => s_end,
            Some(n) => s0 + (s_end - s0) * k as f64 / n as f64,
            None => s_end,
        }
    };
    let mut next_out = 1usize;

    let (mut h, adaptive, rtol, atol) = match cfg.method {
        Method::Rk4 { step } => {
            if !(step > 0.0) {
                return Err(Error::Config(format!("non-positive step {step}")));
            }
            (step, false, 0.0, 0.0)
        }
        Method::Rk45 { rtol, atol } => {
            if !(rtol > 0.0 && atol > 0.0) {
                return Err(Error::Config("tolerances must be positive".into()));
            }
            ((span * 1e-3).min(1e-2), true, rtol, atol)
        }
    };
    let h_min = 1e-14 * span.max(1.0);

    let mut s = s0;
    let mut y = y0;
    loop {
        if traj.steps >= cfg.max_steps {
            traj.stop = StopReason::StepLimit;
            return Ok(traj);
        }
        let target = out_node(next_out);
        let remaining = (target - s) * dir;
        let is_output = remaining <= h * (1.0 + 1e-12);
        let step_len = if is_output { remaining } else { h };

        let attempt = if adaptive {
            dopri_step(f, s, &y, dir * step_len).map(|(y1, e)| (y1, error_norm(&e, &y, &y1, rtol, atol)))
        } else {
            rk4_step(f, s, &y, dir * step_len).map(|y1| (y1, 0.0))
        };
        let (y1, err) = match attempt {
            Ok(v) if v.0.iter().all(|x| x.is_finite()) => v,
            Err(e) if !matches!(e, Error::Singular(_)) => return Err(e),
            _ => {
                // singular right-hand side inside the step: shrink
                h = 0.25 * step_len;
                if h < h_min {
                    traj.stop = StopReason::SingularStop;
                    return Ok(traj);
                }
                traj.steps += 1;
                continue;
            }
        };
        if adaptive && err > 1.0 {
            h = step_len * (0.9 * err.powf(-0.2)).max(0.2);
            if h < h_min {
                traj.stop = StopReason::SingularStop;
                return Ok(traj);
            }
            traj.steps += 1;
            continue;
        }
        traj.steps += 1;

        if event(&y1) <= 0.0 {
            let (sc, yc) = locate_event(f, &event, s, &y, step_len, dir, adaptive)?;
            traj.s.push(sc);
            traj.y.push(yc);
            traj.stop = StopReason::SingularStop;
            return Ok(traj);
        }

        let s1 = if is_output { target } else { s + dir * step_len };
        if adaptive {
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !is_output || step_len >= h * 0.5 {
                h = step_len * grow;
            }
        }
        s = s1;
        y = y1;
        if is_output || out_step.is_none() {
            traj.s.push(s);
            traj.y.push(y);
            if is_output {
                if target == s_end {
                    return Ok(traj);
                }
                next_out += 1;
            }
        }
    }
}

fn locate_event<const N: usize>(
    f: Rhs<N>,
    event: &impl Fn(&[f64; N]) -> f64,
    s: f64,
    y: &[f64; N],
    h: f64,
    dir: f64,
    adaptive: bool,
) -> Result<(f64, [f64; N])> {
    let step = |len: f64| -> Option<[f64; N]> {
        let r = if adaptive {
            dopri_step(f, s, y, dir * len).map(|v| v.0)
        } else {
            rk4_step(f, s, y, dir * len)
        };
        r.ok().filter(|v| v.iter().all(|x| x.is_finite()))
    };
    let (mut lo, mut hi) = (0.0, h);
    let mut best = *y;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        match step(mid) {
            Some(ym) if event(&ym) > 0.0 => {
                lo = mid;
                best = ym;
            }
            _ => hi = mid,
        }
        if hi - lo <= 1e-15 * h.max(1.0) {
            break;
        }
    }
    Ok((s + dir * lo, best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(method: Method) -> SolverConfig {
        SolverConfig {
            method,
            output_step: Some(0.1),
            max_steps: 1_000_000,
        }
    }

    fn oscillator(_: f64, y: &[f64; 2]) -> Result<[f64; 2]> {
        Ok([y[1], -y[0]])
    }

    #[test]
    fn dopri_harmonic_oscillator() {
        let m = Method::Rk45 { rtol: 1e-10, atol: 1e-12 };
        let t = integrate(oscillator, |_| 1.0, 0.0, [0.0, 1.0], 10.0, &cfg(m)).unwrap();
        assert_eq!(t.stop, StopReason::Reached);
        assert_eq!(t.s.len(), 101);
        assert_eq!(*t.s.last().unwrap(), 10.0);
        for (s, y) in t.s.iter().zip(&t.y) {
            assert!((y[0] - s.sin()).abs() < 1e-8, "{s}");
        }
    }

    #[test]
    fn backward_integration() {
        let m = Method::Rk45 { rtol: 1e-10, atol: 1e-12 };
        let t = integrate(oscillator, |_| 1.0, 0.0, [0.0, 1.0], -3.0, &cfg(m)).unwrap();
        assert!((t.s.last().unwrap() + 3.0).abs() < 1e-15);
        assert!((t.y.last().unwrap()[0] - (-3.0f64).sin()).abs() < 1e-8);
    }

    #[test]
    fn rk4_fourth_order() {
        let err = |h: f64| {
            let c = SolverConfig {
                method: Method::Rk4 { step: h },
                output_step: None,
                max_steps: 1_000_000,
            };
            let t = integrate(oscillator, |_| 1.0, 0.0, [0.0, 1.0], 2.0, &c).unwrap();
            (t.y.last().unwrap()[0] - 2f64.sin()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!((14.0..18.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn event_stops_on_surface() {
        // y' = -1 from y = 1 hits y = 0.25 at s = 0.75
        let m = Method::Rk45 { rtol: 1e-10, atol: 1e-12 };
        let t = integrate(|_, _: &[f64; 1]| Ok([-1.0]), |y| y[0] - 0.25, 0.0, [1.0], 5.0, &cfg(m)).unwrap();
        assert_eq!(t.stop, StopReason::SingularStop);
        assert!((t.s.last().unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn step_limit_reported() {
        let c = SolverConfig {
            method: Method::Rk4 { step: 1e-3 },
            output_step: None,
            max_steps: 10,
        };
        let t = integrate(oscillator, |_| 1.0, 0.0, [0.0, 1.0], 1.0, &c).unwrap();
        assert_eq!(t.stop, StopReason::StepLimit);
    }

    #[test]
    fn singular_rhs_is_a_stop() {
        // y = sqrt(1 - s) reaches the axis at s = 1
        let m = Method::Rk45 { rtol: 1e-10, atol: 1e-12 };
        let f = |_: f64, y: &[f64; 1]| {
            if y[0] <= 0.0 {
                Err(Error::Singular("y <= 0".into()))
            } else {
                Ok([-0.5 / y[0]])
            }
        };
        let t = integrate(f, |y| y[0] - 1e-6, 0.0, [1.0], 2.0, &cfg(m)).unwrap();
        assert_eq!(t.stop, StopReason::SingularStop);
        assert!((t.s.last().unwrap() - 1.0).abs() < 1e-6);
    }
}
