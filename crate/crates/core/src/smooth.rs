//! Smooth maps of one parameter with optional analytic derivatives.
//!
//! Missing derivatives fall back to central differences: the first
//! derivative uses step [`H_FD`](crate::H_FD), the second derivative a
//! Richardson-extrapolated three-point stencil (a plain `h = 1e-6` second
//! difference would lose about half the significant digits to rounding).

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::{Vec3, H_FD};

/// Values that can be combined linearly by the difference stencils.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl Linear for f64 {}
impl Linear for Vec3 {}

type Func<T> = Arc<dyn Fn(f64) -> T + Send + Sync>;

#[derive(Clone)]
pub struct SmoothFn<T> {
    value: Func<T>,
    d1: Option<Func<T>>,
    d2: Option<Func<T>>,
}

impl<T> fmt::Debug for SmoothFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFn")
            .field("analytic_d1", &self.d1.is_some())
            .field("analytic_d2", &self.d2.is_some())
            .finish()
    }
}

/// Base step of the Richardson second-difference fallback.
const H_SECOND: f64 = 1e-3;

impl<T: Linear + 'static> SmoothFn<T> {
    /// A map with both derivatives supplied in closed form.
    pub fn analytic(
        value: impl Fn(f64) -> T + Send + Sync + 'static,
        d1: impl Fn(f64) -> T + Send + Sync + 'static,
        d2: impl Fn(f64) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Arc::new(value),
            d1: Some(Arc::new(d1)),
            d2: Some(Arc::new(d2)),
        }
    }

    /// A map whose derivatives are estimated by finite differences.
    pub fn numeric(value: impl Fn(f64) -> T + Send + Sync + 'static) -> Self {
        Self {
            value: Arc::new(value),
            d1: None,
            d2: None,
        }
    }

    pub fn constant(v: T) -> Self
    where
        T: Send + Sync,
    {
        let zero = v - v;
        Self::analytic(move |_| v, move |_| zero, move |_| zero)
    }

    pub fn is_analytic(&self) -> bool {
        self.d1.is_some() && self.d2.is_some()
    }

    pub fn eval(&self, s: f64) -> T {
        (self.value)(s)
    }

    pub fn d1(&self, s: f64) -> T {
        match &self.d1 {
            Some(f) => f(s),
            None => central_first(&*self.value, s, H_FD),
        }
    }

    pub fn d2(&self, s: f64) -> T {
        match &self.d2 {
            Some(f) => f(s),
            None => {
                let coarse = central_second(&*self.value, s, H_SECOND);
                let fine = central_second(&*self.value, s, 0.5 * H_SECOND);
                (fine * 4.0 - coarse) * (1.0 / 3.0)
            }
        }
    }

    /// Value and both derivatives at `s`.
    pub fn jet(&self, s: f64) -> (T, T, T) {
        (self.eval(s), self.d1(s), self.d2(s))
    }
}

pub fn central_first<T: Linear>(f: &dyn Fn(f64) -> T, s: f64, h: f64) -> T {
    (f(s + h) - f(s - h)) * (0.5 / h)
}

pub fn central_second<T: Linear>(f: &dyn Fn(f64) -> T, s: f64, h: f64) -> T {
    (f(s + h) - f(s) * 2.0 + f(s - h)) * (1.0 / (h * h))
}
