//! Curvature invariants and self-similar mean curvature flow checks for
//! ruled, conical, cylindrical and revolution surfaces in R³.
//!
//! # Orientation and sign conventions
//!
//! Every normal in this crate is taken with a fixed orientation and the sign
//! of the mean curvature follows from it:
//!
//! * ruled `X(s,u) = β(s) + u w(s)`: `N = X_s ∧ X_u / |X_s ∧ X_u|`, which for a
//!   noncylindrical surface on its line of striction is
//!   `(λ w' + u w'∧w) / √(λ² + u²)`;
//! * conical `X(s,u) = P + u w(s)`: `N = w'∧w / |w'|` for every `u` (so the
//!   orientation does not flip across the apex);
//! * revolution `X(u,s) = (φ cos u, φ sin u, ψ)`:
//!   `N = (ψ' cos u, ψ' sin u, −φ') / √(φ'² + ψ'²)`.
//!
//! `H` is the *average* of the principal curvatures measured against `N`
//! (`H = (Eg − 2fF + Ge) / 2(EG − F²)`), so a round cylinder of radius `r` with
//! outward normal has `H = −1/(2r)` and the flow `∂X/∂t = H N` shrinks it as
//! `r(t)² = r² − t`.
//!
//! A surface is a soliton for the homothetic helicoidal motion with
//! generators `(a, b, c)` when `H = ⟨cX + Γ'(0)X + Θ'(0), N⟩` everywhere.
//! Plane profile curves use the tangent `τ = α'`, the normal
//! `η = (ψ', −φ')` and the curvature `κ = (φ''ψ' − ψ''φ') / |τ|³`, so that
//! `τ' = κ η` for unit-speed curves.

pub mod catalog;
pub mod error;
pub mod expr;
pub mod flow;
pub mod geom;
pub mod io;
pub mod ode;
pub mod oracle;
pub mod profile;
pub mod random_surfaces;
pub mod smooth;
pub mod soliton;
pub mod surface_file;

pub use error::{Error, Result};
pub use geom::{
    CurveFrame, PlaneCurveJet, RevolutionSurface, RuledInvariants, RuledKind, RuledSurface,
    Surface, SurfaceSample,
};
pub use profile::{ProfileState, SampledCurve};
pub use smooth::SmoothFn;
pub use soliton::{Axis, MotionGenerators, ResidualReport};

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Vec2 = nalgebra::Vector2<f64>;
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Tolerance for the line-of-striction constraints `|w| = 1`, `|w'| = 1`,
/// `⟨β', w'⟩ = 0`.
pub const TOL_PARAM: f64 = 1e-8;

/// Step for central finite differences when no analytic derivative is given.
pub const H_FD: f64 = 1e-6;
