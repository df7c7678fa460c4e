use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter constraint violated: {what} (deviation {deviation:.3e})")]
    ParamViolation { what: &'static str, deviation: f64 },
    #[error("singular point: {0}")]
    Singular(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("operation requires a {expected} surface")]
    WrongKind { expected: &'static str },
    #[error("generators use the wrong axis convention (expected {expected})")]
    AxisConvention { expected: &'static str },
    #[error("initial tangent is not unit speed: |τ|² = {0}")]
    BadInitialSpeed(f64),
    #[error("ODE denominator vanished at s = {s} (value {value:.3e})")]
    DenominatorBlowup { s: f64, value: f64 },
    #[error("step limit of {0} reached")]
    StepLimit(usize),
    #[error("unknown figure {0} (expected 1..=10)")]
    UnknownFigure(u32),
    #[error("time step {dt} violates the stability bound {bound}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("homothety fit is degenerate: {0}")]
    DegenerateFit(String),
    #[error("point outside the validity domain: {0}")]
    DomainViolation(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
