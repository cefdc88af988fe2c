use thiserror::Error;

/// Errors raised by the curve operations.
///
/// Parameters are reported as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("degenerate curve: speed {speed:e} below regularity floor {floor:e} at t = {t}")]
    DegenerateCurve { t: f64, speed: f64, floor: f64 },
    #[error("invalid curve definition: {0}")]
    InvalidCurve(String),
    #[error("parameter {t} outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("integrator needs at least {min} steps, got {steps}")]
    InvalidSteps { steps: usize, min: usize },
    #[error("affine map is singular (det = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("arc-length map misses unit speed by {defect:e} (tolerance {tol:e})")]
    QuadratureTolerance { defect: f64, tol: f64 },
    #[error("curvature radius is infinite (inflection) at s = {s}")]
    InfiniteRadius { s: f64 },
    #[error("log curvature radius range {range:e} is degenerate")]
    DegenerateRange { range: f64 },
    #[error("curvature radius is stationary on the whole curve; no monotone segment")]
    NoMonotoneSegment,
    #[error("curvature radius is stationary at s = {s}")]
    StationaryRadius { s: f64 },
    #[error("curvature radius is not monotone (extremum near s = {s})")]
    NonMonotoneRadius { s: f64 },
    #[error("xi * s + eta = {value} < 0 at s = {s}")]
    DomainViolation { s: f64, value: f64 },
    #[error("reparameterization undefined for eta = 0 with alpha != 0")]
    ZeroEta,
    #[error("need at least {min} samples, got {got}")]
    InsufficientSamples { got: usize, min: usize },
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("det(γ', γ'') vanishes near t = {t}; no equiaffine parameter")]
    InflectionInDomain { t: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;
