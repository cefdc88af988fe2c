use std::sync::Arc;

use crate::error::{CurveError, Result};
use crate::geom::AffineMap;
use crate::numeric::linspace;
use crate::scalar::{c, Scalar};

use super::curve::Curve;
use super::jet::Radius;
use super::trace::{CurvatureLaw, FrameGeometry, FrameTrace};

/// Minimum number of integration steps accepted by the reconstructions.
pub const MIN_STEPS: usize = 100;

/// Signed curvature radius `|γ'|³ / det(γ', γ'')` at `t`.
pub fn curvature_radius<T: Scalar>(curve: &Curve<T>, t: T) -> Result<Radius<T>> {
    curve.check_param(t)?;
    Ok(curve.radius(t))
}

/// Integrates the Euclidean Frenet equations from `γ(0) = 0`, `γ'(0) = (1, 0)`
/// on `[0, s_all]`.
pub fn reconstruct_from_curvature<T: Scalar>(
    kappa: impl CurvatureLaw<T> + 'static,
    s_all: T,
    steps: usize,
) -> Result<Curve<T>> {
    reconstruct_on(Arc::new(kappa), T::zero(), s_all, steps)
}

/// As [`reconstruct_from_curvature`] but on `[s_lo, s_hi]`, starting from the
/// origin at `s_lo`. The base point is `s = 0` when it lies in the range.
pub fn reconstruct_on<T: Scalar>(kappa: Arc<dyn CurvatureLaw<T>>, s_lo: T, s_hi: T, steps: usize) -> Result<Curve<T>> {
    trace_curve(FrameGeometry::Euclidean, kappa, s_lo, s_hi, steps)
}

pub(crate) fn trace_curve<T: Scalar>(
    geometry: FrameGeometry,
    kappa: Arc<dyn CurvatureLaw<T>>,
    s_lo: T,
    s_hi: T,
    steps: usize,
) -> Result<Curve<T>> {
    if steps < MIN_STEPS {
        return Err(CurveError::InvalidSteps { steps, min: MIN_STEPS });
    }
    if !(s_hi > s_lo) || !s_lo.is_finite() || !s_hi.is_finite() {
        return Err(CurveError::InvalidParams(format!(
            "integration range [{s_lo}, {s_hi}] is empty"
        )));
    }
    let trace = FrameTrace::integrate(geometry, kappa, s_lo, s_hi, steps);
    let base = if s_lo <= T::zero() && s_hi >= T::zero() {
        T::zero()
    } else {
        s_lo
    };
    Curve::from_trace(trace, base)
}

/// Image of `curve` under `z ↦ A z + b`.
pub fn apply_affine<T: Scalar>(curve: &Curve<T>, map: &AffineMap<T>) -> Result<Curve<T>> {
    let det = map.det();
    let floor = c::<T>(1e-12) * map.linear.max_abs().powi(2);
    if !(det.abs() > floor) || !det.is_finite() {
        return Err(CurveError::SingularMatrix {
            det: det.to_f64_lossy(),
        });
    }
    Ok(curve.affine_image(*map))
}

/// Whether the tangent direction turns by less than π over the curve,
/// sampled at `n + 1` points. A turn of π or more makes the gradient
/// `dy/dx` non-injective in every frame.
pub fn winding_injectivity_check<T: Scalar>(curve: &Curve<T>, n: usize) -> bool {
    let (lo, hi) = curve.domain();
    let mut prev = curve.velocity(lo).angle();
    let (mut theta, mut min, mut max) = (prev, prev, prev);
    let pi = T::PI();
    for t in linspace(lo, hi, n.max(2)).into_iter().skip(1) {
        let a = curve.velocity(t).angle();
        let mut d = a - prev;
        while d > pi {
            d -= pi + pi;
        }
        while d < -pi {
            d += pi + pi;
        }
        theta += d;
        min = min.min(theta);
        max = max.max(theta);
        prev = a;
    }
    max - min < pi
}
