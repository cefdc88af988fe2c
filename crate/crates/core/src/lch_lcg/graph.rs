use crate::curve_core::{ArcLengthCurve, RadiusJet};
use crate::error::{CurveError, Result};
use crate::scalar::{c, Scalar};

/// Scan resolution for locating extrema of `ρ` and inflections.
pub const MONOTONE_SCAN: usize = 512;

/// Minimum number of LCG samples per segment.
pub const MIN_LCG_SAMPLES: usize = 16;

/// One point of the logarithmic curvature graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LcgSample<T> {
    /// Index into [`LcgPlot::monotone_segments`].
    pub segment: usize,
    pub s: T,
    /// `log|ρ|`.
    pub x: T,
    /// `log|ds/dX|`.
    pub y: T,
    /// `dY/dX = 1 − ρ ρ'' / ρ'²`.
    pub grad: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcgPlot<T> {
    pub samples: Vec<LcgSample<T>>,
    /// Arc-length intervals on which `ρ` is strictly monotone.
    pub monotone_segments: Vec<(T, T)>,
}

impl<T: Scalar> LcgPlot<T> {
    pub fn segment(&self, k: usize) -> impl Iterator<Item = &LcgSample<T>> {
        self.samples.iter().filter(move |p| p.segment == k)
    }
}

pub(crate) fn radius_jet_at<T: Scalar>(curve: &ArcLengthCurve<T>, s: T) -> Option<RadiusJet<T>> {
    curve.jet_at(s).radius_jet()
}

/// `dX/ds = ρ'/ρ`, or `None` at an inflection.
fn log_slope<T: Scalar>(curve: &ArcLengthCurve<T>, s: T) -> Option<T> {
    radius_jet_at(curve, s).map(|j| j.rho_s / j.rho)
}

/// `X_s` scaled to be dimensionless, with values below the noise level
/// reported as zero.
fn slope_sign<T: Scalar>(curve: &ArcLengthCurve<T>, s: T) -> i8 {
    match log_slope(curve, s) {
        Some(g) if (g * curve.s_all()).abs() > c(1e-9) => {
            if g > T::zero() {
                1
            } else {
                -1
            }
        }
        _ => 0,
    }
}

/// Arc-length intervals on which `log|ρ|` is strictly monotone.
///
/// `X_s = ρ'/ρ` is scanned at 513 points; sign changes (extrema of `ρ` and
/// inflections, where `|ρ|` blows up) are refined by bisection. Intervals on
/// which `ρ` is stationary are dropped.
pub fn monotone_segments<T: Scalar>(curve: &ArcLengthCurve<T>) -> Result<Vec<(T, T)>> {
    let (a, b) = curve.s_range();
    let n = MONOTONE_SCAN;
    let grid: Vec<T> = (0..=n)
        .map(|k| a + (b - a) * T::from_usize_lossy(k) / T::from_usize_lossy(n))
        .collect();
    let signs: Vec<i8> = grid.iter().map(|&s| slope_sign(curve, s)).collect();
    let mut cuts = vec![a];
    let mut last: Option<(T, i8)> = None;
    for (&s, &sg) in grid.iter().zip(&signs) {
        if sg == 0 {
            continue;
        }
        if let Some((s0, sg0)) = last {
            if sg0 != sg {
                cuts.push(bisect_sign(curve, s0, sg0, s));
            }
        }
        last = Some((s, sg));
    }
    cuts.push(b);
    let mut segments = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if !(hi > lo) {
            continue;
        }
        let inside: Vec<i8> = grid
            .iter()
            .zip(&signs)
            .filter(|(&s, _)| s > lo && s < hi)
            .map(|(_, &sg)| sg)
            .collect();
        let mid = slope_sign(curve, (lo + hi) * c(0.5));
        if inside.iter().all(|&sg| sg == 0) && mid == 0 {
            continue;
        }
        segments.push((lo, hi));
    }
    if segments.is_empty() {
        return Err(CurveError::NoMonotoneSegment);
    }
    Ok(segments)
}

fn bisect_sign<T: Scalar>(curve: &ArcLengthCurve<T>, mut lo: T, sg_lo: i8, mut hi: T) -> T {
    let tol = curve.s_all() * T::epsilon() * c(16.0);
    for _ in 0..100 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * c(0.5);
        match slope_sign(curve, mid) {
            0 => return mid,
            sg if sg == sg_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo + hi) * c(0.5)
}

/// Samples the LCG at `n_samples` cell-centred arc-length points per
/// monotone segment.
pub fn compute_lcg<T: Scalar>(curve: &ArcLengthCurve<T>, n_samples: usize) -> Result<LcgPlot<T>> {
    if n_samples < MIN_LCG_SAMPLES {
        return Err(CurveError::InsufficientSamples {
            got: n_samples,
            min: MIN_LCG_SAMPLES,
        });
    }
    let monotone_segments = monotone_segments(curve)?;
    let mut samples = Vec::with_capacity(n_samples * monotone_segments.len());
    let n = T::from_usize_lossy(n_samples);
    for (k, &(lo, hi)) in monotone_segments.iter().enumerate() {
        for i in 0..n_samples {
            let s = lo + (hi - lo) * (T::from_usize_lossy(i) + c(0.5)) / n;
            if let Some(j) = radius_jet_at(curve, s) {
                samples.push(LcgSample {
                    segment: k,
                    s,
                    x: j.rho.abs().ln(),
                    y: (j.rho / j.rho_s).abs().ln(),
                    grad: T::one() - j.rho * j.rho_ss / (j.rho_s * j.rho_s),
                });
            }
        }
    }
    Ok(LcgPlot {
        samples,
        monotone_segments,
    })
}

/// `dY/dX = 1 − ρ ρ'' / ρ'²` at arc length `s`.
pub fn lcg_gradient<T: Scalar>(curve: &ArcLengthCurve<T>, s: T) -> Result<T> {
    let j = radius_jet_at(curve, s).ok_or(CurveError::InfiniteRadius { s: s.to_f64_lossy() })?;
    if !((j.rho_s * curve.s_all()).abs() > c::<T>(1e-9) * j.rho.abs()) {
        return Err(CurveError::StationaryRadius { s: s.to_f64_lossy() });
    }
    Ok(T::one() - j.rho * j.rho_ss / (j.rho_s * j.rho_s))
}
