use std::fmt;
use std::sync::Arc;

use crate::error::{CurveError, Result};
use crate::geom::{AffineMap, Vec2};
use crate::numeric::linspace;
use crate::scalar::{c, Scalar};

use super::analytic::Analytic;
use super::jet::{Jet, Radius};
use super::sampled::SampledCurve;
use super::trace::FrameTrace;

/// Number of scan points used for regularity and extent checks.
pub(crate) const SCAN: usize = 512;

/// User-supplied parametric curve with analytic derivatives.
pub trait Parametric<T: Scalar>: Send + Sync + fmt::Debug {
    fn jet(&self, t: T) -> Jet<T>;
}

#[derive(Clone, Debug)]
pub enum CurveKind<T: Scalar> {
    Analytic(Analytic<T>),
    Sampled(Arc<SampledCurve<T>>),
    Trace(Arc<FrameTrace<T>>),
    Custom(Arc<dyn Parametric<T>>),
    /// Image of another curve under an affine map.
    Affine(Arc<Curve<T>>, AffineMap<T>),
}

/// A regular parametric planar curve on `[t_lo, t_hi]` with a base point.
#[derive(Clone, Debug)]
pub struct Curve<T: Scalar> {
    kind: CurveKind<T>,
    lo: T,
    hi: T,
    base: T,
}

impl<T: Scalar> Curve<T> {
    fn build(kind: CurveKind<T>, lo: T, hi: T, base: T) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CurveError::InvalidCurve(format!(
                "domain [{lo}, {hi}] is empty or not finite"
            )));
        }
        if !(base >= lo && base <= hi) {
            return Err(CurveError::InvalidCurve(format!(
                "base point {base} outside [{lo}, {hi}]"
            )));
        }
        let curve = Curve { kind, lo, hi, base };
        curve.check_regular()?;
        Ok(curve)
    }

    pub fn analytic(a: Analytic<T>, domain: (T, T), base: T) -> Result<Self> {
        Self::build(CurveKind::Analytic(a), domain.0, domain.1, base)
    }

    /// Sampled curve on the sample range; the base point defaults to the first sample.
    pub fn sampled(t: Vec<T>, pts: Vec<Vec2<T>>, base: Option<T>) -> Result<Self> {
        let s = SampledCurve::new(t, pts)?;
        let (lo, hi) = (s.params()[0], *s.params().last().unwrap());
        Self::build(CurveKind::Sampled(Arc::new(s)), lo, hi, base.unwrap_or(lo))
    }

    pub fn custom(p: Arc<dyn Parametric<T>>, domain: (T, T), base: T) -> Result<Self> {
        Self::build(CurveKind::Custom(p), domain.0, domain.1, base)
    }

    pub(crate) fn from_trace(trace: FrameTrace<T>, base: T) -> Result<Self> {
        let (lo, hi) = trace.domain();
        Self::build(CurveKind::Trace(Arc::new(trace)), lo, hi, base)
    }

    pub(crate) fn affine_image(&self, map: AffineMap<T>) -> Self {
        let kind = match &self.kind {
            CurveKind::Affine(inner, m) => CurveKind::Affine(inner.clone(), map.compose(m)),
            _ => CurveKind::Affine(Arc::new(self.clone()), map),
        };
        Curve { kind, ..self.clone() }
    }

    pub fn kind(&self) -> &CurveKind<T> {
        &self.kind
    }

    pub fn domain(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn base_point(&self) -> T {
        self.base
    }

    /// Same curve on a sub-interval of the parameter domain; the base point
    /// is clamped into the new domain.
    pub fn restrict(&self, lo: T, hi: T) -> Result<Self> {
        let slack = (self.hi - self.lo) * T::noise();
        if lo < self.lo - slack || hi > self.hi + slack {
            return Err(CurveError::OutOfDomain {
                t: if lo < self.lo { lo } else { hi }.to_f64_lossy(),
                lo: self.lo.to_f64_lossy(),
                hi: self.hi.to_f64_lossy(),
            });
        }
        let (lo, hi) = (lo.max(self.lo), hi.min(self.hi));
        Self::build(self.kind.clone(), lo, hi, self.base.max(lo).min(hi))
    }

    pub fn with_base_point(&self, base: T) -> Result<Self> {
        Self::build(self.kind.clone(), self.lo, self.hi, base)
    }

    pub fn jet(&self, t: T) -> Jet<T> {
        match &self.kind {
            CurveKind::Analytic(a) => a.jet(t),
            CurveKind::Sampled(s) => s.jet(t),
            CurveKind::Trace(tr) => tr.jet(t),
            CurveKind::Custom(p) => p.jet(t),
            CurveKind::Affine(inner, m) => inner.jet(t).map(m),
        }
    }

    pub fn eval(&self, t: T) -> Vec2<T> {
        self.jet(t).p
    }

    pub fn velocity(&self, t: T) -> Vec2<T> {
        match &self.kind {
            CurveKind::Analytic(Analytic::Clothoid { a }) => Vec2::from_angle(*a * t * t),
            CurveKind::Affine(inner, m) => m.apply_vector(inner.velocity(t)),
            _ => self.jet(t).d1,
        }
    }

    pub fn speed(&self, t: T) -> T {
        self.velocity(t).norm()
    }

    /// Signed curvature radius at `t` (no domain check).
    pub fn radius(&self, t: T) -> Radius<T> {
        self.jet(t).radius()
    }

    pub fn is_sampled(&self) -> bool {
        match &self.kind {
            CurveKind::Sampled(_) => true,
            CurveKind::Affine(inner, _) => inner.is_sampled(),
            _ => false,
        }
    }

    /// Finite-difference stencil width for sampled curves.
    pub fn stencil_width(&self) -> Option<usize> {
        match &self.kind {
            CurveKind::Sampled(s) => Some(s.stencil_width()),
            CurveKind::Affine(inner, _) => inner.stencil_width(),
            _ => None,
        }
    }

    /// Sample parameters inside the domain, if the curve is sampled.
    pub fn sample_params(&self) -> Option<Vec<T>> {
        match &self.kind {
            CurveKind::Sampled(s) => Some(
                s.params()
                    .iter()
                    .copied()
                    .filter(|&t| t >= self.lo && t <= self.hi)
                    .collect(),
            ),
            CurveKind::Affine(inner, _) => inner
                .sample_params()
                .map(|v| v.into_iter().filter(|&t| t >= self.lo && t <= self.hi).collect()),
            _ => None,
        }
    }

    /// Parameters splitting the domain into pieces on which the curve is smooth.
    pub fn breakpoints(&self) -> Vec<T> {
        if let Some(nodes) = self.sample_params() {
            let mut out = vec![self.lo];
            let half = c::<T>(0.5);
            let mut prev = self.lo;
            for &t in nodes.iter().chain(std::iter::once(&self.hi)) {
                if t > prev {
                    let mid = (prev + t) * half;
                    if mid > *out.last().unwrap() {
                        out.push(mid);
                    }
                    out.push(t);
                    prev = t;
                }
            }
            out.dedup();
            return out;
        }
        linspace(self.lo, self.hi, 64)
    }

    /// Parameters at which derived quantities are checked: the sample nodes
    /// for sampled curves, otherwise `n + 1` equally spaced points.
    pub fn checkpoint_params(&self, n: usize) -> Vec<T> {
        self.sample_params().unwrap_or_else(|| linspace(self.lo, self.hi, n))
    }

    /// Points on the scan grid.
    pub fn polyline(&self, n: usize) -> Vec<Vec2<T>> {
        linspace(self.lo, self.hi, n)
            .into_iter()
            .map(|t| self.eval(t))
            .collect()
    }

    /// Diameter of the bounding box of the scanned points.
    pub fn extent(&self) -> T {
        let pts = self.polyline(SCAN);
        let (mut x0, mut x1, mut y0, mut y1) = (T::infinity(), T::neg_infinity(), T::infinity(), T::neg_infinity());
        for p in pts {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        (x1 - x0).hypot(y1 - y0)
    }

    /// Speed below which the parameterization counts as degenerate.
    pub fn regularity_floor(&self) -> T {
        c::<T>(1e-12) * self.extent() / (self.hi - self.lo)
    }

    fn check_regular(&self) -> Result<()> {
        let pts = linspace(self.lo, self.hi, SCAN);
        let floor = self.regularity_floor();
        for t in pts {
            let v = self.velocity(t);
            let speed = v.norm();
            if !v.is_finite() || !(speed > floor) || !self.eval(t).is_finite() {
                return Err(CurveError::DegenerateCurve {
                    t: t.to_f64_lossy(),
                    speed: speed.to_f64_lossy(),
                    floor: floor.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_param(&self, t: T) -> Result<()> {
        let slack = (self.hi - self.lo) * T::noise();
        if t >= self.lo - slack && t <= self.hi + slack {
            Ok(())
        } else {
            Err(CurveError::OutOfDomain {
                t: t.to_f64_lossy(),
                lo: self.lo.to_f64_lossy(),
                hi: self.hi.to_f64_lossy(),
            })
        }
    }
}
