use crate::error::{CurveError, Result};
use crate::geom::Vec2;
use crate::numeric::quadrature::{integrate_pieces, CumulativeMap};
use crate::scalar::{c, Scalar};

use super::curve::Curve;
use super::jet::{Jet, Radius};

/// Default relative tolerance of the arc-length quadrature.
pub const ARC_LENGTH_TOL: f64 = 1e-10;

/// A curve together with its arc-length function `s(t) = ∫_η^t |γ'|`.
#[derive(Clone, Debug)]
pub struct ArcLengthCurve<T: Scalar> {
    curve: Curve<T>,
    map: CumulativeMap<T>,
    s_lo: T,
    s_hi: T,
}

/// Builds the arc-length parameterization by adaptive quadrature and checks
/// `|dγ/ds| = 1` within `tol` at the curve's checkpoints.
pub fn arc_length_reparam<T: Scalar>(curve: &Curve<T>, tol: T) -> Result<ArcLengthCurve<T>> {
    let floor = curve.regularity_floor();
    for &t in &curve.checkpoint_params(SCAN_CHECK) {
        let speed = curve.speed(t);
        if !(speed > floor) {
            return Err(CurveError::DegenerateCurve {
                t: t.to_f64_lossy(),
                speed: speed.to_f64_lossy(),
                floor: floor.to_f64_lossy(),
            });
        }
    }
    let quad_tol = (tol * c(1e-2)).min(c(ARC_LENGTH_TOL)).max(T::epsilon() * c(16.0));
    let speed = |t: T| curve.speed(t);
    let map = CumulativeMap::build(&speed, curve.breakpoints(), curve.base_point(), quad_tol);
    let arc = ArcLengthCurve {
        s_lo: map.lower(),
        s_hi: map.upper(),
        curve: curve.clone(),
        map,
    };
    let defect = arc.unit_speed_defect(64);
    if !(defect <= tol) {
        return Err(CurveError::QuadratureTolerance {
            defect: defect.to_f64_lossy(),
            tol: tol.to_f64_lossy(),
        });
    }
    Ok(arc)
}

const SCAN_CHECK: usize = 512;

impl<T: Scalar> ArcLengthCurve<T> {
    /// Arc-length parameterization with the default tolerance.
    pub fn new(curve: &Curve<T>) -> Result<Self> {
        arc_length_reparam(curve, c(1e-8))
    }

    pub fn curve(&self) -> &Curve<T> {
        &self.curve
    }

    pub fn s_all(&self) -> T {
        self.s_hi - self.s_lo
    }

    /// `(s(t_lo), s(t_hi))`; the lower end is `≤ 0` and the upper `≥ 0`.
    pub fn s_range(&self) -> (T, T) {
        (self.s_lo, self.s_hi)
    }

    pub fn s_of_t(&self, t: T) -> T {
        let (lo, hi) = self.curve.domain();
        if t <= lo {
            return self.s_lo;
        }
        if t >= hi {
            return self.s_hi;
        }
        self.map.value(&|u| self.curve.speed(u), t)
    }

    pub fn t_of_s(&self, s: T) -> T {
        let (lo, hi) = self.curve.domain();
        if s <= self.s_lo {
            return lo;
        }
        if s >= self.s_hi {
            return hi;
        }
        self.map.inverse(&|u| self.curve.speed(u), s).max(lo).min(hi)
    }

    pub fn point(&self, s: T) -> Vec2<T> {
        self.curve.eval(self.t_of_s(s))
    }

    /// Parameter-space jet at arc length `s`.
    pub fn jet_at(&self, s: T) -> Jet<T> {
        self.curve.jet(self.t_of_s(s))
    }

    pub fn radius(&self, s: T) -> Radius<T> {
        self.curve.radius(self.t_of_s(s))
    }

    /// Largest deviation of `|dγ/ds|` from 1 seen at `n + 1` checkpoints.
    ///
    /// On each cell between consecutive checkpoints the mapped length
    /// `s(t_{k+1}) − s(t_k)` is compared with a direct quadrature of
    /// `|γ'|` at the build tolerance; the inverse map is checked by the round trip `s(t(s)) = s`.
    pub fn unit_speed_defect(&self, n: usize) -> T {
        let ts = self.curve.checkpoint_params(n);
        let speed = |u: T| self.curve.speed(u);
        // Sampled speeds carry finite-difference noise well above ε, so the
        // direct sums run at the build tolerance, split at the smooth pieces.
        let tight = self.map.rel_tol();
        let breaks = self.curve.breakpoints();
        let mut worst = T::zero();
        for w in ts.windows(2) {
            let (s0, s1) = (self.s_of_t(w[0]), self.s_of_t(w[1]));
            let direct = integrate_pieces(&speed, w[0], w[1], &breaks, tight);
            if direct > T::zero() {
                worst = worst.max(((s1 - s0) / direct - T::one()).abs());
                let mid = (s0 + s1) * c(0.5);
                let back = self.s_of_t(self.t_of_s(mid));
                worst = worst.max((back - mid).abs() / direct);
            }
        }
        worst
    }
}
