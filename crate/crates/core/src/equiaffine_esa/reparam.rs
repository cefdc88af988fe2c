use std::sync::Arc;

use crate::curve_core::{trace_curve, ConstantLaw, Curve, FrameGeometry, Jet};
use crate::error::{CurveError, Result};
use crate::geom::Vec2;
use crate::numeric::quadrature::{integrate_pieces, CumulativeMap};
use crate::scalar::{c, Scalar};

/// Scan resolution for inflection detection and verification.
const SCAN: usize = 512;

/// A curve with its equiaffine parameter `σ(t) = ∫ |det(γ', γ'')|^{1/3}`.
///
/// In `σ` the frame `(γ_σ, γ_σσ)` has determinant `orientation = ±1`; the
/// curvature reported is that of the mirror image when `orientation = −1`,
/// so it satisfies `γ_σσσ = −κ γ_σ` in both cases.
#[derive(Clone, Debug)]
pub struct EquiaffineCurve<T: Scalar> {
    curve: Curve<T>,
    map: CumulativeMap<T>,
    sigma_lo: T,
    sigma_hi: T,
    orientation: T,
}

/// `(D, E, F, G) = (det(γ',γ''), det(γ',γ'''), det(γ'',γ'''), det(γ',γ''''))`.
fn dets<T: Scalar>(j: &Jet<T>) -> (T, T, T, T) {
    (j.d1.cross(j.d2), j.d1.cross(j.d3), j.d2.cross(j.d3), j.d1.cross(j.d4))
}

/// Equiaffine curvature from parameter-space derivatives:
/// `κ = (12 F D + 3 G D − 5 E²) / (9 |D|^{8/3})`.
pub(crate) fn kappa_from_jet<T: Scalar>(j: &Jet<T>) -> T {
    let (d, e, f, g) = dets(j);
    let num = c::<T>(12.0) * f * d + c::<T>(3.0) * g * d - c::<T>(5.0) * e * e;
    num / (c::<T>(9.0) * d.abs().powf(c(8.0 / 3.0)))
}

fn density<T: Scalar>(curve: &Curve<T>, t: T) -> T {
    let j = curve.jet(t);
    j.d1.cross(j.d2).abs().cbrt()
}

/// Builds the equiaffine parameterization and checks `det(γ_σ, γ_σσ) = ±1`
/// by comparing the tabulated `σ` against direct quadrature cell by cell.
pub fn equiaffine_reparam<T: Scalar>(curve: &Curve<T>, tol: T) -> Result<EquiaffineCurve<T>> {
    let extent = curve.extent();
    let mut sign = T::zero();
    for t in curve.checkpoint_params(SCAN) {
        let j = curve.jet(t);
        let det = j.d1.cross(j.d2);
        let speed = j.d1.norm();
        // |det| / speed³ is the Euclidean curvature.
        let floor = c::<T>(1e-9) * speed * speed * speed / extent;
        if !(det.abs() > floor) || (sign != T::zero() && det.signum() != sign) {
            return Err(CurveError::InflectionInDomain { t: t.to_f64_lossy() });
        }
        sign = det.signum();
    }
    let quad_tol = (tol * c(1e-2)).min(c(1e-10)).max(T::epsilon() * c(16.0));
    let f = |t: T| density(curve, t);
    let map = CumulativeMap::build(&f, curve.breakpoints(), curve.base_point(), quad_tol);
    let ec = EquiaffineCurve {
        sigma_lo: map.lower(),
        sigma_hi: map.upper(),
        curve: curve.clone(),
        map,
        orientation: sign,
    };
    let defect = ec.parameter_defect(64);
    if !(defect <= tol) {
        return Err(CurveError::QuadratureTolerance {
            defect: defect.to_f64_lossy(),
            tol: tol.to_f64_lossy(),
        });
    }
    Ok(ec)
}

impl<T: Scalar> EquiaffineCurve<T> {
    pub fn underlying(&self) -> &Curve<T> {
        &self.curve
    }

    /// Sign of `det(γ_t, γ_tt)` on the original parameterization.
    pub fn orientation(&self) -> T {
        self.orientation
    }

    pub fn sigma_range(&self) -> (T, T) {
        (self.sigma_lo, self.sigma_hi)
    }

    pub fn sigma_all(&self) -> T {
        self.sigma_hi - self.sigma_lo
    }

    pub fn sigma_of_t(&self, t: T) -> T {
        self.map.value(&|u| density(&self.curve, u), t)
    }

    pub fn t_of_sigma(&self, sigma: T) -> T {
        let (lo, hi) = self.curve.domain();
        if sigma <= self.sigma_lo {
            return lo;
        }
        if sigma >= self.sigma_hi {
            return hi;
        }
        self.map.inverse(&|u| density(&self.curve, u), sigma).max(lo).min(hi)
    }

    pub fn point(&self, sigma: T) -> Vec2<T> {
        self.curve.eval(self.t_of_sigma(sigma))
    }

    /// `(γ_σ, γ_σσ)`, with determinant `orientation`.
    pub fn frame(&self, sigma: T) -> (Vec2<T>, Vec2<T>) {
        let j = self.curve.jet(self.t_of_sigma(sigma));
        let (d, e, _, _) = dets(&j);
        let sp = d.abs().cbrt();
        // σ'' = σ' D' / (3 D)
        let spp = sp * e / (c::<T>(3.0) * d);
        let g1 = j.d1.scale(sp.recip());
        let g2 = (j.d2.scale(sp) - j.d1.scale(spp)).scale((sp * sp * sp).recip());
        (g1, g2)
    }

    /// Equiaffine curvature at `σ`.
    pub fn curvature(&self, sigma: T) -> T {
        kappa_from_jet(&self.curve.jet(self.t_of_sigma(sigma)))
    }

    /// Curvature at `n + 1` equally spaced values of `σ`.
    pub fn curvature_samples(&self, n: usize) -> Vec<(T, T)> {
        (0..=n)
            .map(|k| {
                let s = self.sigma_lo + self.sigma_all() * T::from_usize_lossy(k) / T::from_usize_lossy(n);
                (s, self.curvature(s))
            })
            .collect()
    }

    fn parameter_defect(&self, n: usize) -> T {
        let ts = self.curve.checkpoint_params(n);
        let f = |u: T| density(&self.curve, u);
        let tight = self.map.rel_tol();
        let breaks = self.curve.breakpoints();
        let mut worst = T::zero();
        for w in ts.windows(2) {
            let (s0, s1) = (self.sigma_of_t(w[0]), self.sigma_of_t(w[1]));
            let direct = integrate_pieces(&f, w[0], w[1], &breaks, tight);
            if direct > T::zero() {
                worst = worst.max(((s1 - s0) / direct - T::one()).abs());
                let mid = (s0 + s1) * c(0.5);
                worst = worst.max((self.sigma_of_t(self.t_of_sigma(mid)) - mid).abs() / direct);
            }
        }
        worst
    }
}

/// `κ^SA` as a function of `σ` on an equiaffine curve.
pub fn equiaffine_curvature<T: Scalar>(ecurve: &EquiaffineCurve<T>, sigma: T) -> Result<T> {
    let (lo, hi) = ecurve.sigma_range();
    let slack = (hi - lo) * T::noise();
    if !(sigma >= lo - slack && sigma <= hi + slack) {
        return Err(CurveError::OutOfDomain {
            t: sigma.to_f64_lossy(),
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    Ok(ecurve.curvature(sigma))
}

/// Integrates `Φ' = Φ [[0, −κ], [1, 0]]` with constant `κ` from the
/// identity frame at the origin, on `σ ∈ [0, sigma_range]`.
pub fn reconstruct_equiaffine<T: Scalar>(kappa_sa: T, sigma_range: T, steps: usize) -> Result<Curve<T>> {
    trace_curve(
        FrameGeometry::Equiaffine,
        Arc::new(ConstantLaw(kappa_sa)),
        T::zero(),
        sigma_range,
        steps,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_core::Analytic;

    #[test]
    fn circle_under_nonuniform_parameter() {
        #[derive(Debug)]
        struct Warped;
        impl crate::curve_core::Parametric<f64> for Warped {
            fn jet(&self, t: f64) -> Jet<f64> {
                // (cos u, sin u) with u = t + t²/2: u' = 1 + t, u'' = 1.
                let (u, u1) = (t + 0.5 * t * t, 1.0 + t);
                let (s, c) = u.sin_cos();
                let e = Vec2::new(c, s);
                let n = Vec2::new(-s, c);
                Jet {
                    p: e,
                    d1: n.scale(u1),
                    d2: n.scale(1.0) - e.scale(u1 * u1),
                    d3: e.scale(-3.0 * u1) - n.scale(u1 * u1 * u1),
                    d4: e.scale(-3.0 + u1.powi(4)) - n.scale(6.0 * u1 * u1),
                }
            }
        }
        let curve = Curve::custom(Arc::new(Warped), (0.0, 1.0), 0.0).unwrap();
        for t in [0.0, 0.4, 1.0] {
            assert!((kappa_from_jet(&curve.jet(t)) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn parabola_parameter() {
        let c = Curve::analytic(Analytic::Parabola { a: 1.0, b: 1.0 }, (0.0, 2.0), 0.0).unwrap();
        let e = equiaffine_reparam(&c, 1e-8).unwrap();
        assert!((e.sigma_of_t(1.5) - 2f64.cbrt() * 1.5).abs() < 1e-12);
        let (g1, g2) = e.frame(1.0);
        assert!((g1.cross(g2) - 1.0).abs() < 1e-12);
    }
}
