use crate::curve_core::Curve;
use crate::error::{CurveError, Result};
use crate::geom::{AffineMap, Mat2, Vec2};
use crate::scalar::{c, Scalar};

use super::reparam::{equiaffine_reparam, EquiaffineCurve};

/// Points of the `σ`-grid used for curvature statistics and witness checks.
pub const ESA_GRID: usize = 128;

/// Floor of the parabola dead-band in the affine-invariant units `κ σ_all²`.
pub const ZERO_BAND_FLOOR: f64 = 1e-9;

/// Standard conics: `(t, t²)`, `(A cos t, B sin t)`, `(A cosh t, B sinh t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Conic<T> {
    Parabola,
    Ellipse { a: T, b: T },
    Hyperbola { a: T, b: T },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicFamily {
    Parabola,
    Ellipse,
    Hyperbola,
}

impl ConicFamily {
    pub fn name(self) -> &'static str {
        match self {
            ConicFamily::Parabola => "parabola",
            ConicFamily::Ellipse => "ellipse",
            ConicFamily::Hyperbola => "hyperbola",
        }
    }
}

/// The unimodular map realizing the parameter shift `t ↦ t + ε` on a
/// standard conic.
pub fn esa_witness<T: Scalar>(conic: Conic<T>, eps: T) -> Result<AffineMap<T>> {
    if !eps.is_finite() {
        return Err(CurveError::InvalidParams(format!("shift {eps} is not finite")));
    }
    let check = |a: T, b: T| {
        if a > T::zero() && b > T::zero() && a.is_finite() && b.is_finite() {
            Ok(a / b)
        } else {
            Err(CurveError::InvalidParams(format!(
                "conic axes ({a}, {b}) must be positive"
            )))
        }
    };
    Ok(match conic {
        Conic::Parabola => AffineMap::new(
            Mat2::new(T::one(), T::zero(), eps + eps, T::one()),
            Vec2::new(eps, eps * eps),
        ),
        Conic::Ellipse { a, b } => {
            let r = check(a, b)?;
            let (s, co) = eps.sin_cos();
            AffineMap::linear(Mat2::new(co, -r * s, s / r, co))
        }
        Conic::Hyperbola { a, b } => {
            let r = check(a, b)?;
            let (s, co) = (eps.sinh(), eps.cosh());
            AffineMap::linear(Mat2::new(co, r * s, s / r, co))
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EsaReport<T> {
    pub holds: bool,
    /// Mean equiaffine curvature.
    pub kappa_sa: T,
    /// `max |κ − mean|`.
    pub kappa_sa_spread: T,
    /// Total equiaffine length; `κ σ_all²` is invariant under all affine maps.
    pub sigma_all: T,
    pub family: Option<ConicFamily>,
    /// `max |γ(σ + ε) − F_ε γ(σ)|` relative to the curve's extent.
    pub witness_residual: T,
    pub witnesses: Vec<(T, AffineMap<T>)>,
    pub orientation: T,
}

impl<T: Scalar> EsaReport<T> {
    pub fn invariant_mean(&self) -> T {
        self.kappa_sa * self.sigma_all * self.sigma_all
    }

    pub fn invariant_spread(&self) -> T {
        self.kappa_sa_spread * self.sigma_all * self.sigma_all
    }
}

/// Mean and spread of `κ^SA` on the grid.
pub(crate) fn curvature_stats<T: Scalar>(ec: &EquiaffineCurve<T>) -> (T, T) {
    let ks: Vec<T> = ec.curvature_samples(ESA_GRID).into_iter().map(|p| p.1).collect();
    let mean = ks.iter().copied().fold(T::zero(), |a, b| a + b) / T::from_usize_lossy(ks.len());
    let spread = ks.iter().fold(T::zero(), |m, &k| m.max((k - mean).abs()));
    (mean, spread)
}

/// Sign of the mean curvature outside a dead-band of ten times the spread.
pub(crate) fn family_of<T: Scalar>(mean_inv: T, spread_inv: T) -> ConicFamily {
    let band = c::<T>(10.0) * spread_inv.max(c(ZERO_BAND_FLOOR));
    if mean_inv.abs() <= band {
        ConicFamily::Parabola
    } else if mean_inv > T::zero() {
        ConicFamily::Ellipse
    } else {
        ConicFamily::Hyperbola
    }
}

/// Linear part of the shift by `ε` of the constant-curvature frame equation,
/// in the frame's own coordinates: `exp(ε [[0, −κ], [1, 0]])`.
fn frame_shift<T: Scalar>(family: ConicFamily, kappa: T, eps: T) -> Result<Mat2<T>> {
    Ok(match family {
        // exp(εK) with κ = 0 is the parabola map at shift ε/2.
        ConicFamily::Parabola => esa_witness(Conic::Parabola, eps * c(0.5))?.linear,
        ConicFamily::Ellipse => {
            let w = kappa.sqrt();
            esa_witness(Conic::Ellipse { a: w, b: T::one() }, w * eps)?.linear
        }
        ConicFamily::Hyperbola => {
            let w = (-kappa).sqrt();
            esa_witness(Conic::Hyperbola { a: w, b: T::one() }, w * eps)?.linear
        }
    })
}

/// `∫_0^τ exp(u K) e1 du`: the model curve in frame coordinates.
fn frame_position<T: Scalar>(family: ConicFamily, kappa: T, tau: T) -> Vec2<T> {
    match family {
        ConicFamily::Parabola => Vec2::new(tau, tau * tau * c(0.5)),
        ConicFamily::Ellipse => {
            let w = kappa.sqrt();
            Vec2::new((w * tau).sin() / w, (T::one() - (w * tau).cos()) / kappa)
        }
        ConicFamily::Hyperbola => {
            let w = (-kappa).sqrt();
            Vec2::new((w * tau).sinh() / w, ((w * tau).cosh() - T::one()) / -kappa)
        }
    }
}

/// The shift map `F_ε` of the constant-curvature model through the frame at
/// `sigma0`: `F_ε γ(σ0) = γ̃(σ0 + ε)`.
fn witness_at<T: Scalar>(
    ec: &EquiaffineCurve<T>,
    family: ConicFamily,
    kappa: T,
    sigma0: T,
    eps: T,
) -> Result<AffineMap<T>> {
    let (g1, g2) = ec.frame(sigma0);
    let phi = Mat2::from_cols(g1, g2);
    let phi_inv = phi.inverse().ok_or(CurveError::SingularMatrix { det: 0.0 })?;
    let a = phi.mul(&frame_shift(family, kappa, eps)?).mul(&phi_inv);
    let p0 = ec.point(sigma0);
    let target = p0 + phi.apply(frame_position(family, kappa, eps));
    Ok(AffineMap::new(a, target - a.apply(p0)))
}

/// Checks that `κ^SA` is constant and that every shift in `eps_list` is
/// realized by a unimodular map, `γ(σ + ε) = F_ε γ(σ)`.
///
/// `tol` bounds the spread in the invariant units `κ σ_all²` and the witness
/// residual relative to the curve's extent. Shifts longer than the curve are
/// checked through the model supercurve only at the base point.
pub fn verify_esa<T: Scalar>(curve: &Curve<T>, eps_list: &[T], tol: T) -> Result<EsaReport<T>> {
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > T::zero())) {
        return Err(CurveError::InvalidParams(
            "eps_list must be non-empty and positive".into(),
        ));
    }
    let ec = equiaffine_reparam(curve, c(1e-8))?;
    let (mean, spread) = curvature_stats(&ec);
    let sigma_all = ec.sigma_all();
    let (mean_inv, spread_inv) = (mean * sigma_all * sigma_all, spread * sigma_all * sigma_all);
    let mut report = EsaReport {
        holds: false,
        kappa_sa: mean,
        kappa_sa_spread: spread,
        sigma_all,
        family: None,
        witness_residual: T::infinity(),
        witnesses: Vec::new(),
        orientation: ec.orientation(),
    };
    if !(spread_inv <= tol) {
        return Ok(report);
    }
    let family = family_of(mean_inv, spread_inv);
    let kappa = if family == ConicFamily::Parabola {
        T::zero()
    } else {
        mean
    };
    let extent = curve.extent();
    let (lo, hi) = ec.sigma_range();
    let mut worst = T::zero();
    for &eps in eps_list {
        let f = witness_at(&ec, family, kappa, lo, eps)?;
        // Points whose shift stays on the given curve; beyond it the map
        // defines the extension.
        let span = hi - lo - eps;
        if span > T::zero() {
            for k in 0..=ESA_GRID {
                let s = lo + span * T::from_usize_lossy(k) / T::from_usize_lossy(ESA_GRID);
                let d = (ec.point(s + eps) - f.apply(ec.point(s))).norm() / extent;
                worst = worst.max(if d.is_nan() { T::infinity() } else { d });
            }
        }
        report.witnesses.push((eps, f));
    }
    report.family = Some(family);
    report.witness_residual = worst;
    report.holds = worst <= tol;
    Ok(report)
}
