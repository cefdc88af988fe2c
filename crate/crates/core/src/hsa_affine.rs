//! Subcurves of lines and parabolas as affine images of the whole curve.

use num_traits::{Num, ToPrimitive};

use crate::curve_core::{winding_injectivity_check, Curve};
use crate::equiaffine_esa::equiaffine_reparam;
use crate::error::{CurveError, Result};
use crate::geom::{AffineMap, Mat2, Vec2};
use crate::numeric::linspace;
use crate::scalar::{c, Scalar};

/// Parameters per interval at which the witness identity is checked.
pub const HSA_GRID: usize = 64;

/// Bound on `max |κ^SA| σ_all²` for a curve to be tried as a parabola.
pub const PARABOLA_SCREEN: f64 = 1e-3;

fn empty<T: ToPrimitive>(lo: T, hi: T) -> CurveError {
    CurveError::EmptyInterval {
        lo: lo.to_f64().unwrap_or(f64::NAN),
        hi: hi.to_f64().unwrap_or(f64::NAN),
    }
}

/// The map with `(σ, σ²) = A (t, t²) + b` for `σ = (t1 − t0) t + t0`:
/// `A = [[t1 − t0, 0], [2 t0 (t1 − t0), (t1 − t0)²]]`, `b = (t0, t0²)`.
///
/// Exact in any field, so it can be checked with rationals.
pub fn parabola_subcurve_affine<T>(t0: T, t1: T) -> Result<AffineMap<T>>
where
    T: Num + Copy + PartialOrd + ToPrimitive,
{
    if !(t0 < t1) {
        return Err(empty(t0, t1));
    }
    let d = t1 - t0;
    let two = T::one() + T::one();
    Ok(AffineMap::new(
        Mat2::new(d, T::zero(), two * t0 * d, d * d),
        Vec2::new(t0, t0 * t0),
    ))
}

/// Parallelogram `anchor + λ u + μ v`, `λ, μ ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parallelogram<T> {
    pub anchor: Vec2<T>,
    pub u: Vec2<T>,
    pub v: Vec2<T>,
    /// `u` and `v` are (numerically) parallel.
    pub degenerate: bool,
    /// Whether sampled points of `y = x², a ≤ x ≤ b` all lie inside.
    pub contains_arc: bool,
}

/// The vectors `(b − a, 2ab)` and `(0, (a + b)²)` anchored at `(a, a²)`,
/// with a sampled containment check of the arc of `y = x²` over `[a, b]`.
pub fn bounding_parallelogram<T: Scalar>(a: T, b: T) -> Result<Parallelogram<T>> {
    if !(a < b) {
        return Err(empty(a, b));
    }
    let anchor = Vec2::new(a, a * a);
    let u = Vec2::new(b - a, (a + a) * b);
    let v = Vec2::new(T::zero(), (a + b) * (a + b));
    let cross = u.cross(v);
    let degenerate = !(cross.abs() > T::noise() * u.norm() * v.norm()) || v.norm() == T::zero();
    let contains_arc = !degenerate && {
        let slack = c::<T>(1e-12);
        linspace(a, b, 256).into_iter().all(|x| {
            let w = Vec2::new(x, x * x) - anchor;
            let lam = w.cross(v) / cross;
            let mu = u.cross(w) / cross;
            lam >= -slack && lam <= T::one() + slack && mu >= -slack && mu <= T::one() + slack
        })
    };
    Ok(Parallelogram {
        anchor,
        u,
        v,
        degenerate,
        contains_arc,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsaClass {
    Line,
    Parabola,
    Neither,
}

impl HsaClass {
    pub fn name(self) -> &'static str {
        match self {
            HsaClass::Line => "line",
            HsaClass::Parabola => "parabola",
            HsaClass::Neither => "neither",
        }
    }
}

/// A verified pair: the subcurve on `interval` is `map` applied to the
/// whole curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HsaWitness<T> {
    /// Sub-interval of the normalized domain `[0, 1]`.
    pub interval: (T, T),
    pub map: AffineMap<T>,
    /// `max_t |γ(σ_J(t)) − F_J γ(t)|` relative to the curve's extent.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HsaReport<T> {
    pub holds: bool,
    pub witness_maps: Vec<HsaWitness<T>>,
    pub max_residual: T,
    pub classification: HsaClass,
    /// Whether the tangent turns by less than π.
    pub winding_ok: bool,
    /// `max |κ^SA| σ_all²`, when the parabola stage ran.
    pub affine_curvature: Option<T>,
}

impl<T: Scalar> HsaReport<T> {
    fn neither(winding_ok: bool, affine_curvature: Option<T>) -> Self {
        HsaReport {
            holds: false,
            witness_maps: Vec::new(),
            max_residual: T::infinity(),
            classification: HsaClass::Neither,
            winding_ok,
            affine_curvature,
        }
    }
}

/// A curve written as `G(P(x(t)))` for a standard model `P` and an
/// increasing coordinate `x` with `x(lo) = 0`, `x(hi) = 1`.
struct Normalized<'a, T: Scalar> {
    curve: &'a Curve<T>,
    g: AffineMap<T>,
    g_inv: AffineMap<T>,
}

impl<'a, T: Scalar> Normalized<'a, T> {
    fn coord(&self, t: T) -> T {
        self.g_inv.apply(self.curve.eval(t)).x
    }

    /// Parameter with `coord(t) = x`, by bisection.
    fn param_of(&self, x: T) -> T {
        let (mut a, mut b) = self.curve.domain();
        for _ in 0..200 {
            let m = (a + b) * c(0.5);
            if m <= a || m >= b {
                break;
            }
            if self.coord(m) < x {
                a = m;
            } else {
                b = m;
            }
        }
        (a + b) * c(0.5)
    }

    /// `F_J = G ∘ F ∘ G⁻¹`, with `F` acting on model coordinates.
    fn witness(
        &self,
        interval: (T, T),
        model_map: impl Fn(T, T) -> Result<AffineMap<T>>,
        extent: T,
    ) -> Result<HsaWitness<T>> {
        let (lo, hi) = self.curve.domain();
        let t_of = |u: T| lo + (hi - lo) * u;
        let (x0, x1) = (self.coord(t_of(interval.0)), self.coord(t_of(interval.1)));
        let f = model_map(x0, x1)?;
        let map = self.g.compose(&f).compose(&self.g_inv);
        let mut residual = T::zero();
        for t in linspace(lo, hi, HSA_GRID) {
            let x = (x1 - x0) * self.coord(t) + x0;
            let image = self.curve.eval(self.param_of(x));
            let d = (image - map.apply(self.curve.eval(t))).norm() / extent;
            residual = residual.max(if d.is_nan() { T::infinity() } else { d });
        }
        Ok(HsaWitness {
            interval,
            map,
            residual,
        })
    }
}

/// Affine `G` with `G(0, 0) = γ(lo)`, `G(1, 1) = γ(hi)` and `G(x, x²)`
/// tangent to `γ` at both ends.
fn parabola_normalization<T: Scalar>(curve: &Curve<T>) -> Option<AffineMap<T>> {
    let (lo, hi) = curve.domain();
    let (p0, p1) = (curve.eval(lo), curve.eval(hi));
    let (v0, v1) = (curve.velocity(lo), curve.velocity(hi));
    let d = p1 - p0;
    // col1 = λ v0, col1 + col2 = d, col1 + 2 col2 ∥ v1.
    let lam = (d + d).cross(v1) / v0.cross(v1);
    let col1 = v0.scale(lam);
    let g = AffineMap::new(Mat2::from_cols(col1, d - col1), p0);
    let scale = col1.norm().max((d - col1).norm());
    (g.det().abs() > T::noise() * scale * scale && g.det().is_finite()).then_some(g)
}

/// Affine `G` with `G(0, 0) = γ(lo)`, `G(1, 0) = γ(hi)`.
fn line_normalization<T: Scalar>(curve: &Curve<T>) -> Option<AffineMap<T>> {
    let (lo, hi) = curve.domain();
    let (p0, p1) = (curve.eval(lo), curve.eval(hi));
    let d = p1 - p0;
    (d.norm() > T::zero()).then(|| AffineMap::new(Mat2::from_cols(d, d.perp()), p0))
}

fn line_map<T: Scalar>(x0: T, x1: T) -> Result<AffineMap<T>> {
    if !(x0 < x1) {
        return Err(empty(x0, x1));
    }
    Ok(AffineMap::new(
        Mat2::new(x1 - x0, T::zero(), T::zero(), x1 - x0),
        Vec2::new(x0, T::zero()),
    ))
}

/// Decides whether the curve is a line or a parabola and, if so, checks the
/// subcurve identity `γ(σ_J(t)) = F_J γ(t)` on every interval.
///
/// Intervals are given in the normalized domain `[0, 1]`. A tangent turn of
/// π or more rules the curve out. Parabolas are recognized by vanishing
/// equiaffine curvature; their witnesses are the standard parabola maps
/// conjugated by the affine normalization taking the curve to `y = x²` over
/// `[0, 1]`. `tol` bounds the residual relative to the curve's extent.
pub fn verify_hsa<T: Scalar>(curve: &Curve<T>, intervals: &[(T, T)], tol: T) -> Result<HsaReport<T>> {
    for &(u0, u1) in intervals {
        if !(u0 >= T::zero() && u0 < u1 && u1 <= T::one()) {
            return Err(empty(u0, u1));
        }
    }
    let winding_ok = winding_injectivity_check(curve, 512);
    if !winding_ok {
        return Ok(HsaReport::neither(false, None));
    }
    let extent = curve.extent();
    let (lo, hi) = curve.domain();
    let (p0, p1) = (curve.eval(lo), curve.eval(hi));
    let chord = p1 - p0;
    let straightness = curve
        .polyline(512)
        .into_iter()
        .fold(T::zero(), |m, p| m.max((p - p0).cross(chord).abs()))
        / (chord.norm() * extent);
    if straightness <= tol {
        let g = line_normalization(curve);
        return finish(curve, intervals, tol, HsaClass::Line, g, line_map, extent, None);
    }
    let invariant = match equiaffine_reparam(curve, c(1e-8)) {
        Ok(ec) => {
            let s2 = ec.sigma_all() * ec.sigma_all();
            ec.curvature_samples(HSA_GRID)
                .into_iter()
                .fold(T::zero(), |m, (_, k)| m.max(k.abs()))
                * s2
        }
        Err(_) => return Ok(HsaReport::neither(true, None)),
    };
    if !(invariant <= c(PARABOLA_SCREEN)) {
        return Ok(HsaReport::neither(true, Some(invariant)));
    }
    let g = parabola_normalization(curve);
    finish(
        curve,
        intervals,
        tol,
        HsaClass::Parabola,
        g,
        parabola_subcurve_affine,
        extent,
        Some(invariant),
    )
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Scalar>(
    curve: &Curve<T>,
    intervals: &[(T, T)],
    tol: T,
    class: HsaClass,
    g: Option<AffineMap<T>>,
    model: fn(T, T) -> Result<AffineMap<T>>,
    extent: T,
    affine_curvature: Option<T>,
) -> Result<HsaReport<T>> {
    let Some(g_inv) = g.and_then(|g| g.inverse()) else {
        return Ok(HsaReport::neither(true, affine_curvature));
    };
    let norm = Normalized {
        curve,
        g: g.unwrap(),
        g_inv,
    };
    let mut witness_maps = Vec::with_capacity(intervals.len());
    let mut max_residual = T::zero();
    for &iv in intervals {
        match norm.witness(iv, model, extent) {
            Ok(w) => {
                max_residual = max_residual.max(w.residual);
                witness_maps.push(w);
            }
            Err(_) => return Ok(HsaReport::neither(true, affine_curvature)),
        }
    }
    let holds = max_residual <= tol && witness_maps.iter().all(|w| w.map.det() != T::zero());
    Ok(HsaReport {
        holds,
        witness_maps,
        max_residual,
        classification: if holds { class } else { HsaClass::Neither },
        winding_ok: true,
        affine_curvature,
    })
}
