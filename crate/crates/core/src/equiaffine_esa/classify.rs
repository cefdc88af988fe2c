use crate::curve_core::{apply_affine, arc_length_reparam, Curve};
use crate::geom::{AffineMap, Mat2};
use crate::lac_msa::{verify_msa, LacFamily, LacParams, MsaReport};
use crate::scalar::{c, Scalar};

use super::esa::{verify_esa, ConicFamily, EsaReport};

/// Tolerances and shift lists for [`classify_curve`]. All are in the units
/// of the curve scaled to unit diameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyTols<T> {
    /// Arc-length quadrature tolerance.
    pub arc_length: T,
    /// Residual bound for the similarity-geometry test.
    pub msa: T,
    pub msa_beta: T,
    pub msa_eps: Vec<T>,
    /// Bound on the invariant spread `κ σ_all²` and the witness residual.
    pub esa: T,
    pub esa_eps: Vec<T>,
}

impl<T: Scalar> Default for ClassifyTols<T> {
    fn default() -> Self {
        ClassifyTols {
            arc_length: c(1e-6),
            msa: c(1e-4),
            msa_beta: T::one(),
            msa_eps: vec![c(0.01), c(0.02), c(0.05)],
            esa: c(1e-3),
            esa_eps: vec![c(0.05), c(0.1)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveClass<T> {
    Line,
    Circle { radius: T },
    Lac(LacParams<T>),
    Parabola,
    Ellipse,
    Hyperbola,
    Other,
}

impl<T> CurveClass<T> {
    pub fn name(&self) -> &'static str {
        match self {
            CurveClass::Line => "line",
            CurveClass::Circle { .. } => "circle",
            CurveClass::Lac(_) => "lac",
            CurveClass::Parabola => "parabola",
            CurveClass::Ellipse => "ellipse",
            CurveClass::Hyperbola => "hyperbola",
            CurveClass::Other => "other",
        }
    }
}

/// Outcome of [`classify_curve`] with the reports of every stage that ran.
/// Report quantities refer to the curve scaled to unit diameter; the class
/// parameters are in the original units.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<T> {
    pub class: CurveClass<T>,
    pub scale: T,
    pub msa: Option<MsaReport<T>>,
    pub esa: Option<EsaReport<T>>,
    /// Errors raised by stages that could not run.
    pub notes: Vec<String>,
}

/// LAC parameters after scaling the plane by `k`.
fn rescale<T: Scalar>(p: LacParams<T>, k: T) -> LacParams<T> {
    let domain = (p.domain.0 * k, p.domain.1 * k);
    if p.alpha == T::zero() {
        return LacParams {
            xi: p.xi / k,
            eta: p.eta + k.ln(),
            domain,
            ..p
        };
    }
    LacParams {
        xi: p.xi * k.powf(p.alpha - T::one()),
        eta: p.eta * k.powf(p.alpha),
        domain,
        ..p
    }
}

/// Runs the similarity-geometry test (line, circle, LAC) and then the
/// equiaffine one (parabola, ellipse, hyperbola) on the curve scaled to unit
/// diameter.
pub fn classify_curve<T: Scalar>(curve: &Curve<T>, tols: &ClassifyTols<T>) -> Classification<T> {
    let mut out = Classification {
        class: CurveClass::Other,
        scale: T::one(),
        msa: None,
        esa: None,
        notes: Vec::new(),
    };
    let extent = curve.extent();
    if !(extent > T::zero()) || !extent.is_finite() {
        out.notes.push(format!("curve extent {extent} is degenerate"));
        return out;
    }
    out.scale = extent;
    let k = extent.recip();
    let unit = match apply_affine(curve, &AffineMap::linear(Mat2::diag(k, k))) {
        Ok(u) => u,
        Err(e) => {
            out.notes.push(format!("normalization: {e}"));
            return out;
        }
    };
    match arc_length_reparam(&unit, tols.arc_length)
        .and_then(|arc| verify_msa(&arc, tols.msa_beta, &tols.msa_eps, tols.msa))
    {
        Ok(rep) => {
            if rep.holds {
                out.class = match rep.fitted {
                    Some(LacFamily::Line) => CurveClass::Line,
                    Some(LacFamily::Circle { radius }) => CurveClass::Circle {
                        radius: radius * extent,
                    },
                    Some(LacFamily::Lac(p)) => CurveClass::Lac(rescale(p, extent)),
                    None => CurveClass::Other,
                };
            }
            out.msa = Some(rep);
        }
        Err(e) => out.notes.push(format!("similarity stage: {e}")),
    }
    if out.class != CurveClass::Other {
        return out;
    }
    match verify_esa(&unit, &tols.esa_eps, tols.esa) {
        Ok(rep) => {
            if rep.holds {
                out.class = match rep.family {
                    Some(ConicFamily::Parabola) => CurveClass::Parabola,
                    Some(ConicFamily::Ellipse) => CurveClass::Ellipse,
                    Some(ConicFamily::Hyperbola) => CurveClass::Hyperbola,
                    None => CurveClass::Other,
                };
            }
            out.esa = Some(rep);
        }
        Err(e) => out.notes.push(format!("equiaffine stage: {e}")),
    }
    out
}
