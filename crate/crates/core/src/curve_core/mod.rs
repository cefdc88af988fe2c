//! Curve representation, arc length, Euclidean curvature, Frenet
//! reconstruction and affine images.

mod analytic;
mod arclength;
mod curve;
mod jet;
mod ops;
mod sampled;
mod trace;

pub use analytic::Analytic;
pub use arclength::{arc_length_reparam, ArcLengthCurve, ARC_LENGTH_TOL};
pub use curve::{Curve, CurveKind, Parametric};
pub use jet::{Jet, Radius, RadiusJet};
pub(crate) use ops::trace_curve;
pub use ops::{
    apply_affine, curvature_radius, reconstruct_from_curvature, reconstruct_on, winding_injectivity_check, MIN_STEPS,
};
pub use sampled::{SampledCurve, STENCIL_WIDTH};
pub use trace::{ConstantLaw, CurvatureLaw, FnLaw, FrameGeometry, FrameTrace};
