//! Planar curve analysis around log-aesthetic curves.
//!
//! The crate computes logarithmic curvature histograms and graphs, generates
//! log-aesthetic curves from their curvature-radius law, and checks three
//! kinds of self-affinity: the similarity-geometry one satisfied by
//! log-aesthetic curves, circles and lines; the subcurve one satisfied by lines
//! and parabolas; and the equiaffine one satisfied by conics.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases at the crate root fix the scalar to `f64`.

// `!(a < b)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve_core;
pub mod equiaffine_esa;
pub mod error;
pub mod geom;
pub mod hsa_affine;
pub mod lac_msa;
pub mod lch_lcg;
pub mod numeric;
pub mod scalar;

pub use error::{CurveError, Result};
pub use geom::{AffineMap, FrenetFrame, Mat2, Vec2};
pub use scalar::Scalar;

pub type Vec2d = Vec2<f64>;
pub type Mat2d = Mat2<f64>;
pub type AffineMap64 = AffineMap<f64>;
pub type Curve64 = curve_core::Curve<f64>;
pub type ArcLengthCurve64 = curve_core::ArcLengthCurve<f64>;
pub type Analytic64 = curve_core::Analytic<f64>;
pub type LacParams64 = lac_msa::LacParams<f64>;
pub type LcHistogram64 = lch_lcg::LcHistogram<f64>;
pub type LcgPlot64 = lch_lcg::LcgPlot<f64>;
pub type MsaReport64 = lac_msa::MsaReport<f64>;
pub type HsaReport64 = hsa_affine::HsaReport<f64>;
pub type EsaReport64 = equiaffine_esa::EsaReport<f64>;
pub type EquiaffineCurve64 = equiaffine_esa::EquiaffineCurve<f64>;
