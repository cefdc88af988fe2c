//! Logarithmic curvature histograms (LCH), logarithmic curvature graphs (LCG)
//! and the check that the former converge to the latter.
//!
//! With `X = log|ρ|` the LCH bins arc length against `X`; the LCG is the
//! curve `(X, Y) = (log|ρ|, log|ds/dX|)`, whose `e^Y` is the limiting density.

mod convergence;
mod graph;
mod histogram;

pub use convergence::{convergence_report, convergence_report_with, ConvergenceReport, ConvergenceRow};
pub use graph::{compute_lcg, lcg_gradient, monotone_segments, LcgPlot, LcgSample, MIN_LCG_SAMPLES, MONOTONE_SCAN};
pub use histogram::{compute_lch, LcHistogram, LchBin};
