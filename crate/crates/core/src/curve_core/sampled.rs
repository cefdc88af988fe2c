use crate::error::{CurveError, Result};
use crate::geom::Vec2;
use crate::numeric::stencil::fornberg_weights;
use crate::scalar::Scalar;

use super::jet::Jet;

/// Number of nodes in every finite-difference stencil.
pub const STENCIL_WIDTH: usize = 5;

/// Point samples `γ(t_k)` with derivatives from local polynomial stencils.
///
/// Each query uses the five nodes centred on the nearest sample, shifted
/// inwards at the ends, so interior estimates are central and boundary ones
/// one-sided, both fourth order for the first derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve<T> {
    t: Vec<T>,
    pts: Vec<Vec2<T>>,
}

impl<T: Scalar> SampledCurve<T> {
    pub fn new(t: Vec<T>, pts: Vec<Vec2<T>>) -> Result<Self> {
        if t.len() != pts.len() {
            return Err(CurveError::InvalidCurve(format!(
                "{} parameters but {} points",
                t.len(),
                pts.len()
            )));
        }
        if t.len() < STENCIL_WIDTH {
            return Err(CurveError::InsufficientSamples {
                got: t.len(),
                min: STENCIL_WIDTH,
            });
        }
        for (k, (&tk, p)) in t.iter().zip(&pts).enumerate() {
            if !tk.is_finite() || !p.is_finite() {
                return Err(CurveError::InvalidCurve(format!("non-finite sample at index {k}")));
            }
        }
        if let Some(k) = t.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(CurveError::InvalidCurve(format!(
                "parameters not strictly increasing at index {}",
                k + 1
            )));
        }
        Ok(SampledCurve { t, pts })
    }

    pub fn params(&self) -> &[T] {
        &self.t
    }

    pub fn points(&self) -> &[Vec2<T>] {
        &self.pts
    }

    pub fn stencil_width(&self) -> usize {
        STENCIL_WIDTH
    }

    fn nearest(&self, t: T) -> usize {
        let n = self.t.len();
        let i = self.t.partition_point(|&x| x < t);
        if i == 0 {
            0
        } else if i >= n {
            n - 1
        } else if t - self.t[i - 1] <= self.t[i] - t {
            i - 1
        } else {
            i
        }
    }

    pub fn jet(&self, t: T) -> Jet<T> {
        let n = self.t.len();
        let k = self.nearest(t);
        let start = k.saturating_sub(STENCIL_WIDTH / 2).min(n - STENCIL_WIDTH);
        let nodes = &self.t[start..start + STENCIL_WIDTH];
        let pts = &self.pts[start..start + STENCIL_WIDTH];
        let w = fornberg_weights(t, nodes, 4);
        let combine = |m: usize| {
            w[m].iter()
                .zip(pts)
                .fold(Vec2::zero(), |acc, (&wi, &p)| acc + p.scale(wi))
        };
        let p = if self.t[k] == t { self.pts[k] } else { combine(0) };
        Jet {
            p,
            d1: combine(1),
            d2: combine(2),
            d3: combine(3),
            d4: combine(4),
        }
    }
}
