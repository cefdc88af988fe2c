use crate::curve_core::{ArcLengthCurve, Radius};
use crate::error::{CurveError, Result};
use crate::scalar::{c, Scalar};

/// One bin `R_i = [X_left, X_left + ΔX)` of a histogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LchBin<T> {
    pub x_left: T,
    /// Number of arc divisions whose initial point lands in the bin.
    pub count: usize,
    /// `log(Δs_i / ΔX_i)`, or `None` for an empty bin.
    pub y: Option<T>,
}

/// Logarithmic curvature histogram for a given `(M, N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LcHistogram<T> {
    pub m: usize,
    pub n: usize,
    pub s_all: T,
    pub x_range: (T, T),
    pub bins: Vec<LchBin<T>>,
}

impl<T: Scalar> LcHistogram<T> {
    pub fn bin_width(&self) -> T {
        (self.x_range.1 - self.x_range.0) / T::from_usize_lossy(self.m)
    }

    /// Step density `Δs_i / ΔX_i` of bin `i`; zero for empty bins.
    pub fn density(&self, i: usize) -> T {
        let ds = self.s_all / T::from_usize_lossy(self.n);
        T::from_usize_lossy(self.bins[i].count) * ds / self.bin_width()
    }

    /// Total arc-length mass `Σ count_i · s_all/N`.
    pub fn mass(&self) -> T {
        let ds = self.s_all / T::from_usize_lossy(self.n);
        self.bins
            .iter()
            .fold(T::zero(), |acc, b| acc + T::from_usize_lossy(b.count) * ds)
    }

    /// Histogram measure of `[a, b)`.
    pub fn measure(&self, a: T, b: T) -> T {
        let w = self.bin_width();
        let mut total = T::zero();
        for (i, bin) in self.bins.iter().enumerate() {
            let lo = bin.x_left.max(a);
            let hi = (bin.x_left + w).min(b);
            if hi > lo && bin.count > 0 {
                total += self.density(i) * (hi - lo);
            }
        }
        total
    }

    /// Index of the bin containing `x`, with the last bin closed.
    pub fn bin_of(&self, x: T) -> Option<usize> {
        let (lo, hi) = self.x_range;
        if x < lo || x > hi {
            return None;
        }
        let i = ((x - lo) / self.bin_width()).floor().to_usize().unwrap_or(0);
        Some(i.min(self.m - 1))
    }
}

/// Bins `log|ρ|` at the `N` division points `s_j = s_lo + j s_all/N`.
///
/// The X-range spans all `N + 1` division points; each of the `N` arc pieces
/// is counted once, at its initial point, so the mass is exactly `s_all`.
pub fn compute_lch<T: Scalar>(curve: &ArcLengthCurve<T>, m: usize, n: usize) -> Result<LcHistogram<T>> {
    if m < 2 || n < m {
        return Err(CurveError::InvalidParams(format!(
            "need M >= 2 and N >= M, got M = {m}, N = {n}"
        )));
    }
    let (s_lo, _) = curve.s_range();
    let s_all = curve.s_all();
    let ds = s_all / T::from_usize_lossy(n);
    let mut xs = Vec::with_capacity(n + 1);
    let mut sign = None;
    for j in 0..=n {
        let s = s_lo + ds * T::from_usize_lossy(j);
        match curve.radius(s) {
            Radius::Finite(r) => {
                let sg = r > T::zero();
                if *sign.get_or_insert(sg) != sg {
                    return Err(CurveError::InfiniteRadius { s: s.to_f64_lossy() });
                }
                xs.push(r.abs().ln());
            }
            Radius::Infinite => return Err(CurveError::InfiniteRadius { s: s.to_f64_lossy() }),
        }
    }
    let xmin = xs.iter().copied().fold(T::infinity(), T::min);
    let xmax = xs.iter().copied().fold(T::neg_infinity(), T::max);
    let range = xmax - xmin;
    if !(range > c::<T>(1e-12) * (T::one() + xmin.abs().max(xmax.abs()))) {
        return Err(CurveError::DegenerateRange {
            range: range.to_f64_lossy(),
        });
    }
    let width = range / T::from_usize_lossy(m);
    let mut counts = vec![0usize; m];
    for &x in &xs[..n] {
        let i = ((x - xmin) / width).floor().to_usize().unwrap_or(0).min(m - 1);
        counts[i] += 1;
    }
    let bins = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| LchBin {
            x_left: xmin + width * T::from_usize_lossy(i),
            count,
            y: (count > 0).then(|| (T::from_usize_lossy(count) * ds / width).ln()),
        })
        .collect();
    Ok(LcHistogram {
        m,
        n,
        s_all,
        x_range: (xmin, xmax),
        bins,
    })
}
