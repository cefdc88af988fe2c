use crate::curve_core::{ArcLengthCurve, Curve};
use crate::error::{CurveError, Result};
use crate::numeric::quadrature::integrate;
use crate::scalar::{c, Scalar};

use super::graph::monotone_segments;
use super::histogram::{compute_lch, LcHistogram};

/// Errors of one `(M, N)` histogram against the exact LCG density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow<T> {
    pub m: usize,
    pub n: usize,
    /// `|μ_{M,N}([a, b)) − ∫_a^b e^Y dX|`.
    pub interval_error: T,
    /// `½ ∫ |f_{M,N} − e^Y| dX / s_all`, in `[0, 1]`.
    pub tv_error: T,
    /// `max_i ∫_{R_i} e^Y dX + M s_all/N + max_i μ_{M,N}(R_i)`.
    pub error_budget: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport<T> {
    pub interval: (T, T),
    pub rows: Vec<ConvergenceRow<T>>,
    /// Whether `interval_error` strictly decreases along the grid.
    pub interval_decreasing: bool,
    /// Whether `tv_error` strictly decreases along the grid.
    pub tv_decreasing: bool,
}

/// Exact LCG measure for a curve with monotone `ρ`, worked in the curve
/// parameter to avoid inverting the arc-length map.
struct ExactDensity<'a, T: Scalar> {
    arc: &'a ArcLengthCurve<T>,
    curve: &'a Curve<T>,
    t_lo: T,
    t_hi: T,
    x_lo: T,
    x_hi: T,
    increasing: bool,
}

impl<'a, T: Scalar> ExactDensity<'a, T> {
    fn new(arc: &'a ArcLengthCurve<T>) -> Result<Self> {
        let curve = arc.curve();
        let (t_lo, t_hi) = curve.domain();
        let x = |t: T| log_radius(curve, t);
        let (x0, x1) = match (x(t_lo), x(t_hi)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(CurveError::InfiniteRadius {
                    s: arc.s_range().0.to_f64_lossy(),
                })
            }
        };
        Ok(ExactDensity {
            arc,
            curve,
            t_lo,
            t_hi,
            x_lo: x0.min(x1),
            x_hi: x0.max(x1),
            increasing: x1 > x0,
        })
    }

    /// Parameter at which `X(t) = x`, for `x` inside the X-range.
    fn t_of_x(&self, x: T) -> T {
        if x <= self.x_lo {
            return if self.increasing { self.t_lo } else { self.t_hi };
        }
        if x >= self.x_hi {
            return if self.increasing { self.t_hi } else { self.t_lo };
        }
        let (mut a, mut b) = (self.t_lo, self.t_hi);
        let tol = (b - a) * T::epsilon() * c(4.0);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = (a + b) * c(0.5);
            let xm = log_radius(self.curve, mid).unwrap_or(T::infinity());
            if (xm < x) == self.increasing {
                a = mid;
            } else {
                b = mid;
            }
        }
        (a + b) * c(0.5)
    }

    /// `∫_a^b e^Y dX`: arc length of `{s : X(s) ∈ [a, b)}`.
    fn measure(&self, a: T, b: T) -> T {
        let (a, b) = (a.max(self.x_lo), b.min(self.x_hi));
        if !(b > a) {
            return T::zero();
        }
        let (ta, tb) = (self.t_of_x(a), self.t_of_x(b));
        (self.arc.s_of_t(tb) - self.arc.s_of_t(ta)).abs()
    }

    /// `∫_{[lo, hi)} |f − e^Y| dX` for a constant density `f`.
    fn l1_against(&self, f: T, lo: T, hi: T) -> T {
        let (lo, hi) = (lo.max(self.x_lo), hi.min(self.x_hi));
        if !(hi > lo) {
            return T::zero();
        }
        let (ta, tb) = (self.t_of_x(lo), self.t_of_x(hi));
        let (ta, tb) = (ta.min(tb), ta.max(tb));
        // dX = |X_t| dt and e^Y dX = ds = |γ'| dt.
        let integrand = |t: T| {
            let j = self.curve.jet(t);
            let v = j.d1.norm();
            match j.radius_jet() {
                Some(r) => (f * (r.rho_s * v / r.rho).abs() - v).abs(),
                None => v,
            }
        };
        integrate(&integrand, ta, tb, c(1e-9), T::zero())
    }
}

fn log_radius<T: Scalar>(curve: &Curve<T>, t: T) -> Option<T> {
    curve.radius(t).finite().map(|r| r.abs().ln())
}

fn row<T: Scalar>(
    arc: &ArcLengthCurve<T>,
    exact: &ExactDensity<'_, T>,
    m: usize,
    n: usize,
    interval: (T, T),
) -> Result<ConvergenceRow<T>> {
    let lch: LcHistogram<T> = compute_lch(arc, m, n)?;
    let interval_error = (lch.measure(interval.0, interval.1) - exact.measure(interval.0, interval.1)).abs();
    let w = lch.bin_width();
    let mut l1 = T::zero();
    let mut max_exact = T::zero();
    let mut max_hist = T::zero();
    for (i, bin) in lch.bins.iter().enumerate() {
        let (lo, hi) = (bin.x_left, bin.x_left + w);
        l1 += exact.l1_against(lch.density(i), lo, hi);
        max_exact = max_exact.max(exact.measure(lo, hi));
        max_hist = max_hist.max(lch.density(i) * w);
    }
    let s_all = arc.s_all();
    Ok(ConvergenceRow {
        m,
        n,
        interval_error,
        tv_error: l1 * c(0.5) / s_all,
        error_budget: max_exact + T::from_usize_lossy(m) * s_all / T::from_usize_lossy(n) + max_hist,
    })
}

fn strictly_decreasing<T: Scalar>(v: impl Iterator<Item = T>) -> bool {
    let v: Vec<T> = v.collect();
    v.windows(2).all(|w| w[1] < w[0])
}

/// Measures how the histograms on `grid` approach the LCG density, on the
/// interval `[a, b)` and in total variation. Requires monotone `ρ`.
pub fn convergence_report<T: Scalar>(
    curve: &ArcLengthCurve<T>,
    grid: &[(usize, usize)],
    interval: (T, T),
) -> Result<ConvergenceReport<T>> {
    convergence_report_with(curve, grid, interval, 0)
}

/// As [`convergence_report`], spreading grid points over up to `threads`
/// worker threads (0 or 1 runs sequentially). The result does not depend on
/// the thread count.
pub fn convergence_report_with<T: Scalar>(
    curve: &ArcLengthCurve<T>,
    grid: &[(usize, usize)],
    interval: (T, T),
    threads: usize,
) -> Result<ConvergenceReport<T>> {
    let segments = monotone_segments(curve)?;
    if segments.len() != 1 {
        return Err(CurveError::NonMonotoneRadius {
            s: segments[0].1.to_f64_lossy(),
        });
    }
    let exact = ExactDensity::new(curve)?;
    let rows: Vec<Result<ConvergenceRow<T>>> = if threads <= 1 || grid.len() <= 1 {
        grid.iter().map(|&(m, n)| row(curve, &exact, m, n, interval)).collect()
    } else {
        let workers = threads.min(grid.len());
        let mut slots: Vec<Option<Result<ConvergenceRow<T>>>> = vec![None; grid.len()];
        std::thread::scope(|scope| {
            let exact = &exact;
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        grid.iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, &(m, n))| (i, row(curve, exact, m, n, interval)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("convergence worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots
            .into_iter()
            .map(|r| r.expect("every grid point evaluated"))
            .collect()
    };
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        interval,
        interval_decreasing: strictly_decreasing(rows.iter().map(|r| r.interval_error)),
        tv_decreasing: strictly_decreasing(rows.iter().map(|r| r.tv_error)),
        rows,
    })
}
