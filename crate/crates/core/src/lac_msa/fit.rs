//! Inverting the radius law by regression on `(s, ρ)` samples.

use crate::error::{CurveError, Result};
use crate::numeric::stencil::fornberg_weights;
use crate::scalar::{c, Scalar};

use super::params::LacParams;

/// Minimum number of samples accepted by [`fit_lac`].
pub const MIN_FIT_SAMPLES: usize = 8;

/// Candidate family, ordered from simplest to most general.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FitBranch {
    Circle,
    Line,
    Exponential,
    Power,
}

/// A fitted member of the similarity-geometry family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LacFamily<T> {
    Circle { radius: T },
    Line,
    Lac(LacParams<T>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchFit<T> {
    pub branch: FitBranch,
    pub family: LacFamily<T>,
    /// `max_i |ρ_fit(s_i)/ρ_i − 1|` (for the line branch, `s_range / min ρ`).
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LacFit<T> {
    /// The accepted branch, if any.
    pub best: Option<BranchFit<T>>,
    /// Every branch that could be fitted, by increasing residual.
    pub branches: Vec<BranchFit<T>>,
}

impl<T: Scalar> LacFit<T> {
    /// Smallest residual over all branches.
    pub fn best_residual(&self) -> T {
        self.branches.first().map(|b| b.residual).unwrap_or(T::infinity())
    }
}

/// Fits `(s, ρ)` samples to a circle, a line, the exponential law (`α = 0`)
/// or the power law (`α ≠ 0`).
///
/// The branch with the smallest residual is accepted when it is below `tol`
/// and below half of the runner-up. When several branches are below `tol`
/// without such a margin (a circle is a limit of every LAC family) the
/// simplest of them is taken.
pub fn fit_lac<T: Scalar>(samples: &[(T, T)], tol: T) -> Result<LacFit<T>> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(CurveError::InsufficientSamples {
            got: samples.len(),
            min: MIN_FIT_SAMPLES,
        });
    }
    for (k, w) in samples.windows(2).enumerate() {
        if !(w[1].0 > w[0].0) {
            return Err(CurveError::InvalidParams(format!(
                "sample arc lengths not increasing at index {}",
                k + 1
            )));
        }
    }
    if let Some(&(s, r)) = samples.iter().find(|&&(_, r)| !(r > T::zero()) || !r.is_finite()) {
        return Err(CurveError::InvalidParams(format!(
            "radius {r} at s = {s} is not finite and positive"
        )));
    }
    let mut branches = vec![fit_circle(samples), fit_line(samples)];
    branches.extend(fit_exponential(samples));
    branches.extend(fit_power(samples));
    branches.sort_by(|a, b| {
        a.residual
            .partial_cmp(&b.residual)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.branch.cmp(&b.branch))
    });
    let best = select(&branches, tol);
    Ok(LacFit { best, branches })
}

fn select<T: Scalar>(sorted: &[BranchFit<T>], tol: T) -> Option<BranchFit<T>> {
    let first = sorted.first()?;
    if !(first.residual < tol) {
        return None;
    }
    let runner_up = sorted.get(1).map(|b| b.residual).unwrap_or(T::infinity());
    if first.residual < runner_up * c(0.5) {
        return Some(*first);
    }
    sorted
        .iter()
        .filter(|b| b.residual < tol)
        .min_by_key(|b| b.branch)
        .copied()
}

fn rel_residual<T: Scalar>(samples: &[(T, T)], model: impl Fn(T) -> T) -> T {
    samples.iter().fold(T::zero(), |m, &(s, r)| {
        let d = (model(s) / r - T::one()).abs();
        if d.is_nan() {
            T::infinity()
        } else {
            m.max(d)
        }
    })
}

fn fit_circle<T: Scalar>(samples: &[(T, T)]) -> BranchFit<T> {
    let lo = samples.iter().map(|p| p.1).fold(T::infinity(), T::min);
    let hi = samples.iter().map(|p| p.1).fold(T::neg_infinity(), T::max);
    let radius = (lo + hi) * c(0.5);
    BranchFit {
        branch: FitBranch::Circle,
        family: LacFamily::Circle { radius },
        residual: (hi - lo) / (hi + lo),
    }
}

fn fit_line<T: Scalar>(samples: &[(T, T)]) -> BranchFit<T> {
    let span = samples.last().unwrap().0 - samples[0].0;
    let lo = samples.iter().map(|p| p.1).fold(T::infinity(), T::min);
    BranchFit {
        branch: FitBranch::Line,
        family: LacFamily::Line,
        residual: span / lo,
    }
}

/// Least-squares line `y = a + b x`.
fn linear_fit<T: Scalar>(xs: impl Iterator<Item = (T, T)> + Clone) -> Option<(T, T)> {
    let n = T::from_usize_lossy(xs.clone().count());
    let (sx, sy) = xs.clone().fold((T::zero(), T::zero()), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxx, sxy) = xs.fold((T::zero(), T::zero()), |(a, b), (x, y)| {
        (a + (x - mx) * (x - mx), b + (x - mx) * (y - my))
    });
    if !(sxx > T::zero()) {
        return None;
    }
    let b = sxy / sxx;
    Some((my - b * mx, b))
}

fn domain_of<T: Scalar>(samples: &[(T, T)]) -> (T, T) {
    (samples[0].0, samples.last().unwrap().0)
}

fn fit_exponential<T: Scalar>(samples: &[(T, T)]) -> Option<BranchFit<T>> {
    let (eta, xi) = linear_fit(samples.iter().map(|&(s, r)| (s, r.ln())))?;
    if xi == T::zero() {
        return None;
    }
    let params = LacParams {
        alpha: T::zero(),
        xi,
        eta,
        domain: domain_of(samples),
    };
    Some(BranchFit {
        branch: FitBranch::Exponential,
        family: LacFamily::Lac(params),
        residual: rel_residual(samples, |s| (xi * s + eta).exp()),
    })
}

/// Median of the pointwise LCG gradient `1 − ρ ρ'' / ρ'²`, with derivatives
/// from three-point differences on the sample abscissae.
pub(crate) fn median_gradient<T: Scalar>(samples: &[(T, T)]) -> Option<T> {
    let mut g: Vec<T> = samples
        .windows(3)
        .filter_map(|w| {
            let nodes = [w[0].0, w[1].0, w[2].0];
            let wts = fornberg_weights(w[1].0, &nodes, 2);
            let d1 = wts[1][0] * w[0].1 + wts[1][1] * w[1].1 + wts[1][2] * w[2].1;
            let d2 = wts[2][0] * w[0].1 + wts[2][1] * w[1].1 + wts[2][2] * w[2].1;
            let v = T::one() - w[1].1 * d2 / (d1 * d1);
            v.is_finite().then_some(v)
        })
        .collect();
    if g.is_empty() {
        return None;
    }
    g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(g[g.len() / 2])
}

/// `log ρ = p + w log(1 + k d)` with `d = (s − s_ref)/L`.
struct PowerModel<'a, T> {
    d: Vec<T>,
    logr: Vec<T>,
    samples: &'a [(T, T)],
    s_ref: T,
    scale: T,
}

impl<'a, T: Scalar> PowerModel<'a, T> {
    fn new(samples: &'a [(T, T)]) -> Self {
        let (lo, hi) = domain_of(samples);
        let s_ref = (lo + hi) * c(0.5);
        let scale = hi - lo;
        PowerModel {
            d: samples.iter().map(|&(s, _)| (s - s_ref) / scale).collect(),
            logr: samples.iter().map(|&(_, r)| r.ln()).collect(),
            samples,
            s_ref,
            scale,
        }
    }

    fn cost(&self, p: [T; 3]) -> Option<T> {
        let mut acc = T::zero();
        for (&d, &l) in self.d.iter().zip(&self.logr) {
            let u = T::one() + p[1] * d;
            if !(u > T::zero()) {
                return None;
            }
            let r = p[0] + p[2] * u.ln() - l;
            acc += r * r;
        }
        Some(acc)
    }

    /// Initial guess for a given slope: regress `ρ^α` on `d`.
    fn start(&self, alpha: T) -> Option<[T; 3]> {
        let m = self.logr.iter().copied().fold(T::zero(), |a, b| a + b) / T::from_usize_lossy(self.logr.len());
        let (a, b) = linear_fit(
            self.d
                .iter()
                .zip(&self.logr)
                .map(|(&d, &l)| (d, (alpha * (l - m)).exp())),
        )?;
        if !(a > T::zero()) {
            return None;
        }
        let p = [m + a.ln() / alpha, b / a, alpha.recip()];
        self.cost(p).map(|_| p)
    }

    /// Levenberg–Marquardt on the log residuals.
    fn refine(&self, mut p: [T; 3]) -> [T; 3] {
        let mut cost = match self.cost(p) {
            Some(v) => v,
            None => return p,
        };
        let mut lambda = c::<T>(1e-3);
        for _ in 0..500 {
            let mut jtj = [[T::zero(); 3]; 3];
            let mut jtr = [T::zero(); 3];
            for (&d, &l) in self.d.iter().zip(&self.logr) {
                let u = T::one() + p[1] * d;
                let lu = u.ln();
                let r = p[0] + p[2] * lu - l;
                let j = [T::one(), p[2] * d / u, lu];
                for a in 0..3 {
                    jtr[a] += j[a] * r;
                    for b in 0..3 {
                        jtj[a][b] += j[a] * j[b];
                    }
                }
            }
            let mut improved = false;
            for _ in 0..30 {
                let mut a = jtj;
                for (k, row) in a.iter_mut().enumerate() {
                    row[k] += lambda * (jtj[k][k] + T::min_positive_value().sqrt());
                }
                let Some(step) = solve3(a, jtr) else {
                    lambda *= c(10.0);
                    continue;
                };
                let trial = [p[0] - step[0], p[1] - step[1], p[2] - step[2]];
                match self.cost(trial) {
                    Some(v) if v <= cost => {
                        let small = (cost - v) <= cost * T::epsilon() * c(4.0);
                        p = trial;
                        cost = v;
                        lambda = (lambda * c(0.1)).max(c(1e-15));
                        improved = !small;
                        break;
                    }
                    _ => lambda *= c(10.0),
                }
            }
            if !improved {
                break;
            }
        }
        p
    }

    fn params(&self, p: [T; 3]) -> Option<LacParams<T>> {
        let alpha = p[2].recip();
        let k = p[1] / self.scale;
        // ρ_ref^α (1 + k (s − s_ref)) = ξ s + η
        let a = (p[0] * alpha).exp();
        let xi = a * k;
        let eta = a * (T::one() - k * self.s_ref);
        (alpha.is_finite() && xi.is_finite() && eta.is_finite() && xi != T::zero()).then_some(LacParams {
            alpha,
            xi,
            eta,
            domain: domain_of(self.samples),
        })
    }

    fn residual(&self, p: [T; 3]) -> T {
        self.d.iter().zip(&self.logr).fold(T::zero(), |m, (&d, &l)| {
            let u = T::one() + p[1] * d;
            let e = ((p[0] + p[2] * u.ln() - l).exp() - T::one()).abs();
            if e.is_nan() {
                T::infinity()
            } else {
                m.max(e)
            }
        })
    }
}

fn fit_power<T: Scalar>(samples: &[(T, T)]) -> Option<BranchFit<T>> {
    let model = PowerModel::new(samples);
    let mut alphas: Vec<T> = Vec::new();
    if let Some(g) = median_gradient(samples) {
        alphas.extend([g, g * c(0.5), g * c(2.0)]);
    }
    alphas.extend([-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0].map(c::<T>));
    let mut best: Option<([T; 3], T)> = None;
    for alpha in alphas {
        if !(alpha.abs() > c(1e-3)) || !alpha.is_finite() {
            continue;
        }
        let Some(p0) = model.start(alpha) else { continue };
        let p = model.refine(p0);
        let res = model.residual(p);
        if best.is_none_or(|(_, r)| res < r) {
            best = Some((p, res));
        }
    }
    let (p, residual) = best?;
    let params = model.params(p)?;
    Some(BranchFit {
        branch: FitBranch::Power,
        family: LacFamily::Lac(params),
        residual,
    })
}

fn solve3<T: Scalar>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if !(a[piv][col].abs() > T::zero()) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..3 {
            let f = a[r][col] / a[col][col];
            let pivot_row = a[col];
            for (x, &p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *x -= f * p;
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for r in (0..3).rev() {
        let mut acc = b[r];
        for k in r + 1..3 {
            acc -= a[r][k] * x[k];
        }
        x[r] = acc / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
