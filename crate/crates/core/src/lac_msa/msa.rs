//! Self-affinity under parameter shifts: `Λ_ε (s, ρ) = (μ^ε s, ν^ε ρ)`.

use crate::curve_core::ArcLengthCurve;
use crate::error::{CurveError, Result};
use crate::scalar::{c, Scalar};

use super::fit::{fit_lac, BranchFit, LacFamily};
use super::params::LacParams;

/// Points per ε in the t-grid of [`verify_msa`].
pub const MSA_GRID: usize = 64;
/// Radius samples fed to the fit in [`verify_msa`].
pub const MSA_FIT_SAMPLES: usize = 65;

/// A reparameterization `t ↦ s(t)` under which the ε-shift acts by constant
/// factors. The base point is `t = 0`, `s = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MsaReparam<T> {
    /// `s = scale (e^{β t} − 1)`, `ρ ∝ e^{β t / α}`.
    Power { scale: T, beta: T, alpha: T },
    /// `s = rate · t` for the exponential law, `rate = ξ/β`.
    Linear { rate: T, beta: T, xi: T },
    /// `s = scale (e^{β t} − 1)` on a circle.
    Circle { scale: T, beta: T },
}

impl<T: Scalar> MsaReparam<T> {
    pub fn circle(scale: T, beta: T) -> Self {
        MsaReparam::Circle { scale, beta }
    }

    pub fn s(&self, t: T) -> T {
        match *self {
            MsaReparam::Power { scale, beta, .. } | MsaReparam::Circle { scale, beta } => scale * (beta * t).exp_m1(),
            MsaReparam::Linear { rate, .. } => rate * t,
        }
    }

    /// Inverse of [`MsaReparam::s`]; NaN outside the image.
    pub fn t(&self, s: T) -> T {
        match *self {
            MsaReparam::Power { scale, beta, .. } | MsaReparam::Circle { scale, beta } => (s / scale).ln_1p() / beta,
            MsaReparam::Linear { rate, .. } => s / rate,
        }
    }

    /// `Λ_ε s(t) = s(t + ε) − s(ε)`.
    pub fn shifted_s(&self, t: T, eps: T) -> T {
        self.s(t + eps) - self.s(eps)
    }

    pub fn mu(&self) -> T {
        match *self {
            MsaReparam::Power { beta, .. } | MsaReparam::Circle { beta, .. } => beta.exp(),
            MsaReparam::Linear { .. } => T::one(),
        }
    }

    /// The factor with `Λ_ε ρ = ν^ε ρ`. For the exponential law this is
    /// `e^{ξ²/β}`, as measured along `s = (ξ/β) t`.
    pub fn nu(&self) -> T {
        match *self {
            MsaReparam::Power { beta, alpha, .. } => (beta / alpha).exp(),
            MsaReparam::Linear { beta, xi, .. } => (xi * xi / beta).exp(),
            MsaReparam::Circle { .. } => T::one(),
        }
    }
}

/// The reparameterization attached to a LAC with base point `s = 0`.
pub fn msa_reparam<T: Scalar>(params: &LacParams<T>, beta: T) -> Result<MsaReparam<T>> {
    if beta == T::zero() || !beta.is_finite() {
        return Err(CurveError::InvalidParams("beta must be finite and non-zero".into()));
    }
    if params.alpha == T::zero() {
        return Ok(MsaReparam::Linear {
            rate: params.xi / beta,
            beta,
            xi: params.xi,
        });
    }
    if params.eta == T::zero() {
        return Err(CurveError::ZeroEta);
    }
    Ok(MsaReparam::Power {
        scale: params.eta / params.xi,
        beta,
        alpha: params.alpha,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MsaReport<T> {
    pub holds: bool,
    /// `None` for a line, where any `μ, ν` work.
    pub mu: Option<T>,
    pub nu: Option<T>,
    pub beta: T,
    /// Largest of the fit residual and the relative deviations in `s` and
    /// `ρ` over all tested `(t, ε)`.
    pub residual: T,
    /// Accepted family, in the curve's own arc length.
    pub fitted: Option<LacFamily<T>>,
    pub branches: Vec<BranchFit<T>>,
    /// The ε values that fit inside the parameter range.
    pub tested_eps: Vec<T>,
}

impl<T: Scalar> MsaReport<T> {
    fn failed(beta: T, residual: T, branches: Vec<BranchFit<T>>) -> Self {
        MsaReport {
            holds: false,
            mu: None,
            nu: None,
            beta,
            residual,
            fitted: None,
            branches,
            tested_eps: Vec::new(),
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self.fitted, Some(LacFamily::Line))
    }
}

/// Fits the curve's radius to a circle, line or LAC, builds the matching
/// reparameterization and checks the shift identity on a 64-point grid for
/// every ε.
///
/// For the power law the base point is moved to the end where `ξ s + η` is
/// largest, so `η > 0` and the reparameterization exists on the whole curve.
pub fn verify_msa<T: Scalar>(curve: &ArcLengthCurve<T>, beta: T, eps_list: &[T], tol: T) -> Result<MsaReport<T>> {
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > T::zero())) {
        return Err(CurveError::InvalidParams(
            "eps_list must be non-empty and positive".into(),
        ));
    }
    if beta == T::zero() || !beta.is_finite() {
        return Err(CurveError::InvalidParams("beta must be finite and non-zero".into()));
    }
    let (s_lo, s_hi) = curve.s_range();
    let s_all = curve.s_all();
    let n = MSA_FIT_SAMPLES - 1;
    let mut samples = Vec::with_capacity(MSA_FIT_SAMPLES);
    for k in 0..=n {
        let s = s_lo + s_all * T::from_usize_lossy(k) / T::from_usize_lossy(n);
        if let Some(r) = curve.radius(s).finite() {
            samples.push((s, r.abs()));
        }
    }
    if samples.len() < MSA_FIT_SAMPLES / 2 || total_turning(&samples) < tol {
        return Ok(MsaReport {
            holds: true,
            mu: None,
            nu: None,
            beta,
            residual: T::zero(),
            fitted: Some(LacFamily::Line),
            branches: Vec::new(),
            tested_eps: eps_list.to_vec(),
        });
    }
    let fit = match fit_lac(&samples, tol) {
        Ok(f) => f,
        Err(_) => return Ok(MsaReport::failed(beta, T::infinity(), Vec::new())),
    };
    let Some(best) = fit.best else {
        let r = fit.best_residual();
        return Ok(MsaReport::failed(beta, r, fit.branches));
    };
    let (reparam, base) = match best.family {
        LacFamily::Line => {
            return Ok(MsaReport {
                holds: true,
                mu: None,
                nu: None,
                beta,
                residual: best.residual,
                fitted: Some(LacFamily::Line),
                branches: fit.branches,
                tested_eps: eps_list.to_vec(),
            })
        }
        LacFamily::Circle { .. } => (MsaReparam::circle(s_all + s_all, beta), T::zero()),
        LacFamily::Lac(p) if p.alpha == T::zero() => (msa_reparam(&p, beta)?, T::zero()),
        LacFamily::Lac(p) => {
            let base = if p.xi * s_hi > p.xi * s_lo { s_hi } else { s_lo };
            let rebased = LacParams {
                eta: p.xi * base + p.eta,
                domain: (p.domain.0 - base, p.domain.1 - base),
                ..p
            };
            (msa_reparam(&rebased, beta)?, base)
        }
    };
    let (mu, nu) = (reparam.mu(), reparam.nu());
    let ta = reparam.t(s_lo - base);
    let tb = reparam.t(s_hi - base);
    let (t_lo, t_hi) = (ta.min(tb), ta.max(tb));
    let mut residual = best.residual;
    let mut tested = Vec::new();
    for &eps in eps_list {
        let Some(r) = check_eps(curve, &reparam, base, (t_lo, t_hi), eps, mu, nu) else {
            continue;
        };
        residual = residual.max(r);
        tested.push(eps);
    }
    if !residual.is_finite() {
        residual = T::infinity();
    }
    Ok(MsaReport {
        holds: !tested.is_empty() && residual <= tol,
        mu: Some(mu),
        nu: Some(nu),
        beta,
        residual,
        fitted: Some(best.family),
        branches: fit.branches,
        tested_eps: tested,
    })
}

/// Worst relative deviation of `Λ_ε s = μ^ε s` and `Λ_ε ρ = ν^ε ρ` on the
/// grid, or `None` when `ε` does not fit inside the parameter range.
fn check_eps<T: Scalar>(
    curve: &ArcLengthCurve<T>,
    reparam: &MsaReparam<T>,
    base: T,
    (t_lo, t_hi): (T, T),
    eps: T,
    mu: T,
    nu: T,
) -> Option<T> {
    let hi = t_hi - eps;
    if !(hi > t_lo) || !t_lo.is_finite() {
        return None;
    }
    let (mu_e, nu_e) = (mu.powf(eps), nu.powf(eps));
    let s_all = curve.s_all();
    let (s_lo, s_hi) = curve.s_range();
    let clamp = |s: T| s.max(s_lo).min(s_hi);
    let rho = |t: T| curve.radius(clamp(base + reparam.s(t))).finite().map(|r| r.abs());
    let mut worst = T::zero();
    let last = MSA_GRID - 1;
    for k in 0..MSA_GRID {
        let t = t_lo + (hi - t_lo) * T::from_usize_lossy(k) / T::from_usize_lossy(last);
        let s = reparam.s(t);
        worst = worst.max((reparam.shifted_s(t, eps) - mu_e * s).abs() / s_all);
        match (rho(t), rho(t + eps)) {
            (Some(r0), Some(r1)) => worst = worst.max((r1 / (nu_e * r0) - T::one()).abs()),
            _ => return Some(T::infinity()),
        }
    }
    Some(worst)
}

/// Trapezoidal `∫ ds/ρ` over the samples.
fn total_turning<T: Scalar>(samples: &[(T, T)]) -> T {
    samples.windows(2).fold(T::zero(), |acc, w| {
        acc + (w[1].0 - w[0].0) * (w[0].1.recip() + w[1].1.recip()) * c(0.5)
    })
}
