use std::sync::Arc;

use crate::curve_core::{reconstruct_on, CurvatureLaw, Curve};
use crate::error::{CurveError, Result};
use crate::scalar::Scalar;

/// Curvature-radius law `ρ(s) = (ξ s + η)^{1/α}` (`α ≠ 0`) or `e^{ξ s + η}`
/// (`α = 0`) on an arc-length interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LacParams<T> {
    pub alpha: T,
    pub xi: T,
    pub eta: T,
    pub domain: (T, T),
}

impl<T: Scalar> LacParams<T> {
    pub fn new(alpha: T, xi: T, eta: T, domain: (T, T)) -> Result<Self> {
        let p = LacParams { alpha, xi, eta, domain };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.domain;
        if !(self.alpha.is_finite() && self.xi.is_finite() && self.eta.is_finite()) {
            return Err(CurveError::InvalidParams("non-finite LAC parameter".into()));
        }
        if self.xi == T::zero() {
            return Err(CurveError::InvalidParams("xi must be non-zero".into()));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CurveError::InvalidParams(format!("empty domain [{lo}, {hi}]")));
        }
        if self.alpha != T::zero() {
            for s in [lo, hi] {
                let u = self.xi * s + self.eta;
                if u < T::zero() {
                    return Err(CurveError::DomainViolation {
                        s: s.to_f64_lossy(),
                        value: u.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The spiral `e^{(a + ib) t}` with `s` measured from `t = 0`:
    /// `s = (√(a²+b²)/a)(e^{at} − 1)` and `ρ = (a/b) s + √(a²+b²)/b`.
    pub fn log_spiral(a: T, b: T, domain: (T, T)) -> Result<Self> {
        let r = a.hypot(b);
        Self::new(T::one(), a / b, r / b, domain)
    }

    /// The clothoid `∫ e^{i a u²} du`, `ρ = 1/(2 a s)`.
    pub fn clothoid(a: T, domain: (T, T)) -> Result<Self> {
        Self::new(-T::one(), a + a, T::zero(), domain)
    }

    pub fn is_exponential(&self) -> bool {
        self.alpha == T::zero()
    }

    /// `ρ(s)`.
    pub fn radius(&self, s: T) -> Result<T> {
        lac_radius(self, s)
    }
}

/// Exact evaluation of the radius law.
pub fn lac_radius<T: Scalar>(params: &LacParams<T>, s: T) -> Result<T> {
    let u = params.xi * s + params.eta;
    if params.alpha == T::zero() {
        return Ok(u.exp());
    }
    if u < T::zero() {
        return Err(CurveError::DomainViolation {
            s: s.to_f64_lossy(),
            value: u.to_f64_lossy(),
        });
    }
    Ok(u.powf(params.alpha.recip()))
}

impl<T: Scalar> CurvatureLaw<T> for LacParams<T> {
    fn kappa(&self, s: T) -> T {
        let u = self.xi * s + self.eta;
        if self.alpha == T::zero() {
            (-u).exp()
        } else {
            u.powf(-self.alpha.recip())
        }
    }

    fn kappa_derivs(&self, s: T, _lo: T, _hi: T) -> [T; 3] {
        let u = self.xi * s + self.eta;
        if self.alpha == T::zero() {
            let k = (-u).exp();
            return [k, -self.xi * k, self.xi * self.xi * k];
        }
        let inv = self.alpha.recip();
        let k = u.powf(-inv);
        if u > T::zero() {
            // Written through r = ξ/u so huge ξ, η (α → ±∞ limits) do not overflow.
            let r = self.xi / u;
            [k, -k * r * inv, k * r * r * inv * (inv + T::one())]
        } else {
            let k1 = -self.xi * inv * u.powf(-inv - T::one());
            let k2 = if inv + T::one() == T::zero() {
                T::zero()
            } else {
                self.xi * self.xi * inv * (inv + T::one()) * u.powf(-inv - T::one() - T::one())
            };
            [k, k1, k2]
        }
    }
}

/// Integrates the Frenet equations with `κ = 1/ρ` over the law's domain.
pub fn generate_lac<T: Scalar>(params: &LacParams<T>, steps: usize) -> Result<Curve<T>> {
    params.validate()?;
    let (lo, hi) = params.domain;
    for s in [lo, hi] {
        let k = params.kappa(s);
        if !k.is_finite() {
            return Err(CurveError::InvalidParams(format!(
                "curvature is infinite at s = {s}; shrink the domain"
            )));
        }
    }
    reconstruct_on(Arc::new(*params), lo, hi, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let p = LacParams::new(1.0, 1.0, 2.0, (0.0, 5.0)).unwrap();
        assert_eq!(lac_radius(&p, 3.0).unwrap(), 5.0);
        let p = LacParams::new(0.0, 1.0, 0.0, (0.0, 5.0)).unwrap();
        assert!((lac_radius(&p, 2f64.ln()).unwrap() - 2.0).abs() < 1e-15);
        let p = LacParams::new(-1.0f64, 2.0, 0.0, (0.0, 5.0)).unwrap();
        assert!((lac_radius(&p, 0.25).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(lac_radius(&p, -1.0), Err(CurveError::DomainViolation { .. })));
    }

    #[test]
    fn exact_derivatives_match_differences() {
        let laws = [
            LacParams::new(2.0f64, 2.0, 3.0, (0.0, 4.0)).unwrap(),
            LacParams::new(-0.5, 1.5, 0.5, (0.0, 4.0)).unwrap(),
            LacParams::new(0.0, -0.4, 0.1, (0.0, 4.0)).unwrap(),
        ];
        for p in laws {
            let s = 1.3;
            let [k, k1, k2] = p.kappa_derivs(s, 0.0, 4.0);
            let h = 1e-4;
            let fd1 = (p.kappa(s + h) - p.kappa(s - h)) / (2.0 * h);
            let fd2 = (p.kappa(s + h) - 2.0 * k + p.kappa(s - h)) / (h * h);
            assert!((k1 - fd1).abs() < 1e-6, "{p:?}");
            assert!((k2 - fd2).abs() < 1e-5, "{p:?}");
        }
    }

    #[test]
    fn clothoid_derivatives_at_zero() {
        let p = LacParams::clothoid(1.0, (0.0, 1.0)).unwrap();
        assert_eq!(p.kappa_derivs(0.0, 0.0, 1.0), [0.0, 2.0, 0.0]);
    }

    #[test]
    fn invalid_params() {
        assert!(LacParams::new(1.0, 0.0, 1.0, (0.0, 1.0)).is_err());
        assert!(matches!(
            LacParams::new(1.0, 1.0, -2.0, (0.0, 1.0)),
            Err(CurveError::DomainViolation { .. })
        ));
    }
}
