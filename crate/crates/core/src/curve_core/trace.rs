//! Curves obtained by integrating a moving-frame equation.

use std::fmt;
use std::sync::Arc;

use crate::geom::Vec2;
use crate::numeric::rk4_step;
use crate::numeric::stencil::derivatives_1_2;
use crate::scalar::{c, Scalar};

use super::jet::Jet;

/// A curvature function of the curve parameter.
pub trait CurvatureLaw<T: Scalar>: Send + Sync {
    fn kappa(&self, s: T) -> T;

    /// `[κ, κ', κ'']` at `s`, with `[lo, hi]` the range the law is used on.
    ///
    /// The default differentiates [`kappa`](Self::kappa) numerically.
    fn kappa_derivs(&self, s: T, lo: T, hi: T) -> [T; 3] {
        let h = T::epsilon().powf(c(1.0 / 6.0)) * s.abs().max(T::one()).min((hi - lo) / c(8.0));
        let (d1, d2) = derivatives_1_2(&|u| self.kappa(u), s, h, lo, hi);
        [self.kappa(s), d1, d2]
    }
}

/// Wraps a closure as a [`CurvatureLaw`].
#[derive(Clone, Copy)]
pub struct FnLaw<F>(pub F);

impl<T: Scalar, F: Fn(T) -> T + Send + Sync> CurvatureLaw<T> for FnLaw<F> {
    fn kappa(&self, s: T) -> T {
        (self.0)(s)
    }
}

/// Constant curvature, with exact zero derivatives.
#[derive(Clone, Copy, Debug)]
pub struct ConstantLaw<T>(pub T);

impl<T: Scalar> CurvatureLaw<T> for ConstantLaw<T> {
    fn kappa(&self, _s: T) -> T {
        self.0
    }

    fn kappa_derivs(&self, _s: T, _lo: T, _hi: T) -> [T; 3] {
        [self.0, T::zero(), T::zero()]
    }
}

/// Which frame equation the trace integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameGeometry {
    /// `e1' = κ e2`, `e2' = −κ e1` with orthonormal frame; the parameter is arc length.
    Euclidean,
    /// `e1' = e2`, `e2' = −κ e1` with `det(e1, e2) = 1`; the parameter is equiaffine.
    Equiaffine,
}

/// RK4 solution of a frame equation on a uniform grid.
///
/// Off-grid values take one RK4 sub-step from the node on the left, so the
/// trace is continuous and as accurate between nodes as at them.
pub struct FrameTrace<T: Scalar> {
    geometry: FrameGeometry,
    law: Arc<dyn CurvatureLaw<T>>,
    lo: T,
    hi: T,
    h: T,
    /// `[x, y, e1x, e1y, e2x, e2y]` at each node.
    states: Vec<[T; 6]>,
}

impl<T: Scalar> fmt::Debug for FrameTrace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrameTrace")
            .field("geometry", &self.geometry)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("steps", &(self.states.len() - 1))
            .finish()
    }
}

impl<T: Scalar> FrameTrace<T> {
    pub(crate) fn integrate(
        geometry: FrameGeometry,
        law: Arc<dyn CurvatureLaw<T>>,
        lo: T,
        hi: T,
        steps: usize,
    ) -> Self {
        let h = (hi - lo) / T::from_usize_lossy(steps);
        let mut states = Vec::with_capacity(steps + 1);
        let mut y = [T::zero(), T::zero(), T::one(), T::zero(), T::zero(), T::one()];
        states.push(y);
        {
            let rhs = Self::rhs_fn(geometry, &*law);
            for k in 0..steps {
                let s = lo + h * T::from_usize_lossy(k);
                y = rk4_step(&rhs, s, &y, h);
                states.push(y);
            }
        }
        FrameTrace {
            geometry,
            law,
            lo,
            hi,
            h,
            states,
        }
    }

    fn rhs_fn(geometry: FrameGeometry, law: &dyn CurvatureLaw<T>) -> impl Fn(T, &[T; 6]) -> [T; 6] + '_ {
        move |s, y| {
            let k = law.kappa(s);
            match geometry {
                FrameGeometry::Euclidean => [y[2], y[3], k * y[4], k * y[5], -k * y[2], -k * y[3]],
                FrameGeometry::Equiaffine => [y[2], y[3], y[4], y[5], -k * y[2], -k * y[3]],
            }
        }
    }

    pub fn geometry(&self) -> FrameGeometry {
        self.geometry
    }

    pub fn domain(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn law(&self) -> &dyn CurvatureLaw<T> {
        &*self.law
    }

    /// Node parameters.
    pub fn nodes(&self) -> Vec<T> {
        (0..self.states.len())
            .map(|k| {
                if k + 1 == self.states.len() {
                    self.hi
                } else {
                    self.lo + self.h * T::from_usize_lossy(k)
                }
            })
            .collect()
    }

    fn state(&self, s: T) -> [T; 6] {
        let n = self.states.len() - 1;
        let x = ((s - self.lo) / self.h).floor();
        let k = x.max(T::zero()).to_usize().unwrap_or(0).min(n - 1);
        let sk = self.lo + self.h * T::from_usize_lossy(k);
        let dh = s - sk;
        if dh == T::zero() {
            return self.states[k];
        }
        let rhs = Self::rhs_fn(self.geometry, &*self.law);
        rk4_step(&rhs, sk, &self.states[k], dh)
    }

    pub fn jet(&self, s: T) -> Jet<T> {
        let y = self.state(s);
        let p = Vec2::new(y[0], y[1]);
        let e1 = Vec2::new(y[2], y[3]);
        let e2 = Vec2::new(y[4], y[5]);
        let [k, k1, k2] = self.law.kappa_derivs(s, self.lo, self.hi);
        match self.geometry {
            FrameGeometry::Euclidean => Jet {
                p,
                d1: e1,
                d2: e2.scale(k),
                d3: e2.scale(k1) - e1.scale(k * k),
                d4: e2.scale(k2 - k * k * k) - e1.scale(c::<T>(3.0) * k * k1),
            },
            FrameGeometry::Equiaffine => Jet {
                p,
                d1: e1,
                d2: e2,
                d3: -e1.scale(k),
                d4: -(e1.scale(k1) + e2.scale(k)),
            },
        }
    }
}
