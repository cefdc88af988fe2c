use crate::geom::Vec2;
use crate::numeric::quadrature::integrate;
use crate::scalar::{c, Scalar};

use super::jet::Jet;

/// Closed-form parametric curves with exact derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Analytic<T> {
    /// `center + r (cos t, sin t)`.
    Circle { center: Vec2<T>, radius: T },
    /// `origin + t · direction`.
    Line { origin: Vec2<T>, direction: Vec2<T> },
    /// `(a t, b t²)`.
    Parabola { a: T, b: T },
    /// `(a cos t, b sin t)`.
    Ellipse { a: T, b: T },
    /// `(a cosh t, b sinh t)`.
    Hyperbola { a: T, b: T },
    /// `e^{(a + ib) t}`.
    LogSpiral { a: T, b: T },
    /// `∫₀ᵗ e^{i a u²} du`, unit speed with `ρ = 1/(2 a t)`.
    Clothoid { a: T },
    /// `(t, amp · sin(freq · t))`.
    Sine { amp: T, freq: T },
}

impl<T: Scalar> Analytic<T> {
    pub fn jet(&self, t: T) -> Jet<T> {
        match *self {
            Analytic::Circle { center, radius } => {
                let (s, co) = t.sin_cos();
                let u = Vec2::new(co, s).scale(radius);
                let up = u.perp();
                Jet {
                    p: center + u,
                    d1: up,
                    d2: -u,
                    d3: -up,
                    d4: u,
                }
            }
            Analytic::Line { origin, direction } => Jet {
                p: origin + direction.scale(t),
                d1: direction,
                d2: Vec2::zero(),
                d3: Vec2::zero(),
                d4: Vec2::zero(),
            },
            Analytic::Parabola { a, b } => {
                let two = c::<T>(2.0);
                Jet {
                    p: Vec2::new(a * t, b * t * t),
                    d1: Vec2::new(a, two * b * t),
                    d2: Vec2::new(T::zero(), two * b),
                    d3: Vec2::zero(),
                    d4: Vec2::zero(),
                }
            }
            Analytic::Ellipse { a, b } => {
                let (s, co) = t.sin_cos();
                let p = Vec2::new(a * co, b * s);
                let q = Vec2::new(-a * s, b * co);
                Jet {
                    p,
                    d1: q,
                    d2: -p,
                    d3: -q,
                    d4: p,
                }
            }
            Analytic::Hyperbola { a, b } => {
                let (ch, sh) = (t.cosh(), t.sinh());
                let p = Vec2::new(a * ch, b * sh);
                let q = Vec2::new(a * sh, b * ch);
                Jet {
                    p,
                    d1: q,
                    d2: p,
                    d3: q,
                    d4: p,
                }
            }
            Analytic::LogSpiral { a, b } => {
                let p = Vec2::from_angle(b * t).scale((a * t).exp());
                let w = Vec2::new(a, b);
                let d1 = w.cmul(p);
                let d2 = w.cmul(d1);
                let d3 = w.cmul(d2);
                Jet {
                    p,
                    d1,
                    d2,
                    d3,
                    d4: w.cmul(d3),
                }
            }
            Analytic::Clothoid { a } => {
                let e = Vec2::from_angle(a * t * t);
                let i = Vec2::new(T::zero(), T::one());
                let two = c::<T>(2.0);
                // e' = 2iat e
                let w1 = i.scale(two * a * t);
                let w2 = Vec2::new(-c::<T>(4.0) * a * a * t * t, two * a);
                let w3 = Vec2::new(-c::<T>(8.0) * a * a * t, T::zero()) + w2.cmul(w1);
                Jet {
                    p: clothoid_point(a, t),
                    d1: e,
                    d2: w1.cmul(e),
                    d3: w2.cmul(e),
                    d4: w3.cmul(e),
                }
            }
            Analytic::Sine { amp, freq } => {
                let (s, co) = (freq * t).sin_cos();
                let f2 = freq * freq;
                Jet {
                    p: Vec2::new(t, amp * s),
                    d1: Vec2::new(T::one(), amp * freq * co),
                    d2: Vec2::new(T::zero(), -amp * f2 * s),
                    d3: Vec2::new(T::zero(), -amp * f2 * freq * co),
                    d4: Vec2::new(T::zero(), amp * f2 * f2 * s),
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Analytic::Circle { .. } => "circle",
            Analytic::Line { .. } => "line",
            Analytic::Parabola { .. } => "parabola",
            Analytic::Ellipse { .. } => "ellipse",
            Analytic::Hyperbola { .. } => "hyperbola",
            Analytic::LogSpiral { .. } => "log_spiral",
            Analytic::Clothoid { .. } => "clothoid",
            Analytic::Sine { .. } => "sine",
        }
    }
}

fn clothoid_point<T: Scalar>(a: T, t: T) -> Vec2<T> {
    let tol = T::epsilon() * c(16.0);
    let x = integrate(&|u: T| (a * u * u).cos(), T::zero(), t, tol, T::zero());
    let y = integrate(&|u: T| (a * u * u).sin(), T::zero(), t, tol, T::zero());
    Vec2::new(x, y)
}
