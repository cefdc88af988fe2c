//! Numerical building blocks: quadrature, finite-difference stencils and a
//! fixed-step Runge–Kutta integrator.

pub mod quadrature;
pub mod stencil;

use crate::scalar::{c, Scalar};

/// One classical fourth-order Runge–Kutta step of `y' = f(x, y)`.
pub fn rk4_step<T: Scalar, const N: usize>(f: &impl Fn(T, &[T; N]) -> [T; N], x: T, y: &[T; N], h: T) -> [T; N] {
    let half = h * c(0.5);
    let k1 = f(x, y);
    let y2 = axpy(y, half, &k1);
    let k2 = f(x + half, &y2);
    let y3 = axpy(y, half, &k2);
    let k3 = f(x + half, &y3);
    let y4 = axpy(y, h, &k3);
    let k4 = f(x + h, &y4);
    let sixth = h / c(6.0);
    let mut out = *y;
    for i in 0..N {
        out[i] += sixth * (k1[i] + c::<T>(2.0) * (k2[i] + k3[i]) + k4[i]);
    }
    out
}

fn axpy<T: Scalar, const N: usize>(y: &[T; N], a: T, k: &[T; N]) -> [T; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// `n + 1` equally spaced points covering `[a, b]`.
pub fn linspace<T: Scalar>(a: T, b: T, n: usize) -> Vec<T> {
    let n_t = T::from_usize_lossy(n);
    (0..=n)
        .map(|i| {
            if i == n {
                b
            } else {
                a + (b - a) * T::from_usize_lossy(i) / n_t
            }
        })
        .collect()
}
