//! Finite-difference weights on arbitrary nodes (Fornberg's recursion).

use crate::scalar::{c, Scalar};

/// Weights `w[m][j]` such that `f^{(m)}(x0) ≈ Σ_j w[m][j] f(nodes[j])` for
/// `m = 0..=max_order`.
pub fn fornberg_weights<T: Scalar>(x0: T, nodes: &[T], max_order: usize) -> Vec<Vec<T>> {
    let n = nodes.len();
    let mut w = vec![vec![T::zero(); n]; max_order + 1];
    w[0][0] = T::one();
    let mut c1 = T::one();
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (T::from_usize_lossy(k) * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - T::from_usize_lossy(k) * w[k - 1][j]) / c3;
            }
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    w
}

/// First and second derivatives of `f` at `x` from five equally spaced
/// samples with spacing `h`, shifted one-sided when `x ± 2h` leaves `[lo, hi]`.
pub fn derivatives_1_2<T: Scalar>(f: &impl Fn(T) -> T, x: T, h: T, lo: T, hi: T) -> (T, T) {
    let mut offsets = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let two_h = h * c(2.0);
    let shift = if x - two_h < lo {
        ((lo - (x - two_h)) / h).ceil().min(c(2.0))
    } else if x + two_h > hi {
        -((x + two_h - hi) / h).ceil().min(c(2.0))
    } else {
        T::zero()
    };
    let shift = shift.to_f64_lossy();
    for o in offsets.iter_mut() {
        *o += shift;
    }
    let nodes: Vec<T> = offsets.iter().map(|&o| x + h * c(o)).collect();
    let w = fornberg_weights(x, &nodes, 2);
    let vals: Vec<T> = nodes.iter().map(|&xn| f(xn)).collect();
    let d1 = w[1].iter().zip(&vals).fold(T::zero(), |s, (&a, &b)| s + a * b);
    let d2 = w[2].iter().zip(&vals).fold(T::zero(), |s, (&a, &b)| s + a * b);
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_five_point_weights() {
        let nodes: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let w = fornberg_weights(0.0, &nodes, 4);
        let d1: [f64; 5] = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        let d2: [f64; 5] = [-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0];
        let d4: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
        for j in 0..5 {
            assert!((w[0][j] - if j == 2 { 1.0f64 } else { 0.0 }).abs() < 1e-15);
            assert!((w[1][j] - d1[j]).abs() < 1e-14);
            assert!((w[2][j] - d2[j]).abs() < 1e-14);
            assert!((w[4][j] - d4[j]).abs() < 1e-13);
        }
    }

    #[test]
    fn off_node_weights_are_exact_for_quartics() {
        let nodes = [0.0, 0.3, 0.7, 1.2, 2.0];
        let x0 = 0.55;
        let w = fornberg_weights(x0, &nodes, 4);
        let p = |x: f64| 2.0 * x.powi(4) - x.powi(3) + 0.5 * x - 1.0;
        let exact = [
            p(x0),
            8.0 * x0.powi(3) - 3.0 * x0 * x0 + 0.5,
            24.0 * x0 * x0 - 6.0 * x0,
            48.0 * x0 - 6.0,
            48.0,
        ];
        for m in 0..=4 {
            let approx: f64 = nodes.iter().zip(&w[m]).map(|(&x, &wi)| wi * p(x)).sum();
            assert!((approx - exact[m]).abs() < 1e-10, "order {m}");
        }
    }

    #[test]
    fn one_sided_near_boundary() {
        let f = |x: f64| x.exp();
        let (d1, d2) = derivatives_1_2(&f, 0.0, 1e-3, 0.0, 1.0);
        assert!((d1 - 1.0).abs() < 1e-10);
        assert!((d2 - 1.0).abs() < 1e-5);
        let (d1, _) = derivatives_1_2(&f, 1.0, 1e-3, 0.0, 1.0);
        assert!((d1 - 1f64.exp()).abs() < 1e-10);
    }
}
