//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

/// Adaptive Simpson quadrature, independent of the library's Gauss–Kronrod code.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `(∫₀ᵗ cos(a u²) du, ∫₀ᵗ sin(a u²) du)`.
pub fn fresnel(a: f64, t: f64) -> (f64, f64) {
    (
        simpson(&|u| (a * u * u).cos(), 0.0, t, 1e-14),
        simpson(&|u| (a * u * u).sin(), 0.0, t, 1e-14),
    )
}

/// Relative error with an absolute floor of 1.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Largest pointwise distance between `a` and `b` after the best rigid
/// motion (orientation preserving) taking `a` onto `b`, by 2-D Procrustes.
pub fn aligned_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let mean = |v: &[(f64, f64)]| {
        let (x, y) = v.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
        (x / n, y / n)
    };
    let (ma, mb) = (mean(a), mean(b));
    let (mut sc, mut ss) = (0.0, 0.0);
    for (p, q) in a.iter().zip(b) {
        let (px, py) = (p.0 - ma.0, p.1 - ma.1);
        let (qx, qy) = (q.0 - mb.0, q.1 - mb.1);
        sc += px * qx + py * qy;
        ss += px * qy - py * qx;
    }
    let th = ss.atan2(sc);
    let (c, s) = (th.cos(), th.sin());
    a.iter()
        .zip(b)
        .map(|(p, q)| {
            let (px, py) = (p.0 - ma.0, p.1 - ma.1);
            let x = c * px - s * py + mb.0;
            let y = s * px + c * py + mb.1;
            (x - q.0).hypot(y - q.1)
        })
        .fold(0.0, f64::max)
}

/// Natural cubic spline through `(x_i, y_i)`, as the graph `t ↦ (t, S(t))`.
#[derive(Debug, Clone)]
pub struct GraphSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl GraphSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        // Tridiagonal system for the second derivatives, m_0 = m_{n-1} = 0.
        let mut diag = vec![1.0; n];
        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut lower = vec![0.0; n];
        for i in 1..n - 1 {
            lower[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        for i in 1..n {
            let f = lower[i] / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        for i in (0..n).rev() {
            let next = if i + 1 < n { upper[i] * m[i + 1] } else { 0.0 };
            m[i] = (rhs[i] - next) / diag[i];
        }
        GraphSpline { x, y, m }
    }

    /// `(S, S', S'', S''')` at `t`.
    pub fn eval(&self, t: f64) -> [f64; 4] {
        let n = self.x.len();
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let (a, b) = (self.x[i + 1] - t, t - self.x[i]);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let s = m0 * a.powi(3) / (6.0 * h)
            + m1 * b.powi(3) / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * a
            + (y1 / h - m1 * h / 6.0) * b;
        let s1 = -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) - (y0 / h - m0 * h / 6.0) + (y1 / h - m1 * h / 6.0);
        let s2 = (m0 * a + m1 * b) / h;
        let s3 = (m1 - m0) / h;
        [s, s1, s2, s3]
    }
}

impl aesthetic_curves::curve_core::Parametric<f64> for GraphSpline {
    fn jet(&self, t: f64) -> aesthetic_curves::curve_core::Jet<f64> {
        use aesthetic_curves::Vec2;
        let [s, s1, s2, s3] = self.eval(t);
        aesthetic_curves::curve_core::Jet {
            p: Vec2::new(t, s),
            d1: Vec2::new(1.0, s1),
            d2: Vec2::new(0.0, s2),
            d3: Vec2::new(0.0, s3),
            d4: Vec2::new(0.0, 0.0),
        }
    }
}
