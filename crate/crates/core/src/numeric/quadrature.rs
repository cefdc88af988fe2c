//! Adaptive Gauss–Kronrod quadrature and monotone cumulative integrals.

use crate::scalar::{c, Scalar};

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7–K15 panel: returns `(kronrod estimate, |kronrod − gauss|)`.
pub fn gauss_kronrod_15<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let fc = f(mid);
    let mut kronrod = fc * c(WGK[7]);
    let mut gauss = fc * c(WG[3]);
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += pair * c(WGK[j]);
        if j % 2 == 1 {
            gauss += pair * c(WG[j / 2]);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive bisection on G7–K15 panels until the summed error estimate is
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T, rel_tol: T, abs_tol: T) -> T {
    if a == b {
        return T::zero();
    }
    let (whole, err) = gauss_kronrod_15(f, a, b);
    let rel_tol = rel_tol.max(T::noise());
    if err <= abs_tol.max(rel_tol * whole.abs()) {
        return whole;
    }
    // Work list of (a, b, value, error, depth).
    let budget = abs_tol.max(rel_tol * whole.abs());
    let mut panels = vec![(a, b, whole, err, 0u32)];
    let mut done = T::zero();
    const MAX_DEPTH: u32 = 48;
    const MAX_PANELS: usize = 20_000;
    let mut visited = 0usize;
    while let Some((pa, pb, val, perr, depth)) = panels.pop() {
        visited += 1;
        // Share the budget in proportion to panel width.
        let share = budget * ((pb - pa) / (b - a)).abs();
        if perr <= share || depth >= MAX_DEPTH || visited > MAX_PANELS {
            done += val;
            continue;
        }
        let pm = (pa + pb) * c(0.5);
        let (l, le) = gauss_kronrod_15(f, pa, pm);
        let (r, re) = gauss_kronrod_15(f, pm, pb);
        panels.push((pa, pm, l, le, depth + 1));
        panels.push((pm, pb, r, re, depth + 1));
    }
    done
}

/// [`integrate`] over `[a, b]` split at the `breaks` lying strictly inside.
pub fn integrate_pieces<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T, breaks: &[T], rel_tol: T) -> T {
    let inner = breaks.iter().copied().filter(|&x| x > a && x < b);
    let mut acc = T::zero();
    let mut prev = a;
    for x in inner.chain(std::iter::once(b)) {
        acc += integrate(f, prev, x, rel_tol, T::zero());
        prev = x;
    }
    acc
}

/// Cumulative integral `F(t) = ∫_{base}^{t} f` of a positive integrand,
/// tabulated at knots and refined between them on demand.
#[derive(Clone, Debug)]
pub struct CumulativeMap<T> {
    knots: Vec<T>,
    /// `∫_{knots[0]}^{knots[k]} f`.
    values: Vec<T>,
    base_value: T,
    rel_tol: T,
}

impl<T: Scalar> CumulativeMap<T> {
    /// Tabulates `∫ f` on `knots` (strictly increasing) with the origin at
    /// `base`, which must lie within the knot range.
    pub fn build(f: &impl Fn(T) -> T, knots: Vec<T>, base: T, rel_tol: T) -> Self {
        assert!(knots.len() >= 2, "need at least two knots");
        let mut values = Vec::with_capacity(knots.len());
        values.push(T::zero());
        let mut acc = T::zero();
        for w in knots.windows(2) {
            acc += integrate(f, w[0], w[1], rel_tol, T::zero());
            values.push(acc);
        }
        let mut map = CumulativeMap {
            knots,
            values,
            base_value: T::zero(),
            rel_tol,
        };
        map.base_value = map.raw_value(f, base);
        map
    }

    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    fn cell_of(&self, t: T) -> usize {
        let n = self.knots.len();
        match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    fn raw_value(&self, f: &impl Fn(T) -> T, t: T) -> T {
        let k = self.cell_of(t);
        let t0 = self.knots[k];
        if t == t0 {
            return self.values[k];
        }
        let scale = (self.values[k + 1] - self.values[k]).abs();
        self.values[k] + integrate(f, t0, t, self.rel_tol, scale * self.rel_tol)
    }

    /// `∫_{base}^{t} f`. Values outside the knot range extrapolate by
    /// integrating past the end knots.
    pub fn value(&self, f: &impl Fn(T) -> T, t: T) -> T {
        self.raw_value(f, t) - self.base_value
    }

    pub fn lower(&self) -> T {
        self.values[0] - self.base_value
    }

    pub fn upper(&self) -> T {
        *self.values.last().unwrap() - self.base_value
    }

    /// Solves `value(t) = target` by safeguarded Newton iteration.
    pub fn inverse(&self, f: &impl Fn(T) -> T, target: T) -> T {
        let raw = target + self.base_value;
        let n = self.knots.len();
        let (mut lo, mut hi, mut t) = if raw <= self.values[0] {
            let t0 = self.knots[0];
            (T::neg_infinity(), t0, t0)
        } else if raw >= self.values[n - 1] {
            let t1 = self.knots[n - 1];
            (t1, T::infinity(), t1)
        } else {
            let k = match self
                .values
                .binary_search_by(|v| v.partial_cmp(&raw).unwrap_or(std::cmp::Ordering::Less))
            {
                Ok(i) => return self.knots[i],
                Err(i) => i - 1,
            };
            let (v0, v1) = (self.values[k], self.values[k + 1]);
            let (a, b) = (self.knots[k], self.knots[k + 1]);
            let w = (raw - v0) / (v1 - v0);
            (a, b, a + (b - a) * w)
        };
        let scale = (self.upper() - self.lower()).abs().max(T::min_positive_value());
        for _ in 0..100 {
            let g = self.raw_value(f, t) - raw;
            if g.abs() <= scale * T::epsilon() * c(4.0) {
                return t;
            }
            if g > T::zero() {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }
            let slope = f(t);
            let mut next = t - g / slope;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = if lo.is_finite() && hi.is_finite() {
                    (lo + hi) * c(0.5)
                } else {
                    // Unbounded side: clamp the step to keep extrapolation sane.
                    let span = self.knots[n - 1] - self.knots[0];
                    let step = (-g / slope).max(-span).min(span);
                    t + step
                };
            }
            if (next - t).abs() <= T::epsilon() * (T::one() + t.abs()) {
                return next;
            }
            t = next;
        }
        t
    }
}
