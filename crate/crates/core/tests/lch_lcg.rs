mod common;

use std::f64::consts::SQRT_2;

use aesthetic_curves::curve_core::*;
use aesthetic_curves::lac_msa::{generate_lac, LacParams};
use aesthetic_curves::lch_lcg::*;
use aesthetic_curves::{AffineMap, CurveError, Mat2, Vec2};
use proptest::prelude::*;

fn parabola(lo: f64, hi: f64) -> ArcLengthCurve<f64> {
    let c = Curve::analytic(Analytic::Parabola { a: 5.0, b: 1.0 }, (lo, hi), lo).unwrap();
    ArcLengthCurve::new(&c).unwrap()
}

/// `e^{(1+i)t}` on arc length `[0, s_max]`.
fn spiral(s_max: f64) -> ArcLengthCurve<f64> {
    let t_hi = (1.0 + s_max / SQRT_2).ln();
    let c = Curve::analytic(Analytic::LogSpiral { a: 1.0, b: 1.0 }, (0.0, t_hi), 0.0).unwrap();
    ArcLengthCurve::new(&c).unwrap()
}

fn fig2_x(t: f64) -> f64 {
    1.5 * (4.0 * t * t + 25.0).ln() - 10f64.ln()
}

fn fig2_y(t: f64) -> f64 {
    0.5 * (4.0 * t * t + 25.0).ln() - (12.0 * t / (4.0 * t * t + 25.0)).ln()
}

#[test]
fn parabola_lcg_matches_closed_form() {
    let arc = parabola(0.0, 5.0);
    let plot = compute_lcg(&arc, 400).unwrap();
    assert_eq!(plot.monotone_segments.len(), 1);
    let mut worst: f64 = 0.0;
    for p in &plot.samples {
        let t = arc.t_of_s(p.s);
        if t < 0.1 {
            continue;
        }
        worst = worst.max((p.x - fig2_x(t)).abs()).max((p.y - fig2_y(t)).abs());
    }
    assert!(worst < 1e-6, "sup error {worst}");
}

#[test]
fn log_spiral_lcg_is_unit_slope_line() {
    let plot = compute_lcg(&spiral(10.0), 64).unwrap();
    for p in &plot.samples {
        assert!((p.grad - 1.0).abs() < 1e-6, "{p:?}");
        // e^Y = ρ/ξ with ξ = 1.
        assert!((p.y - p.x).abs() < 1e-9);
    }
}

#[test]
fn circle_is_degenerate() {
    let c = Curve::analytic(
        Analytic::Circle {
            center: Vec2::zero(),
            radius: 2.0,
        },
        (0.0, 3.0),
        0.0,
    )
    .unwrap();
    let arc = ArcLengthCurve::new(&c).unwrap();
    assert_eq!(compute_lcg(&arc, 32).unwrap_err(), CurveError::NoMonotoneSegment);
    assert!(matches!(
        compute_lch(&arc, 10, 100),
        Err(CurveError::DegenerateRange { .. })
    ));
    assert!(matches!(
        lcg_gradient(&arc, 1.0),
        Err(CurveError::StationaryRadius { .. })
    ));
}

#[test]
fn too_few_lcg_samples() {
    assert!(matches!(
        compute_lcg(&spiral(1.0), 15),
        Err(CurveError::InsufficientSamples { .. })
    ));
}

#[test]
fn gradient_of_lacs() {
    for (alpha, xi, eta) in [(2.0f64, 2.0, 3.0), (0.0, 1.0, 0.0), (-1.0, 2.0, 0.5)] {
        let p = LacParams::new(alpha, xi, eta, (0.0, 2.0)).unwrap();
        let arc = ArcLengthCurve::new(&generate_lac(&p, 4000).unwrap()).unwrap();
        for &s in &[0.3, 1.0, 1.7] {
            let g = lcg_gradient(&arc, s).unwrap();
            assert!((g - alpha).abs() < 1e-6, "alpha {alpha}: {g}");
        }
    }
}

#[test]
fn parabola_gradient_tends_to_two_thirds() {
    let c = Curve::analytic(Analytic::Parabola { a: 5.0, b: 1.0 }, (0.0, 1000.0), 0.0).unwrap();
    let arc = ArcLengthCurve::new(&c).unwrap();
    let g: f64 = lcg_gradient(&arc, arc.s_of_t(1000.0)).unwrap();
    assert!((g - 2.0 / 3.0).abs() < 1e-3, "{g}");
}

#[test]
fn gradient_agrees_with_trace_slope() {
    let arc = parabola(0.5, 5.0);
    let plot = compute_lcg(&arc, 8000).unwrap();
    for w in plot.samples.windows(3).step_by(397) {
        let fd = (w[2].y - w[0].y) / (w[2].x - w[0].x);
        assert!((fd - w[1].grad).abs() < 1e-4, "{fd} vs {}", w[1].grad);
    }
}

#[test]
fn lch_of_fig2_parabola() {
    let arc = parabola(0.0, 5.0);
    let h = compute_lch(&arc, 10, 120).unwrap();
    assert_eq!(h.bins.len(), 10);
    assert!((h.mass() - arc.s_all()).abs() < 1e-12 * arc.s_all());
    assert!((h.x_range.0 - fig2_x(0.0)).abs() < 1e-12);
    assert!((h.x_range.1 - fig2_x(5.0)).abs() < 1e-9);
    // Radius grows monotonically, so the step density tracks e^Y at the bins.
    let ys: Vec<f64> = h.bins.iter().map(|b| b.y.unwrap()).collect();
    assert!(ys[0] > ys[1], "density spike near the vertex");
}

#[test]
fn log_spiral_lch_total_variation() {
    let arc = spiral(10.0);
    let report = convergence_report(&arc, &[(20, 400)], (0.0, 10.0)).unwrap();
    assert!(report.rows[0].tv_error < 0.1, "{:?}", report.rows[0]);
}

#[test]
fn parabola_convergence_grid() {
    let arc = parabola(0.5, 5.0);
    let (x0, x1) = (fig2_x(0.5), fig2_x(5.0));
    let r = convergence_report(&arc, &[(10, 120), (30, 240), (80, 1000)], (x0, x1)).unwrap();
    assert!(r.tv_decreasing, "{r:?}");
    for row in &r.rows {
        assert!(row.interval_error < 1e-9, "full range carries all mass: {row:?}");
        assert!(row.error_budget > 0.0);
    }
}

#[test]
fn log_spiral_rate() {
    let arc = spiral(10.0);
    let grid: Vec<(usize, usize)> = [8usize, 16, 32, 64].iter().map(|&m| (m, 4 * m * m)).collect();
    let r = convergence_report(&arc, &grid, (0.0, 1.0)).unwrap();
    let xs: Vec<f64> = grid.iter().map(|&(m, _)| (m as f64).ln()).collect();
    let ys: Vec<f64> = r.rows.iter().map(|row| row.tv_error.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((slope + 1.0).abs() < 0.3, "slope {slope}");
}

#[test]
fn interval_outside_range_has_zero_error() {
    let arc = spiral(5.0);
    let r = convergence_report(&arc, &[(10, 100)], (50.0, 60.0)).unwrap();
    assert_eq!(r.rows[0].interval_error, 0.0);
}

#[test]
fn non_monotone_radius_is_rejected() {
    let c = Curve::analytic(Analytic::Ellipse { a: 2.0, b: 1.0 }, (0.0, 3.0), 0.0).unwrap();
    let arc = ArcLengthCurve::new(&c).unwrap();
    assert!(matches!(
        convergence_report(&arc, &[(10, 100)], (0.0, 1.0)),
        Err(CurveError::NonMonotoneRadius { .. })
    ));
}

#[test]
fn parallel_report_matches_sequential() {
    let arc = parabola(0.5, 5.0);
    let grid = [(10, 120), (30, 240), (80, 1000), (12, 144)];
    let seq = convergence_report_with(&arc, &grid, (2.0, 3.0), 0).unwrap();
    let par = convergence_report_with(&arc, &grid, (2.0, 3.0), 3).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn histogram_tracks_graph_at_bin_left_edges() {
    let arc = spiral(10.0);
    let err = |m: usize, n: usize| {
        let h = compute_lch(&arc, m, n).unwrap();
        h.bins
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let exact = b.x_left.exp(); // e^{Y(X)} = e^X / ξ
                (h.density(i) - exact).abs() / exact
            })
            .fold(0.0, f64::max)
    };
    let mut prev = err(16, 4096);
    for (m, n) in [(32, 32768), (64, 262_144)] {
        let e = err(m, n);
        let ratio = prev / e;
        assert!((ratio - 2.0).abs() <= 0.4, "ratio {ratio} at M = {m}");
        prev = e;
    }
}

#[test]
fn scaling_shifts_the_graph() {
    let c = Curve::analytic(Analytic::Parabola { a: 5.0, b: 1.0 }, (0.5, 5.0), 0.5).unwrap();
    let base = compute_lcg(&ArcLengthCurve::new(&c).unwrap(), 64).unwrap();
    for k in [0.1f64, 3.0, 42.0] {
        let img = apply_affine(&c, &AffineMap::linear(Mat2::diag(k, k))).unwrap();
        let plot = compute_lcg(&ArcLengthCurve::new(&img).unwrap(), 64).unwrap();
        assert_eq!(plot.samples.len(), base.samples.len());
        for (p, q) in base.samples.iter().zip(&plot.samples) {
            assert!((q.x - p.x - k.ln()).abs() < 1e-8);
            assert!((q.y - p.y - k.ln()).abs() < 1e-8);
            assert!((q.grad - p.grad).abs() < 1e-8);
        }
    }
}

#[test]
fn inflection_splits_segments() {
    let c = Curve::analytic(Analytic::Sine { amp: 1.0, freq: 1.0 }, (-1.0, 1.0), 0.0).unwrap();
    let arc = ArcLengthCurve::new(&c).unwrap();
    let plot = compute_lcg(&arc, 32).unwrap();
    assert_eq!(plot.monotone_segments.len(), 2);
    let cut: f64 = plot.monotone_segments[0].1;
    assert!(cut.abs() < 1e-9, "inflection at s = 0, found {cut}");
    assert!(matches!(
        compute_lch(&arc, 10, 100),
        Err(CurveError::InfiniteRadius { .. })
    ));
    let right = ArcLengthCurve::new(&c.restrict(0.05, 1.0).unwrap()).unwrap();
    assert!(compute_lch(&right, 10, 100).is_ok());
    let left = ArcLengthCurve::new(&c.restrict(-1.0, -0.05).unwrap()).unwrap();
    assert!(compute_lch(&left, 10, 100).is_ok());
}

#[test]
fn invalid_bins() {
    let arc = spiral(1.0);
    assert!(matches!(compute_lch(&arc, 1, 10), Err(CurveError::InvalidParams(_))));
    assert!(matches!(compute_lch(&arc, 10, 5), Err(CurveError::InvalidParams(_))));
}

#[test]
fn empty_bins_are_marked() {
    // Few divisions over a strongly curved range leave gaps at the sparse end.
    let arc = parabola(0.0, 5.0);
    let h = compute_lch(&arc, 40, 40).unwrap();
    assert!(h.bins.iter().any(|b| b.y.is_none() && b.count == 0));
    assert_eq!(h.bins.len(), 40);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mass_is_conserved(a in 0.3..4.0f64, hi in 1.0..6.0f64, m in 2usize..40, extra in 0usize..400) {
        let c = Curve::analytic(Analytic::Parabola { a, b: 1.0 }, (0.2, 0.2 + hi), 0.2).unwrap();
        let arc = ArcLengthCurve::new(&c).unwrap();
        let h = compute_lch(&arc, m, m + extra).unwrap();
        prop_assert!((h.mass() - arc.s_all()).abs() <= 1e-12 * arc.s_all());
        prop_assert_eq!(h.bins.iter().map(|b| b.count).sum::<usize>(), m + extra);
    }
}
