mod common;

use std::f64::consts::{E, SQRT_2};
use std::sync::Arc;

use aesthetic_curves::curve_core::*;
use aesthetic_curves::lac_msa::*;
use aesthetic_curves::{CurveError, Vec2};
use common::{aligned_distance, fresnel, GraphSpline};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: [f64; 3] = [0.05, 0.2, 0.5];

fn arc(c: &Curve<f64>) -> ArcLengthCurve<f64> {
    ArcLengthCurve::new(c).unwrap()
}

fn lac(alpha: f64, xi: f64, eta: f64, domain: (f64, f64)) -> ArcLengthCurve<f64> {
    let p = LacParams::new(alpha, xi, eta, domain).unwrap();
    arc(&generate_lac(&p, 2000).unwrap())
}

fn analytic(a: Analytic<f64>, lo: f64, hi: f64) -> ArcLengthCurve<f64> {
    arc(&Curve::analytic(a, (lo, hi), lo).unwrap())
}

fn positive_corpus() -> Vec<(f64, ArcLengthCurve<f64>)> {
    vec![
        (-2.0, lac(-2.0, 1.0, 1.0, (0.0, 3.0))),
        (-1.0, lac(-1.0, 2.0, 0.5, (0.0, 3.0))),
        (-0.5, lac(-0.5, 1.0, 1.0, (0.0, 2.0))),
        (0.0, lac(0.0, 0.5, 0.0, (0.0, 3.0))),
        (0.5, lac(0.5, 1.0, 1.0, (0.0, 3.0))),
        (1.0, lac(1.0, 1.0, SQRT_2, (0.0, 3.0))),
        (2.0, lac(2.0, 1.0, 1.0, (0.0, 3.0))),
    ]
}

#[test]
fn reparam_examples() {
    let p = LacParams::new(1.0, 1.0, 1.0, (0.0, 2.0)).unwrap();
    let r = msa_reparam(&p, 1.0).unwrap();
    for t in [0.0f64, 0.3, 1.1] {
        assert!((r.s(t) - (t.exp() - 1.0)).abs() < 1e-15);
        for eps in EPS {
            assert!((r.shifted_s(t, eps) - eps.exp() * r.s(t)).abs() < 1e-14);
        }
    }
    assert!((r.mu() - E).abs() < 1e-15 && (r.nu() - E).abs() < 1e-15);

    let p = LacParams::new(0.0, 2.0, 0.3, (0.0, 2.0)).unwrap();
    let r = msa_reparam(&p, 1.5).unwrap();
    for t in [0.0f64, 0.3, 1.1] {
        // t = (β/ξ) s
        assert!((r.t(r.s(t)) - t).abs() < 1e-15);
        assert!((r.s(t) - 2.0 / 1.5 * t).abs() < 1e-15);
        assert!((r.shifted_s(t, 0.4) - r.s(t)).abs() < 1e-15);
    }
    assert_eq!(r.mu(), 1.0);

    let r = MsaReparam::circle(1.0, 1.0);
    assert!((r.mu() - E).abs() < 1e-15);
    assert_eq!(r.nu(), 1.0);

    let p = LacParams::new(-1.0, 2.0, 0.0, (0.0, 2.0)).unwrap();
    assert_eq!(msa_reparam(&p, 1.0).unwrap_err(), CurveError::ZeroEta);
}

#[test]
fn exponential_nu_is_measured() {
    // ρ(s(t + ε)) / ρ(s(t)) = e^{ξ (ξ/β) ε}
    let (xi, eta, beta) = (0.5, 0.2, 1.0);
    let p = LacParams::new(0.0, xi, eta, (0.0, 3.0)).unwrap();
    let r = msa_reparam(&p, beta).unwrap();
    let (t, eps) = (0.7, 0.3f64);
    let ratio = lac_radius(&p, r.s(t + eps)).unwrap() / lac_radius(&p, r.s(t)).unwrap();
    assert!((ratio - r.nu().powf(eps)).abs() < 1e-14);
}

#[test]
fn spiral_has_msa() {
    let t_hi = (1.0 + 4.0 / SQRT_2).ln();
    let curve = analytic(Analytic::LogSpiral { a: 1.0, b: 1.0 }, 0.0, t_hi);
    let rep = verify_msa(&curve, 1.0, &EPS, 1e-6).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert!((rep.mu.unwrap() - E).abs() < 1e-12);
    assert!((rep.nu.unwrap() - E).abs() < 1e-6);
    let Some(LacFamily::Lac(p)) = rep.fitted else { panic!() };
    assert!((p.alpha - 1.0).abs() < 1e-6 && (p.xi - 1.0).abs() < 1e-6 && (p.eta - SQRT_2).abs() < 1e-6);
    assert_eq!(rep.tested_eps, EPS.to_vec());
}

#[test]
fn line_has_arbitrary_constants() {
    let line = Analytic::Line {
        origin: Vec2::new(1.0, 2.0),
        direction: Vec2::new(3.0, -1.0),
    };
    let rep = verify_msa(&analytic(line, -1.0, 2.0), 1.0, &EPS, 1e-6).unwrap();
    assert!(rep.holds && rep.is_line());
    assert_eq!((rep.mu, rep.nu), (None, None));
}

#[test]
fn circle_constants() {
    let c = Analytic::Circle {
        center: Vec2::new(0.0, 0.0),
        radius: 2.0,
    };
    let rep = verify_msa(&analytic(c, 0.0, 2.0), 0.7, &[0.05, 0.1], 1e-6).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert!(matches!(rep.fitted, Some(LacFamily::Circle { radius }) if (radius - 2.0).abs() < 1e-12));
    assert!((rep.mu.unwrap() - 0.7f64.exp()).abs() < 1e-15);
    assert_eq!(rep.nu, Some(1.0));
}

#[test]
fn ellipse_fails() {
    let e = analytic(Analytic::Ellipse { a: 2.0, b: 1.0 }, 0.0, std::f64::consts::PI);
    let rep = verify_msa(&e, 1.0, &EPS, 1e-6).unwrap();
    assert!(!rep.holds);
    assert!(rep.fitted.is_none());
    assert!(rep.branches.iter().all(|b| b.residual > 1e-3), "{:?}", rep.branches);
}

#[test]
fn ellipse_fit_has_no_tag() {
    let e = analytic(Analytic::Ellipse { a: 2.0, b: 1.0 }, 0.1, 1.4);
    let samples: Vec<(f64, f64)> = (0..40)
        .map(|k| {
            let (lo, hi) = e.s_range();
            let s = lo + (hi - lo) * k as f64 / 39.0;
            (s, e.radius(s).finite().unwrap())
        })
        .collect();
    let fit = fit_lac(&samples, 1e-6).unwrap();
    assert!(fit.best.is_none());
    assert!(fit.best_residual() > 1e-3, "{}", fit.best_residual());
}

#[test]
fn generated_lacs_have_msa() {
    for (alpha, curve) in positive_corpus() {
        let rep = verify_msa(&curve, 1.0, &EPS, 1e-6).unwrap();
        assert!(rep.holds && rep.residual < 1e-6, "alpha {alpha}: {rep:?}");
        assert!(!rep.tested_eps.is_empty());
        let Some(LacFamily::Lac(p)) = rep.fitted else {
            panic!("alpha {alpha}: {rep:?}")
        };
        assert!((p.alpha - alpha).abs() < 1e-5, "alpha {alpha}: {p:?}");
        if alpha != 0.0 {
            let (mu, nu) = (rep.mu.unwrap(), rep.nu.unwrap());
            assert!((nu.ln() - mu.ln() / p.alpha).abs() < 1e-8);
        }
    }
}

#[test]
fn negative_beta_works_too() {
    let (_, curve) = positive_corpus().remove(6);
    let rep = verify_msa(&curve, -1.0, &EPS, 1e-6).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert!((rep.mu.unwrap() - (-1f64).exp()).abs() < 1e-15);
}

fn random_spline(seed: u64) -> ArcLengthCurve<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..8).map(|i| i as f64).collect();
    let y: Vec<f64> = x.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
    let spline = GraphSpline::new(x, y);
    arc(&Curve::custom(Arc::new(spline), (0.0, 7.0), 0.0).unwrap())
}

#[test]
fn negative_corpus_fails() {
    let corpus = [
        ("ellipse", analytic(Analytic::Ellipse { a: 2.0, b: 1.0 }, 0.0, 3.0)),
        ("hyperbola", analytic(Analytic::Hyperbola { a: 1.0, b: 1.0 }, -1.0, 1.5)),
        ("sine", analytic(Analytic::Sine { amp: 1.0, freq: 1.0 }, 0.0, 6.0)),
        ("spline", random_spline(7)),
    ];
    for (name, c) in corpus {
        let rep = verify_msa(&c, 1.0, &EPS, 1e-6).unwrap();
        assert!(!rep.holds, "{name}: {rep:?}");
        let best = rep.branches.first().map_or(f64::INFINITY, |b| b.residual);
        assert!(best > 1e-3, "{name}: {best}");
    }
}

#[test]
fn generator_matches_formula() {
    for (alpha, xi, eta) in [(2.0, 1.0, 1.0), (-0.5, 1.0, 1.0), (0.0, -0.4, 0.3), (-1.0, 2.0, 0.5)] {
        let p = LacParams::new(alpha, xi, eta, (0.0, 3.0)).unwrap();
        let c = generate_lac(&p, 1000).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..=300 {
            let s = 3.0 * k as f64 / 300.0;
            let r = curvature_radius(&c, s).unwrap().finite().unwrap();
            worst = worst.max((r - lac_radius(&p, s).unwrap()).abs());
        }
        assert!(worst < 1e-6, "alpha {alpha}: {worst}");
    }
}

#[test]
fn large_alpha_approaches_circle() {
    let (alpha, rho0, xi0) = (1e3, 2.0f64, 0.5);
    let scale = rho0.powf(alpha);
    let p = LacParams::new(alpha, scale * xi0, scale, (0.0, 1.0)).unwrap();
    let c = generate_lac(&p, 1000).unwrap();
    for k in 0..=50 {
        let r = c.radius(k as f64 / 50.0).finite().unwrap();
        assert!((r - rho0).abs() < 1e-3, "{r}");
    }
}

#[test]
fn generated_spiral_is_congruent() {
    let s_max = 4.0;
    let p = LacParams::log_spiral(1.0, 1.0, (0.0, s_max)).unwrap();
    let c = generate_lac(&p, 2000).unwrap();
    let n = 400;
    let (a, b): (Vec<_>, Vec<_>) = (0..=n)
        .map(|k| {
            let s = s_max * k as f64 / n as f64;
            let g = c.eval(s);
            // s = √2 (e^t − 1) on e^{(1+i)t}
            let t = (1.0 + s / SQRT_2).ln();
            let z = (t.exp() * t.cos(), t.exp() * t.sin());
            ((g.x, g.y), z)
        })
        .unzip();
    let d = aligned_distance(&a, &b);
    assert!(d < 1e-6, "{d}");
}

#[test]
fn clothoid_endpoint_matches_fresnel() {
    let p = LacParams::clothoid(1.0, (0.0, 2.0)).unwrap();
    let c = generate_lac(&p, 2000).unwrap();
    let end = c.eval(2.0);
    let (fx, fy) = fresnel(1.0, 2.0);
    let err = (end.x - fx).hypot(end.y - fy);
    assert!(err < 1e-7, "{err}");
}

#[test]
fn lcg_gradient_of_generated_lac() {
    use aesthetic_curves::lch_lcg::lcg_gradient;
    for (alpha, curve) in positive_corpus() {
        let (lo, hi) = curve.s_range();
        for k in 1..10 {
            let s = lo + (hi - lo) * k as f64 / 10.0;
            let g = lcg_gradient(&curve, s).unwrap();
            assert!((g - alpha).abs() < 1e-5, "alpha {alpha} at {s}: {g}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_identity_is_algebraic(
        alpha in prop_oneof![-3.0..-0.2f64, 0.2..3.0f64],
        xi in prop_oneof![-2.0..-0.1f64, 0.1..2.0f64],
        eta in 0.1..3.0f64,
        beta in prop_oneof![-2.0..-0.1f64, 0.1..2.0f64],
        t in -1.0..1.0f64,
        eps in 0.0..1.0f64,
    ) {
        let p = LacParams { alpha, xi, eta, domain: (0.0, 1.0) };
        let r = msa_reparam(&p, beta).unwrap();
        let lhs = r.shifted_s(t, eps);
        let rhs = r.mu().powf(eps) * r.s(t);
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()) * (eta / xi).abs().max(1.0));
        prop_assert!((r.nu().ln() - r.mu().ln() / alpha).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_power_law(
        alpha in prop_oneof![-3.0..-0.3f64, 0.3..3.0f64],
        xi in 0.2..2.0f64,
        eta in 0.5..3.0f64,
    ) {
        let samples: Vec<(f64, f64)> = (0..30)
            .map(|k| {
                let s = 3.0 * k as f64 / 29.0;
                (s, (xi * s + eta).powf(1.0 / alpha))
            })
            .collect();
        let fit = fit_lac(&samples, 1e-6).unwrap();
        let best = fit.best.unwrap();
        prop_assert!(best.residual < 1e-8, "{:?}", fit.branches);
        if let LacFamily::Lac(p) = best.family {
            prop_assert!((p.alpha - alpha).abs() < 1e-5 * alpha.abs().max(1.0), "{p:?}");
        }
    }
}
