mod common;

use std::f64::consts::{PI, SQRT_2, TAU};

use aesthetic_curves::curve_core::*;
use aesthetic_curves::{AffineMap, CurveError, Mat2, Vec2};
use proptest::prelude::*;

fn circle(r: f64) -> Curve<f64> {
    Curve::analytic(
        Analytic::Circle {
            center: Vec2::zero(),
            radius: r,
        },
        (0.0, TAU),
        0.0,
    )
    .unwrap()
}

fn fig2_parabola() -> Curve<f64> {
    Curve::analytic(Analytic::Parabola { a: 5.0, b: 1.0 }, (0.0, 5.0), 0.0).unwrap()
}

#[test]
fn unit_circle_arc_length_is_parameter() {
    let arc = arc_length_reparam(&circle(1.0), 1e-10).unwrap();
    assert!((arc.s_all() - TAU).abs() < 1e-12);
    for &t in &[0.0, 0.3, 2.0, 5.5] {
        assert!((arc.s_of_t(t) - t).abs() < 1e-12);
        assert!((arc.t_of_s(t) - t).abs() < 1e-12);
    }
}

#[test]
fn segment_has_speed_two() {
    let line = Curve::analytic(
        Analytic::Line {
            origin: Vec2::zero(),
            direction: Vec2::new(2.0f64, 0.0),
        },
        (0.0, 1.0),
        0.0,
    )
    .unwrap();
    let arc = arc_length_reparam(&line, 1e-10).unwrap();
    assert!((arc.s_all() - 2.0).abs() < 1e-14);
    assert!((arc.s_of_t(0.3) - 0.6).abs() < 1e-14);
}

#[test]
fn reconstructed_clothoid_is_unit_speed() {
    let c = reconstruct_from_curvature(FnLaw(|s: f64| 2.0 * s), 1.0, 1000).unwrap();
    let arc = arc_length_reparam(&c, 1e-9).unwrap();
    for k in 0..=20 {
        let t = k as f64 / 20.0;
        assert!((arc.s_of_t(t) - t).abs() < 1e-9, "t={t}");
    }
}

#[test]
fn degenerate_parameterization_is_rejected() {
    let c = Curve::analytic(
        Analytic::Line {
            origin: Vec2::zero(),
            direction: Vec2::zero(),
        },
        (0.0, 1.0),
        0.0,
    );
    assert!(matches!(
        c,
        Err(CurveError::DegenerateCurve { .. }) | Err(CurveError::InvalidCurve(_))
    ));
    // (t³, t³) stops at t = 0.
    let cusp = Curve::sampled(
        (-20..=20).map(|k| k as f64 / 20.0).collect(),
        (-20..=20)
            .map(|k| {
                let t = k as f64 / 20.0;
                Vec2::new(t.powi(3), t.powi(3))
            })
            .collect(),
        None,
    );
    assert!(matches!(cusp, Err(CurveError::DegenerateCurve { .. })));
}

#[test]
fn curvature_radius_examples() {
    let r = curvature_radius(&circle(2.0), 1.1).unwrap().finite().unwrap();
    assert!((r - 2.0).abs() < 1e-14);
    let r = curvature_radius(&fig2_parabola(), 0.0).unwrap();
    assert_eq!(r, Radius::Finite(12.5));
    let spiral = Curve::analytic(Analytic::LogSpiral { a: 1.0, b: 1.0 }, (-1.0, 1.0), 0.0).unwrap();
    let r = curvature_radius(&spiral, 0.0).unwrap().finite().unwrap();
    assert!((r - SQRT_2).abs() < 1e-14);
    assert!(matches!(
        curvature_radius(&spiral, 3.0),
        Err(CurveError::OutOfDomain { .. })
    ));
}

#[test]
fn inflection_gives_infinite_sentinel() {
    let sine = Curve::analytic(Analytic::Sine { amp: 1.0, freq: 1.0 }, (-1.0, 1.0), 0.0).unwrap();
    assert!(curvature_radius(&sine, 0.0).unwrap().is_infinite());
    assert!(curvature_radius(&sine, 0.5).unwrap().finite().unwrap() < 0.0);
}

#[test]
fn zero_curvature_gives_segment() {
    let c = reconstruct_from_curvature(ConstantLaw(0.0), 3.0, 100).unwrap();
    let end = c.eval(3.0);
    assert!((end - Vec2::new(3.0, 0.0)).norm() < 1e-14);
}

#[test]
fn unit_curvature_closes() {
    let c = reconstruct_from_curvature(ConstantLaw(1.0), TAU, 10_000).unwrap();
    assert!(c.eval(TAU).norm() < 1e-8);
    assert!((c.eval(PI) - Vec2::new(0.0, 2.0)).norm() < 1e-8);
}

#[test]
fn clothoid_endpoint_matches_fresnel_oracle() {
    let c = reconstruct_from_curvature(FnLaw(|s: f64| 2.0 * s), 1.0, 10_000).unwrap();
    let (fx, fy) = common::fresnel(1.0, 1.0);
    let end = c.eval(1.0);
    assert!(
        (end.x - fx).abs() < 1e-8 && (end.y - fy).abs() < 1e-8,
        "{end:?} vs ({fx}, {fy})"
    );
    // The closed-form clothoid agrees with the same oracle.
    let a = Analytic::Clothoid { a: 1.0 }.jet(1.0).p;
    assert!((a.x - fx).abs() < 1e-12 && (a.y - fy).abs() < 1e-12);
}

#[test]
fn too_few_steps() {
    assert_eq!(
        reconstruct_from_curvature(ConstantLaw(1.0), 1.0, 99).unwrap_err(),
        CurveError::InvalidSteps { steps: 99, min: 100 }
    );
}

#[test]
fn reconstruction_round_trip() {
    let laws: Vec<Box<dyn Fn(f64) -> f64 + Send + Sync>> = vec![
        Box::new(|s| 1.0 + 0.5 * s),
        Box::new(|s| (0.7 * s).sin() + 2.0),
        Box::new(|s| (0.3 * s).exp()),
    ];
    for law in laws {
        let kappa: Vec<f64> = (0..=50).map(|k| law(3.0 * k as f64 / 50.0)).collect();
        let c = reconstruct_from_curvature(FnLaw(law), 3.0, 10_000).unwrap();
        for (k, &exact) in kappa.iter().enumerate() {
            let s = 3.0 * k as f64 / 50.0;
            let got = c.radius(s).curvature();
            assert!((got - exact).abs() < 1e-6, "s={s}: {got} vs {exact}");
            assert!((1.0 / got - 1.0 / exact).abs() < 1e-6);
        }
    }
}

#[test]
fn scalar_matrix_scales_radius() {
    let img = apply_affine(&circle(1.0), &AffineMap::linear(Mat2::diag(3.0, 3.0))).unwrap();
    for &t in &[0.0, 1.0, 4.0] {
        assert!((img.radius(t).finite().unwrap() - 3.0).abs() < 1e-13);
    }
    let id = apply_affine(&fig2_parabola(), &AffineMap::identity()).unwrap();
    assert_eq!(id.radius(1.3), fig2_parabola().radius(1.3));
    let singular = AffineMap::linear(Mat2::new(1.0, 2.0, 2.0, 4.0));
    assert!(matches!(
        apply_affine(&circle(1.0), &singular),
        Err(CurveError::SingularMatrix { .. })
    ));
}

#[test]
fn parabola_subcurve_map_matches_radius() {
    // σ = 0.5 t on (t, t²): A = [[0.5, 0], [0, 0.25]], b = 0.
    let p = Curve::analytic(Analytic::Parabola { a: 1.0, b: 1.0 }, (0.0, 1.0), 0.0).unwrap();
    let map = AffineMap::new(Mat2::new(0.5, 0.0, 0.0, 0.25), Vec2::zero());
    let img = apply_affine(&p, &map).unwrap();
    for k in 0..50 {
        let t = k as f64 / 49.0;
        let direct = p.radius(0.5 * t).finite().unwrap();
        // Reparameterize: image at t is the subcurve point at σ = t/2 with speed halved.
        let j = img.jet(t);
        let rho_img = j.radius().finite().unwrap();
        assert!((direct - rho_img).abs() < 1e-9 * direct.abs().max(1.0));
    }
}

#[test]
fn winding_examples() {
    let p = Curve::analytic(Analytic::Parabola { a: 1.0, b: 1.0 }, (-1.0, 1.0), 0.0).unwrap();
    assert!(winding_injectivity_check(&p, 256));
    assert!(!winding_injectivity_check(&circle(1.0), 256));
    let clothoid = Curve::analytic(Analytic::Clothoid { a: 1.0 }, (0.0, 3.0), 0.0).unwrap();
    assert!(!winding_injectivity_check(&clothoid, 1024));
}

#[test]
fn sampled_curve_arc_length() {
    let n = 200;
    let t: Vec<f64> = (0..=n).map(|k| k as f64 * PI / n as f64).collect();
    let pts = t.iter().map(|&u| Vec2::new(2.0 * u.cos(), 2.0 * u.sin())).collect();
    let c = Curve::sampled(t, pts, None).unwrap();
    assert_eq!(c.stencil_width(), Some(5));
    let arc = arc_length_reparam(&c, 1e-6).unwrap();
    assert!((arc.s_all() - TAU).abs() < 1e-7);
}

#[test]
fn f32_smoke() {
    let c = Curve::<f32>::analytic(
        Analytic::Circle {
            center: Vec2::zero(),
            radius: 2.0,
        },
        (0.0, 3.0),
        0.0,
    )
    .unwrap();
    let arc = arc_length_reparam(&c, 1e-3).unwrap();
    assert!((arc.s_all() - 6.0).abs() < 1e-4);
    assert!((c.radius(1.0).finite().unwrap() - 2.0).abs() < 1e-5);
}

fn random_map(a: [f64; 4], b: [f64; 2]) -> Option<AffineMap<f64>> {
    let m = Mat2::new(a[0], a[1], a[2], a[3]);
    let d = m.det().abs();
    (d > 0.1 && d < 10.0).then(|| AffineMap::new(m, Vec2::new(b[0], b[1])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn affine_covariance(a in prop::array::uniform4(-3.0..3.0f64), b in prop::array::uniform2(-5.0..5.0f64), t in 0.0..5.0f64) {
        let Some(map) = random_map(a, b) else { return Ok(()) };
        let p = fig2_parabola();
        let img = apply_affine(&p, &map).unwrap();
        let direct = img.radius(t).finite().unwrap();
        let v = map.apply_vector(p.jet(t).d1).norm();
        // ρ in each curve's own arc length; the parameterizations agree pointwise.
        let predicted = v.powi(3) * p.radius(t).finite().unwrap() / p.jet(t).d1.norm().powi(3) / map.det();
        prop_assert!((direct - predicted).abs() < 1e-8 * predicted.abs());
    }

    #[test]
    fn congruence_invariance(theta in 0.0..TAU, bx in -5.0..5.0f64, by in -5.0..5.0f64, t in 0.1..4.0f64) {
        let map = AffineMap::new(Mat2::rotation(theta), Vec2::new(bx, by));
        let spiral = Curve::analytic(Analytic::LogSpiral { a: 0.2, b: 1.0 }, (0.0, 5.0), 0.0).unwrap();
        let img = apply_affine(&spiral, &map).unwrap();
        let r0 = spiral.radius(t).finite().unwrap();
        let r1 = img.radius(t).finite().unwrap();
        prop_assert!((r0 - r1).abs() < 1e-12 * r0.abs());
    }

    #[test]
    fn arc_length_idempotent(shift in -3.0..3.0f64, t in 0.0..1.0f64) {
        let c = Curve::analytic(Analytic::Clothoid { a: 0.7 }, (shift, shift + 2.0), shift + 1.0).unwrap();
        let arc = arc_length_reparam(&c, 1e-9).unwrap();
        let u = shift + 2.0 * t;
        prop_assert!((arc.s_of_t(u) - (u - shift - 1.0)).abs() < 1e-9);
    }
}
