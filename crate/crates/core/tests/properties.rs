//! Property-based invariants of the geometry, curvature and serialization layers.

use canal_core::analysis;
use canal_core::canal::{self, sample_grid, sphere_residual, Axis, GridSpec};
use canal_core::curvature;
use canal_core::expr;
use canal_core::io::{self, format_sig9};
use canal_core::minkowski::{inner, triple_cross};
use canal_core::{CanalConfig, CanalSurface, CurveSpec, DerivativeMode, JobConfig, RadiusProfile, Vec4};
use proptest::prelude::*;

fn beta1() -> CurveSpec {
    CurveSpec::parse(["2*sinh(s)", "2*cosh(s)", "sqrt(3)*cos(s)", "sqrt(3)*sin(s)"], (0.25, 3.0), DerivativeMode::Symbolic)
        .unwrap()
}

fn beta2() -> CurveSpec {
    CurveSpec::parse(["sqrt(3)*sinh(s)", "sqrt(3)*cosh(s)", "2*cos(s)", "2*sin(s)"], (0.25, 3.0), DerivativeMode::Symbolic)
        .unwrap()
}

fn vec4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(Vec4::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn triple_cross_is_orthogonal_to_its_arguments(x in vec4(), y in vec4(), z in vec4()) {
        let c = triple_cross(x, y, z);
        let scale = 1.0 + c.max_abs() * (x.max_abs() + y.max_abs() + z.max_abs());
        for v in [x, y, z] {
            prop_assert!(inner(c, v).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn symbolic_derivative_matches_differences(
        a in -2.0..2.0f64, b in 0.1..2.0f64, c in -1.0..1.0f64, s in 0.2..2.0f64,
    ) {
        let e = expr::parse(&format!("{a}*sin({b}*s) + {c}*s^3 + exp(-s)*cosh(s/2)")).unwrap();
        let d = e.differentiate().eval(s).unwrap();
        let h = 1e-5;
        let fd = (e.eval(s + h).unwrap() - e.eval(s - h).unwrap()) / (2.0 * h);
        prop_assert!((d - fd).abs() <= 1e-7 * (1.0 + d.abs()), "{d} vs {fd}");
    }

    #[test]
    fn frenet_frames_are_orthonormal(s in 0.3..2.9f64, second in any::<bool>()) {
        let curve = if second { beta2() } else { beta1() };
        let f = curve.frenet(s).unwrap();
        prop_assert!(f.orthonormality_defect() <= 1e-9);
    }

    #[test]
    fn canal_points_lie_on_their_spheres(
        s in 0.3..2.9f64, t in -3.0..3.0f64, w in -1.5..1.5f64,
        lambda in prop::sample::select(vec![1, -1]), sigma in prop::sample::select(vec![1.0, -1.0]),
    ) {
        let cfg = CanalConfig::new(1, lambda, RadiusProfile::parse("2*s").unwrap()).with_sigma(sigma);
        let c = CanalSurface::new(beta1(), cfg).unwrap();
        let local = c.local(s).unwrap();
        let p = c.point_at(&local, t, w).unwrap();
        let r2 = local.radius.r * local.radius.r;
        prop_assert!(sphere_residual(&local, lambda, p).abs() <= 1e-10 * (1.0 + r2 * (1.0 + local.q)));
    }

    #[test]
    fn null_cone_coefficients_are_null(
        j in 2usize..=4, first in -5.0..5.0f64, second in -5.0..5.0f64, sigma in prop::sample::select(vec![1.0, -1.0]),
    ) {
        let a = canal::nullcone_coefficients(j, first, second, sigma).unwrap();
        prop_assert!(canal::null_condition_residual(j, a).abs() <= 1e-12 * (1.0 + first * first + second * second));
    }

    #[test]
    fn closed_form_double_root_and_kh_identity(
        s in 0.4..2.8f64, t in -3.0..3.0f64, w in -1.4..1.4f64,
        lambda in prop::sample::select(vec![1, -1]), sigma in prop::sample::select(vec![1.0, -1.0]),
    ) {
        let cfg = CanalConfig::new(3, lambda, RadiusProfile::parse("2*s").unwrap()).with_sigma(sigma);
        let c = CanalSurface::new(beta2(), cfg).unwrap();
        prop_assume!(curvature::is_regular_node(&c, s, t, w).unwrap());
        let rep = curvature::closed_form(&c, s, t, w).unwrap();
        prop_assert_eq!(rep.principal[0], rep.principal[1]);
        let r = 2.0 * s;
        let res = analysis::kh_residual(rep.gauss, rep.mean, r, c.config().normal_sign());
        prop_assert!(res <= 1e-9 * (1.0 + rep.gauss.abs() * r.powi(3)), "{}", res);
    }

    #[test]
    fn sig9_round_trips_to_nine_digits(x in -1e6..1e6f64) {
        let y: f64 = format_sig9(x).parse().unwrap();
        prop_assert!((x - y).abs() <= 5e-9 * x.abs());
    }

    #[test]
    fn vectors_round_trip_through_json(v in vec4()) {
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Vec4>(&text).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn patches_round_trip_through_json(ns in 1usize..4, nt in 1usize..4, nw in 1usize..4, s0 in 0.3..1.0f64) {
        let cfg = CanalConfig::new(1, 1, RadiusProfile::parse("2*s + 0.1*s^2").unwrap());
        let grid = GridSpec { s: Axis::closed(s0, s0 + 1.0, ns), t: Axis::half_open(0.0, 6.0, nt), w: Axis::closed(-1.0, 1.0, nw) };
        let patch = sample_grid(&beta1(), &cfg, &grid).unwrap();
        let back = io::patch_from_json(&io::patch_to_json(&patch)).unwrap();
        prop_assert_eq!(back, patch);
    }

    #[test]
    fn job_configs_round_trip_through_text(
        a in 0.1..1.0f64, b in 1.5..3.0f64, n in 2usize..40, lambda in prop::sample::select(vec!["l1", "l-1"]),
    ) {
        let mut cfg = JobConfig::example("beta2").unwrap();
        cfg.set("range_s", &format!("{a}:{b}")).unwrap();
        cfg.set("grid", &format!("{n}x{n}x{n}")).unwrap();
        cfg.set("family", &format!("j3,{lambda}")).unwrap();
        let back = JobConfig::parse_text(&cfg.to_text()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}
