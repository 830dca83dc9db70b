use std::f64::consts::PI;
use std::sync::Arc;

use epsw::hyp3::Isometry;
use epsw::metric::*;
use epsw::quad::QuadratureSpec;
use epsw::wvol::*;
use num_complex::Complex;
use proptest::prelude::*;

type Oracle = Arc<dyn MetricOracle<f64>>;

/// W of the flat metric on the unit disk, frozen after the two-pipeline check against the round metric.
const W_FLAT_DISK: f64 = -4.105599216876;

fn cx(a: f64, b: f64) -> Complex<f64> {
    Complex::new(a, b)
}

fn flat() -> Oracle {
    Arc::new(Flat { c: 0.0 })
}

fn three_circles() -> CircleDomain<f64> {
    CircleDomain::from_circles(&[(cx(0.0, 0.0), 1.0), (cx(0.45, 0.1), 0.2), (cx(-0.4, -0.3), 0.25)]).unwrap()
}

fn bump() -> Oracle {
    Arc::new(FourierBump { eps: 0.3, coeffs: vec![cx(0.1, 0.0), cx(0.5, 0.1), cx(0.3, 0.0), cx(-0.2, 0.1)] })
}

#[test]
fn round_metric_has_vanishing_terms() {
    let w = w_volume(&CircleDomain::unit_disk(), Arc::new(RoundSphere), &QuadratureSpec::default()).unwrap();
    assert!(w.w.abs() < 1e-6);
    assert!(w.volume.value.abs() < 1e-6 && w.mean_curvature.total.abs() < 1e-6 && w.area.value.abs() < 1e-6);
    assert!(w.build.degenerate && w.build.pass());
}

#[test]
fn flat_disk_pieces() {
    let spec = QuadratureSpec::default();
    let ps = build_piecewise_sphere(&CircleDomain::unit_disk(), flat(), &spec).unwrap();
    assert!(ps.report.pass() && !ps.report.degenerate);
    let w = WBreakdown::from_sphere(&ps).unwrap();
    // Horosphere at height 2 over the disk: area π/4, umbilic with |H| = 1.
    assert!((w.mean_curvature.epstein - PI / 4.0).abs() < 1e-12);
    assert!((w.volume.pieces.epstein - PI / 8.0).abs() < 1e-12);
    // The landing circle has zero radius, so the cap is a point.
    assert!(w.volume.pieces.cap.abs() < 1e-14);
    assert!((w.area.value - 2.0 * PI).abs() < 1e-12);
    assert!((w.area.riemannian_strip_area - PI / 3.0).abs() < 1e-10);
    assert!((w.w - W_FLAT_DISK).abs() < 1e-9, "W = {}", w.w);
}

#[test]
fn flat_disk_volume_is_stable_under_doubling() {
    let d = CircleDomain::unit_disk();
    let a = w_volume(&d, flat(), &QuadratureSpec::with_resolution(256)).unwrap();
    let b = w_volume(&d, flat(), &QuadratureSpec::default()).unwrap();
    assert!(a.volume.value > -1.0 && (a.volume.value - b.volume.value).abs() < 1e-6);
    assert!((a.w - b.w).abs() < 1e-5 * b.w.abs());
}

#[test]
fn constant_factor_shifts_w_linearly() {
    let d = CircleDomain::unit_disk();
    let spec = QuadratureSpec::default();
    let w0 = w_volume(&d, flat(), &spec).unwrap();
    for c in [0.3, -0.2] {
        let w = w_volume(&d, Arc::new(Flat { c }), &spec).unwrap();
        assert!((w.area.value - 2.0 * PI).abs() < 1e-12);
        assert!((w.w - w0.w + PI * c).abs() < 1e-9);
    }
}

#[test]
fn primitives_agree() {
    let spec = QuadratureSpec::default();
    for (d, m) in [(CircleDomain::unit_disk(), bump()), (three_circles(), bump()), (three_circles(), flat())] {
        let ps = build_piecewise_sphere(&d, m, &spec).unwrap();
        let v = enclosed_volume(&ps).unwrap();
        assert!(v.primitive_gap < 1e-8, "gap {}", v.primitive_gap);
        assert_eq!(mean_curvature_integral(&ps).unwrap().cap, 0.0);
        let a = caterpillar_area_term(&ps);
        assert!((a.value - a.geodesic_curvature_integral).abs() < 1e-8);
    }
}

#[test]
fn three_circle_flat_build() {
    let ps = build_piecewise_sphere(&three_circles(), flat(), &QuadratureSpec::default()).unwrap();
    assert_eq!(ps.strips.len(), 3);
    assert!(ps.report.pass(), "{:?}", ps.report);
    let mesh = ps.mesh(32);
    for g in ["E", "C_0", "C_1", "C_2", "T_0", "T_1", "T_2"] {
        assert!(!mesh.group(g).unwrap().faces.is_empty());
    }
}

#[test]
fn polyakov_rhs_examples() {
    let d = CircleDomain::unit_disk();
    let spec = QuadratureSpec::default();
    assert_eq!(polyakov_rhs(&d, &Flat { c: 0.0 }, &Flat { c: 0.0 }, &spec).unwrap().total, 0.0);
    let c = 0.7;
    let r = polyakov_rhs(&d, &RoundSphere, &Flat { c }, &spec).unwrap();
    assert!((r.total + c * PI).abs() < 1e-12);
    let eps = 0.2;
    let r = polyakov_rhs(&d, &Flat { c: 0.0 }, &RadialQuadratic { eps }, &spec).unwrap();
    assert!((r.boundary_normal - 3.0 * PI * eps).abs() < 1e-12);
    assert!(r.boundary_curvature.abs() < 1e-14);
    // -¼∫|∇φ|² = -¼ ∫ 4ε²ρ² = -πε²/2.
    assert!((r.gradient + PI * eps * eps / 2.0).abs() < 1e-12);
}

#[test]
fn difference_check_passes() {
    let spec = QuadratureSpec::default();
    let d = CircleDomain::unit_disk();
    assert!(w_difference_check(&d, flat(), flat(), &spec, 1e-12).unwrap().residual < 1e-12);
    let r = w_difference_check(&d, flat(), bump(), &spec, DIFFERENCE_TOLERANCE).unwrap();
    assert!(r.pass, "{}", r.residual);
    let compact: Oracle = Arc::new(CompactBump { amplitude: 0.5, center: cx(0.0, 0.55), radius: 0.3 });
    let r = w_difference_check(&three_circles(), flat(), compact, &spec, DIFFERENCE_TOLERANCE).unwrap();
    assert!(r.pass, "{}", r.residual);
    assert!(r.rhs.boundary_curvature.abs() < 1e-14 && r.rhs.boundary_normal.abs() < 1e-14);
}

#[test]
fn derivative_check_examples() {
    let d = CircleDomain::unit_disk();
    let spec = QuadratureSpec::with_resolution(256);
    let zero = w_derivative_check(&d, flat(), flat(), 0.1, &spec, 1e-4).unwrap();
    assert!(zero.estimates.iter().all(|e| e.abs() < 1e-12) && zero.pass);
    let r = w_derivative_check(&d, Arc::new(RoundSphere), Arc::new(Flat { c: 1.0 }), 0.1, &spec, 1e-4).unwrap();
    assert!((r.target + PI).abs() < 1e-12 && r.pass);
    assert!(r.estimates.iter().all(|e| (e + PI).abs() < 1e-9));
}

#[test]
fn derivative_truncation_is_second_order_on_coarse_grids() {
    let d = CircleDomain::unit_disk();
    let g: Oracle = Arc::new(GaussianBump { amplitude: 0.4, center: cx(0.2, -0.1), width: 0.4 });
    let r = w_derivative_check(&d, flat(), g, 0.1, &QuadratureSpec::with_resolution(32), 1e-4).unwrap();
    assert!(r.order.unwrap() >= 1.9, "{:?}", r.order);
}

#[test]
fn w_is_mobius_invariant() {
    let spec = QuadratureSpec::default();
    let g = Isometry::new(cx(1.0, 0.2), cx(0.3, -0.1), cx(0.2, 0.25), cx(1.1, 0.0)).unwrap();
    for (d, m) in [(CircleDomain::unit_disk(), bump()), (three_circles(), bump())] {
        let w0 = w_volume(&d, m.clone(), &spec).unwrap();
        let (d2, m2) = transport(&d, m, &g).unwrap();
        let w1 = w_volume(&d2, m2, &spec).unwrap();
        assert!((w1.w - w0.w).abs() < 1e-6 * w0.w.abs().max(1.0), "{} vs {}", w1.w, w0.w);
    }
}

#[test]
fn transport_rejects_poles_in_the_domain() {
    let g = Isometry::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(-0.2, 0.0)).unwrap();
    assert!(transport(&CircleDomain::unit_disk(), flat(), &g).is_err());
}

#[test]
fn meshes_of_model_metrics() {
    let spec = QuadratureSpec::with_resolution(64);
    let ps = build_piecewise_sphere(&CircleDomain::unit_disk(), flat(), &spec).unwrap();
    let mesh = ps.mesh(32);
    let e = mesh.group("E").unwrap();
    assert!(e.faces.iter().flatten().all(|&i| (mesh.vertices[i][2] - 2.0).abs() < 1e-14));
    assert!(mesh.group_extent(mesh.group("T_0").unwrap()) < 1e-12);
    let back = epsw::mesh::Mesh::parse_obj(&mesh.to_obj()).unwrap();
    assert_eq!(back.face_count(), mesh.face_count());

    let ps = build_piecewise_sphere(&CircleDomain::unit_disk(), Arc::new(RoundSphere), &spec).unwrap();
    let mesh = ps.mesh(16);
    assert!(mesh.groups.iter().all(|g| mesh.group_extent(g) < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn structural_invariants_hold_for_random_bumps(
        eps in 0.05f64..0.5,
        a in prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), 1..5),
        cx0 in -0.2f64..0.2,
        r in 0.5f64..2.0,
    ) {
        let m: Oracle = Arc::new(FourierBump { eps, coeffs: a.iter().map(|&(x, y)| cx(x, y)).collect() });
        let d = CircleDomain::disk(cx(cx0, 0.0), r);
        let ps = build_piecewise_sphere(&d, m, &QuadratureSpec::default()).unwrap();
        prop_assert!(ps.report.pass(), "{:?}", ps.report);
        let v = enclosed_volume(&ps).unwrap();
        prop_assert!(v.primitive_gap < 1e-8 * (1.0 + v.value.abs()));
    }
}
