use std::f64::consts::PI;

use epsw::error::Error;
use epsw::hyp3::minkowski;
use epsw::hyp3::Isometry;
use epsw::mesh::Mesh;
use epsw::schottky::*;
use num_complex::Complex;
use proptest::prelude::*;

fn z(x: f64, y: f64) -> Complex<f64> {
    Complex::new(x, y)
}

fn symmetric2() -> SchottkyConfiguration {
    SchottkyConfiguration::symmetric(2, 6.0, 1.0).unwrap()
}

/// Genus-two configuration with no common orthogonal circle.
fn bent2() -> SchottkyConfiguration {
    SchottkyConfiguration::new(2, &[(z(6.0, 0.0), 1.0), (z(0.0, 6.0), 1.5), (z(-6.0, 0.0), 0.7), (z(0.3, -6.0), 1.0)]).unwrap()
}

/// Generic genus-three configuration.
fn bent3() -> SchottkyConfiguration {
    SchottkyConfiguration::new(
        3,
        &[
            (z(6.0, 0.2), 1.0),
            (z(3.1, 5.0), 1.4),
            (z(-2.8, 5.3), 0.9),
            (z(-6.1, 0.0), 1.6),
            (z(-3.0, -5.2), 1.1),
            (z(3.3, -4.9), 1.3),
        ],
    )
    .unwrap()
}

#[test]
fn rejects_invalid_configurations() {
    assert!(matches!(SchottkyConfiguration::symmetric(1, 6.0, 1.0), Err(Error::InvalidInput(_))));
    assert!(matches!(SchottkyConfiguration::new(2, &[(z(0.0, 0.0), 1.0)]), Err(Error::InvalidInput(_))));
    let overlapping = [(z(1.0, 0.0), 1.0), (z(0.0, 6.0), 1.0), (z(-6.0, 0.0), 1.0), (z(0.0, -6.0), 1.0)];
    let touching = [(z(2.0, 0.0), 1.0), (z(0.0, 0.0), 1.0), (z(-6.0, 0.0), 1.0), (z(0.0, -6.0), 1.0)];
    assert!(matches!(
        SchottkyConfiguration::new(2, &[(z(0.5, 0.0), 1.0), overlapping[1], overlapping[2], (z(0.0, 0.0), 1.0)]),
        Err(Error::OverlappingPlanes { .. })
    ));
    assert!(matches!(SchottkyConfiguration::new(2, &touching), Err(Error::OverlappingPlanes { .. })));
}

#[test]
fn pairings_are_validated() {
    // z -> 36/z maps the outside of the circle |z - 6| = 1 onto the inside of |z + 6| = 1 (conjugated).
    let circles = [(z(6.0, 0.0), 1.0), (z(0.0, 6.0), 1.0), (z(-6.0, 0.0), 1.0), (z(0.0, -6.0), 1.0)];
    let g = Isometry::new(z(-6.0, 0.0), z(35.0, 0.0), z(1.0, 0.0), z(-6.0, 0.0)).unwrap();
    let image = g.apply_circle(&epsw::hyp3::CircleBdry::new(z(6.0, 0.0), 1.0, epsw::hyp3::Side::Outside)).unwrap();
    assert!((image.center - z(-6.0, 0.0)).norm() < 1e-9 && (image.radius - 1.0).abs() < 1e-9);
    let ok = SchottkyConfiguration::with_pairings(2, &circles, vec![(0, 2, g)]);
    assert!(ok.is_ok(), "{ok:?}");
    let wrong = SchottkyConfiguration::with_pairings(2, &circles, vec![(0, 1, g)]);
    assert!(matches!(wrong, Err(Error::InvalidInput(_))));
    let spec = ok.unwrap().to_spec();
    let text = serde_json::to_string(&spec).unwrap();
    let back: SchottkySpec = serde_json::from_str(&text).unwrap();
    assert_eq!(SchottkyConfiguration::from_spec(&back).unwrap().to_spec(), spec);
}

#[test]
fn plane_distances() {
    let d = min_plane_distance(&symmetric2()).unwrap();
    assert!((d.min - 35f64.acosh()).abs() < 1e-12);
    assert!((d.matrix[0][2] - 71f64.acosh()).abs() < 1e-10);
    let close = SchottkyConfiguration::symmetric(2, 4.0, 1.0).unwrap();
    let d = min_plane_distance(&close).unwrap();
    assert!((d.min - 15f64.acosh()).abs() < 1e-12);
    assert!(d.min < 4.0);
    let scaled = SchottkyConfiguration::symmetric(2, 6.0 * 3.7, 3.7).unwrap();
    assert!((min_plane_distance(&scaled).unwrap().min - 35f64.acosh()).abs() < 1e-10);
}

#[test]
fn plane_distance_matches_sampled_minimum() {
    let c = symmetric2();
    let planes = c.planes();
    let (a, b) = (&planes[0], &planes[1]);
    let mut best = f64::INFINITY;
    for i in 0..200 {
        for j in 0..64 {
            let p = a.sample(i as f64 / 200.0, 2.0 * PI * j as f64 / 64.0);
            // Distance from a point to the plane b is asinh of the normalized Lorentz value.
            let d = minkowski::dot(&p.to_hyperboloid(), &b.minkowski()).abs().asinh();
            best = best.min(d);
        }
    }
    let exact = min_plane_distance(&c).unwrap().matrix[0][1];
    assert!(best >= exact - 1e-9 && best - exact < 1e-3, "sampled {best}, exact {exact}");
}

#[test]
fn symmetric_genus_two_core() {
    let c = convex_core(&symmetric2()).unwrap();
    assert!(c.fuchsian);
    let polygons: Vec<_> = c.polygon_faces().collect();
    assert_eq!(polygons.len(), 4);
    assert!(polygons.iter().all(|(_, f)| f.vertices.len() == 3));
    assert_eq!(c.hexagon_faces().count(), 4);
    assert_eq!(c.hexagon_edges().count(), 6);
    assert_eq!(c.euler.characteristic, 2);
    let gb = gauss_bonnet_check(&c);
    assert!(gb.max_residual < 1e-7 && gb.hexagon_angle_residual < 1e-7, "{gb:?}");
    let areas = boundary_area(&c);
    assert!(areas.identity_residual.abs() < 1e-6);
    assert!((areas.hexagons - 4.0 * PI).abs() < 1e-9);
    let lengths: Vec<f64> = c.hexagon_edges().map(|e| e.exterior_angle * e.length).collect();
    let rim: Vec<f64> = lengths.iter().copied().filter(|&l| l > 0.0).collect();
    assert_eq!(rim.len(), 4);
    let spread = rim.iter().fold(0.0f64, |m, &l| m.max((l - rim[0]).abs()));
    assert!(spread < 1e-8);
    assert!((bending_term(&c) - 4.0 * PI * 35f64.acosh()).abs() < 1e-9);
    assert!(core_volume(&c).value.abs() < 1e-10);
}

#[test]
fn symmetric_genus_three_has_twelve_edges() {
    let c = convex_core(&SchottkyConfiguration::symmetric(3, 6.0, 1.0).unwrap()).unwrap();
    assert_eq!(c.hexagon_edges().count(), 12);
    assert_eq!(c.hexagon_faces().count(), 8);
    assert!(gauss_bonnet_check(&c).max_residual < 1e-7);
}

#[test]
fn bent_cores_satisfy_face_identities() {
    for (config, edges) in [(bent2(), 6), (bent3(), 12)] {
        let c = convex_core(&config).unwrap();
        assert!(!c.fuchsian);
        assert_eq!(c.hexagon_edges().count(), edges);
        assert_eq!(c.hexagon_faces().count(), 4 * config.genus - 4);
        let gb = gauss_bonnet_check(&c);
        assert!(gb.max_residual < 1e-7 && gb.hexagon_angle_residual < 1e-7, "{gb:?}");
        assert!(boundary_area(&c).identity_residual.abs() < 1e-6);
        for e in &c.edges {
            assert!(e.exterior_angle > 0.0 && e.exterior_angle < PI, "{e:?}");
            if e.kind == EdgeKind::PolygonHexagon {
                assert!((e.exterior_angle - PI / 2.0).abs() < 1e-7);
            }
        }
        for (f, face) in c.polygon_faces() {
            let m = face.vertices.len() as f64;
            let angles = c.face_angles(f);
            assert!(((m - 2.0) * PI - angles.iter().sum::<f64>() - c.face_area(f)).abs() < 1e-12);
            assert!(c.face_area(f) > 0.0);
        }
    }
}

#[test]
fn hexagon_side_lengths_obey_the_right_angled_hexagon_law() {
    let config = bent2();
    let c = convex_core(&config).unwrap();
    let d = min_plane_distance(&config).unwrap().matrix;
    let side = |i: usize, j: usize, k: usize| {
        // Length of the face edge on P_j between the feet toward i and toward k.
        let v = |a: usize, b: usize| c.vertices.iter().position(|v| v.circle == a && v.partner == b).unwrap();
        minkowski::distance(&c.vertices[v(j, i)].hyperboloid, &c.vertices[v(j, k)].hyperboloid)
    };
    for (_, face) in c.hexagon_faces() {
        let FaceKind::Hexagon { triple: [a, b, cc] } = face.kind else { unreachable!() };
        let (lab, lbc, lca) = (d[a][b], d[b][cc], d[cc][a]);
        let predicted = (lab.cosh() * lbc.cosh() + lca.cosh()) / (lab.sinh() * lbc.sinh());
        assert!((side(a, b, cc).cosh() - predicted).abs() < 1e-8 * predicted);
    }
}

#[test]
fn rotated_configuration_gives_congruent_core() {
    let base = bent2();
    let rot = Complex::from_polar(1.0, 0.7);
    let circles: Vec<_> = base.circles.iter().map(|c| (c.center * rot + z(0.4, -0.2), c.radius)).collect();
    let moved = SchottkyConfiguration::new(2, &circles).unwrap();
    let sorted = |c: &ConvexCoreComplex| {
        let mut v: Vec<(f64, f64)> = c.edges.iter().map(|e| (e.length, e.exterior_angle)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    };
    let (a, b) = (convex_core(&base).unwrap(), convex_core(&moved).unwrap());
    for (x, y) in sorted(&a).iter().zip(sorted(&b)) {
        assert!((x.0 - y.0).abs() < 1e-8 && (x.1 - y.1).abs() < 1e-8);
    }
    assert!((core_volume(&a).value - core_volume(&b).value).abs() < 1e-8);
}

#[test]
fn volume_is_mobius_invariant_and_apex_independent() {
    let config = bent2();
    let c = convex_core(&config).unwrap();
    let v = core_volume(&c);
    assert!(v.value > 0.0 && v.error_estimate < 1e-9 * v.value.max(1.0));
    let k = |i: usize| c.vertices[i].klein;
    let apex = [0, 1, 2].map(|a| 0.4 * k(0)[a] + 0.3 * k(5)[a] + 0.3 * k(9)[a]);
    assert!((core_volume_from(&c, &apex).value - v.value).abs() < 1e-6);
    let g = Isometry::new(z(1.0, 0.2), z(0.3, -0.1), z(0.02, 0.01), z(1.1, 0.0)).unwrap();
    let moved = config.transported(&g).unwrap();
    let cm = convex_core(&moved).unwrap();
    assert!((core_volume(&cm).value - v.value).abs() < 1e-6);
    assert!((w_core(&cm).value - w_core(&c).value).abs() < 1e-6);
}

#[test]
fn cone_volume_matches_a_regular_tetrahedron() {
    // Regular hyperbolic tetrahedron with Klein vertices at radius r: volume by direct Klein
    // integration in spherical coordinates around its center as the oracle.
    let r = 0.6f64;
    let s = r / 3f64.sqrt();
    let verts = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
    let face = |i: usize| -> Vec<usize> { (0..4).filter(|&j| j != i).collect() };
    let complex = ConvexCoreComplex {
        genus: 2,
        vertices: verts
            .iter()
            .map(|&k| CoreVertex { circle: 0, partner: 0, klein: k, hyperboloid: minkowski::from_klein(k) })
            .collect(),
        edges: vec![],
        faces: (0..4)
            .map(|i| Face { kind: FaceKind::Polygon { circle: i }, vertices: face(i), normal: [0.0; 4] })
            .collect(),
        euler: EulerData { vertices: 4, edges: 6, faces: 4, characteristic: 2 },
        fuchsian: false,
    };
    let got = core_volume(&complex).value;
    // Brute-force Klein integration of (1 - |x|^2)^(-2) over the tetrahedron on a fine grid.
    let n = 240;
    let h = 2.0 * s / n as f64;
    let mut brute = 0.0;
    let planes: Vec<([f64; 3], f64)> = (0..4)
        .map(|i| {
            let o = verts[i];
            let nrm = o.map(|c| -c);
            let f = face(i);
            (nrm, -(nrm[0] * verts[f[0]][0] + nrm[1] * verts[f[0]][1] + nrm[2] * verts[f[0]][2]))
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let x = [i, j, l].map(|a| -s + (a as f64 + 0.5) * h);
                if planes.iter().all(|(nv, c)| nv[0] * x[0] + nv[1] * x[1] + nv[2] * x[2] + c <= 0.0) {
                    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    brute += h * h * h / ((1.0 - r2) * (1.0 - r2));
                }
            }
        }
    }
    assert!((got - brute).abs() < 2e-3 * got, "cone {got} brute {brute}");
    // Ideal limit: the regular ideal tetrahedron has volume 1.0149416064...
    let big = 0.99999f64 / 3f64.sqrt();
    let mut ideal = complex.clone();
    for (v, k) in ideal.vertices.iter_mut().zip([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]) {
        v.klein = k.map(|c: f64| c * big);
        v.hyperboloid = minkowski::from_klein(v.klein);
    }
    let vi = core_volume(&ideal).value;
    assert!((vi - 1.014_941_606_409_653).abs() < 1e-3, "{vi}");
}

#[test]
fn certificates() {
    let cert = vr_upper_bounds(&symmetric2()).unwrap();
    assert!((cert.unconditional_bound - 4.0 * PI).abs() < 1e-12);
    assert!(cert.minus_two_pi_certificate);
    assert!(cert.w_core.negative);
    assert!(cert.angle_inequality.holds && cert.isoperimetric.holds);
    assert_eq!(cert.hexagon_edges, cert.expected_hexagon_edges);
    let close = vr_upper_bounds(&SchottkyConfiguration::symmetric(2, 4.0, 1.0).unwrap()).unwrap();
    assert!(!close.minus_two_pi_certificate);
    let g3 = vr_upper_bounds(&bent3()).unwrap();
    assert!((g3.unconditional_bound - 10.0 * PI).abs() < 1e-12);
    assert!(g3.angle_inequality.holds && g3.isoperimetric.holds);
    let json = serde_json::to_string(&g3).unwrap();
    assert!(json.contains("minus_two_pi_certificate"));
}

#[test]
fn bending_grows_with_separation() {
    let family = |d: f64| {
        SchottkyConfiguration::new(2, &[(z(d, 0.0), 1.0), (z(0.0, d), 1.5), (z(-d, 0.0), 0.7), (z(0.3, -d), 1.0)])
    };
    let scan = w_core_scan(&[4.0, 5.0, 6.0, 8.0, 10.0], family).unwrap();
    for w in scan.points.windows(2) {
        assert!(w[1].w_core.bending > w[0].w_core.bending);
        assert!(w[1].min_plane_distance > w[0].min_plane_distance);
    }
    assert!(scan.points.iter().all(|p| p.w_core.negative));
    assert!(scan.sign_changes.is_empty());
}

#[test]
fn non_generic_configurations_are_rejected() {
    // Four circles share an orthogonal circle, so two hexagons are coplanar.
    let c = SchottkyConfiguration::new(
        3,
        &[
            (z(6.0, 0.0), 1.0),
            (z(3.0, 5.0), 1.5),
            (z(-3.0, 5.0), 1.0),
            (z(-6.0, 0.0), 1.5),
            (z(-3.0, -5.0), 1.0),
            (z(3.0, -5.0), 1.5),
        ],
    )
    .unwrap();
    assert!(matches!(convex_core(&c), Err(Error::DegenerateConfiguration(_))));
}

#[test]
fn obj_export_round_trips() {
    for config in [symmetric2(), bent2()] {
        let c = convex_core(&config).unwrap();
        let mesh = core_mesh(&c);
        assert_eq!(mesh.groups.len(), c.faces.len());
        assert!(mesh.group("P_0").is_some());
        assert!(mesh.groups.iter().filter(|g| g.name.starts_with("H_")).count() == 4);
        let back = Mesh::parse_obj(&mesh.to_obj()).unwrap();
        assert_eq!(back.face_count(), mesh.face_count());
        for (a, b) in back.vertices.iter().zip(&mesh.vertices) {
            assert!((0..3).all(|k| (a[k] - b[k]).abs() < 1e-15));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_genus_two_cores(
        radii in proptest::array::uniform4(0.5f64..1.6),
        jitter in proptest::array::uniform4(-0.4f64..0.4),
        dist in 5.0f64..9.0,
    ) {
        let circles: Vec<_> = (0..4)
            .map(|k| (Complex::from_polar(dist, PI / 2.0 * k as f64 + jitter[k] / 3.0), radii[k]))
            .collect();
        let config = SchottkyConfiguration::new(2, &circles).unwrap();
        let c = convex_core(&config).unwrap();
        prop_assert_eq!(c.hexagon_edges().count(), 6);
        prop_assert_eq!(c.euler.characteristic, 2);
        let gb = gauss_bonnet_check(&c);
        prop_assert!(gb.max_residual < 1e-7 && gb.hexagon_angle_residual < 1e-7);
        prop_assert!(boundary_area(&c).identity_residual.abs() < 1e-6);
        let cert = certificate(&config, &c, min_plane_distance(&config).unwrap().min);
        prop_assert!(cert.isoperimetric.holds);
        prop_assert!(cert.angle_inequality.holds);
        if !c.fuchsian {
            for e in &c.edges {
                prop_assert!(e.exterior_angle > 0.0 && e.exterior_angle < PI);
            }
        }
    }
}
