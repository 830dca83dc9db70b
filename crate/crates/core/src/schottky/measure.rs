use std::f64::consts::PI;

use serde::Serialize;

use super::config::{min_plane_distance, SchottkyConfiguration};
use super::core::{convex_core, ConvexCoreComplex, EdgeKind, FaceKind};
use crate::error::Result;
use crate::hyp3::minkowski::{self, Vec4};
use crate::mesh::Mesh;
use crate::quad::gauss_legendre_on;
use crate::vec3::{cross, dot, norm};

/// Relative tolerance of the adaptive volume integration.
pub const VOLUME_TOLERANCE: f64 = 1e-10;
const VOLUME_NODES: usize = 6;
const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    /// Sum over accepted triangles of the coarse-versus-fine discrepancy.
    pub error_estimate: f64,
    pub triangles: usize,
}

/// Hyperbolic volume of the core, coned from the hyperboloid barycenter of its vertices.
pub fn core_volume(complex: &ConvexCoreComplex) -> VolumeEstimate {
    let sum = complex.vertices.iter().fold([0.0; 4], |s, v| minkowski::add(&s, &v.hyperboloid));
    core_volume_from(complex, &minkowski::to_klein(&sum))
}

/// Hyperbolic volume as a sum of cones from `apex`, a Klein point of the core.
///
/// An isometry moves the apex to the Klein origin, where geodesics from the apex are radial.
/// The cone over a face then has volume `h ∫ g(ρ) / ρ³ dA` over the flat Klein face, with `h`
/// the distance from the origin to the face plane, `ρ` the Klein radius and
/// `g = sinh(2R)/4 - R/2` the volume per unit solid angle of a ball of radius `R = atanh ρ`.
pub fn core_volume_from(complex: &ConvexCoreComplex, apex: &[f64; 3]) -> VolumeEstimate {
    let center = minkowski::from_klein(*apex);
    let pts: Vec<[f64; 3]> =
        complex.vertices.iter().map(|v| minkowski::to_klein(&reflect_to_origin(&center, &v.hyperboloid))).collect();
    let (coarse, fine) = (Rule::new(VOLUME_NODES), Rule::new(2 * VOLUME_NODES));
    let mut cones = vec![];
    for face in &complex.faces {
        let vs = &face.vertices;
        for k in 1..vs.len() - 1 {
            let t = [pts[vs[0]], pts[vs[k]], pts[vs[k + 1]]];
            let n = cross(&sub(&t[1], &t[0]), &sub(&t[2], &t[0]));
            let area2 = norm(&n);
            if area2 == 0.0 {
                continue;
            }
            cones.push((t, (dot(&n, &t[0]) / area2).abs()));
        }
    }
    let rough: f64 = cones.iter().map(|(t, h)| h * fine.triangle(t)).sum();
    let budget = VOLUME_TOLERANCE * rough.max(1e-6) / cones.len().max(1) as f64;
    let mut acc = VolumeEstimate { value: 0.0, error_estimate: 0.0, triangles: 0 };
    for (t, h) in &cones {
        if *h > 0.0 {
            adaptive(t, *h, &coarse, &fine, budget, 0, &mut acc);
        }
    }
    acc
}

/// Lorentz reflection taking the unit timelike `p` to `(1, 0, 0, 0)`.
fn reflect_to_origin(p: &Vec4<f64>, x: &Vec4<f64>) -> Vec4<f64> {
    let v = [p[0] - 1.0, p[1], p[2], p[3]];
    let vv = minkowski::dot(&v, &v);
    if vv <= 1e-14 {
        return *x;
    }
    minkowski::add(x, &minkowski::scale(&v, -2.0 * minkowski::dot(x, &v) / vv))
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn mid(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0]
}

fn adaptive(t: &[[f64; 3]; 3], h: f64, coarse: &Rule, fine: &Rule, tol: f64, depth: usize, acc: &mut VolumeEstimate) {
    let (a, b) = (h * coarse.triangle(t), h * fine.triangle(t));
    if (a - b).abs() <= tol || depth >= MAX_DEPTH {
        acc.value += b;
        acc.error_estimate += (a - b).abs();
        acc.triangles += 1;
        return;
    }
    let [p0, p1, p2] = *t;
    let (m01, m12, m02) = (mid(&p0, &p1), mid(&p1, &p2), mid(&p0, &p2));
    for c in [[p0, m01, m02], [m01, p1, m12], [m02, m12, p2], [m01, m12, m02]] {
        adaptive(&c, h, coarse, fine, tol / 4.0, depth + 1, acc);
    }
}

/// `g(atanh ρ) / ρ³` with `g(R) = sinh(2R)/4 - R/2`.
fn cone_density(r2: f64) -> f64 {
    if r2 < 0.0625 {
        // Series sum_k k/(2k+1) ρ^(2k-2).
        let mut term = 1.0;
        let mut s = 0.0;
        for k in 1..=24 {
            s += k as f64 / (2 * k + 1) as f64 * term;
            term *= r2;
        }
        return s;
    }
    let r = r2.sqrt();
    (r / (2.0 * (1.0 - r2)) - r.atanh() / 2.0) / (r2 * r)
}

/// Collapsed Gauss–Legendre rule on flat triangles.
struct Rule {
    nodes: Vec<(f64, f64)>,
}

impl Rule {
    fn new(n: usize) -> Self {
        Self { nodes: gauss_legendre_on(n, 0.0, 1.0) }
    }

    fn triangle(&self, t: &[[f64; 3]; 3]) -> f64 {
        let e1 = sub(&t[1], &t[0]);
        let e2 = sub(&t[2], &t[1]);
        let jac = norm(&cross(&e1, &e2));
        let mut s = 0.0;
        for &(u, wu) in &self.nodes {
            for &(v, wv) in &self.nodes {
                let x = [0, 1, 2].map(|k| t[0][k] + u * e1[k] + u * v * e2[k]);
                s += wu * wv * u * cone_density(dot(&x, &x));
            }
        }
        s * jac
    }
}

/// Sum of exterior angle times length over hexagon–hexagon edges.
pub fn bending_term(complex: &ConvexCoreComplex) -> f64 {
    complex.hexagon_edges().map(|e| e.exterior_angle * e.length).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WCore {
    pub volume: f64,
    pub bending: f64,
    /// `volume - bending / 4`.
    pub value: f64,
    pub negative: bool,
}

pub fn w_core(complex: &ConvexCoreComplex) -> WCore {
    let volume = core_volume(complex).value;
    let bending = bending_term(complex);
    let value = volume - 0.25 * bending;
    WCore { volume, bending, value, negative: value < 0.0 }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetFace {
    pub circle: usize,
    pub area: f64,
    pub angle_sum: f64,
    /// `angle_sum - (area + 2 pi)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    pub faces: Vec<GaussBonnetFace>,
    pub max_residual: f64,
    /// Largest deviation of a hexagon angle from a right angle.
    pub hexagon_angle_residual: f64,
}

/// Exterior angles of the hexagon–hexagon edges at each polygon face against its area plus `2 pi`.
pub fn gauss_bonnet_check(complex: &ConvexCoreComplex) -> GaussBonnetReport {
    let faces: Vec<GaussBonnetFace> = complex
        .polygon_faces()
        .map(|(f, face)| {
            let FaceKind::Polygon { circle } = face.kind else { unreachable!() };
            let area = complex.face_area(f);
            let angle_sum: f64 = face
                .vertices
                .iter()
                .filter_map(|&v| complex.alpha_edge_at(v))
                .map(|e| e.exterior_angle)
                .sum();
            GaussBonnetFace { circle, area, angle_sum, residual: angle_sum - (area + 2.0 * PI) }
        })
        .collect();
    let max_residual = faces.iter().map(|f| f.residual.abs()).fold(0.0, f64::max);
    let hexagon_angle_residual = complex
        .hexagon_faces()
        .flat_map(|(f, _)| complex.face_angles(f))
        .map(|a| (a - PI / 2.0).abs())
        .fold(0.0, f64::max);
    GaussBonnetReport { faces, max_residual, hexagon_angle_residual }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaReport {
    pub hexagons: f64,
    pub polygons: f64,
    /// Every face counted once.
    pub single: f64,
    /// Polygon faces counted twice.
    pub double: f64,
    /// `single - (2 pi (2g - 2) + polygons)`.
    pub identity_residual: f64,
}

pub fn boundary_area(complex: &ConvexCoreComplex) -> AreaReport {
    let hexagons: f64 = complex.hexagon_faces().map(|(f, _)| complex.face_area(f)).sum();
    let polygons: f64 = complex.polygon_faces().map(|(f, _)| complex.face_area(f)).sum();
    let g = complex.genus as f64;
    AreaReport {
        hexagons,
        polygons,
        single: hexagons + polygons,
        double: hexagons + 2.0 * polygons,
        identity_residual: hexagons + polygons - (2.0 * PI * (2.0 * g - 2.0) + polygons),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Inequality {
    fn less(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, holds: lhs < rhs }
    }
}

/// Upper bounds for the renormalized volume of the quotient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VrCertificate {
    pub genus: usize,
    /// `(6g - 8) pi`.
    pub unconditional_bound: f64,
    pub min_plane_distance: f64,
    /// Issued when the minimum plane distance is at least `4`.
    pub minus_two_pi_certificate: bool,
    pub w_core: WCore,
    pub volume_error_estimate: f64,
    pub hexagon_edges: usize,
    pub expected_hexagon_edges: usize,
    pub exterior_angle_sum: f64,
    /// `vol < sum theta - 2 pi`.
    pub angle_inequality: Inequality,
    /// `vol < area / 2` with polygon faces counted twice.
    pub isoperimetric: Inequality,
    pub areas: AreaReport,
    pub gauss_bonnet_max_residual: f64,
    pub hexagon_angle_residual: f64,
    pub fuchsian: bool,
}

pub fn vr_upper_bounds(config: &SchottkyConfiguration) -> Result<VrCertificate> {
    let distances = min_plane_distance(config)?;
    let complex = convex_core(config)?;
    Ok(certificate(config, &complex, distances.min))
}

/// Certificate for an already constructed core.
pub fn certificate(config: &SchottkyConfiguration, complex: &ConvexCoreComplex, min_distance: f64) -> VrCertificate {
    let g = config.genus;
    let vol = core_volume(complex);
    let bending = bending_term(complex);
    let w = vol.value - 0.25 * bending;
    let theta: f64 = complex.hexagon_edges().map(|e| e.exterior_angle).sum();
    let areas = boundary_area(complex);
    let gb = gauss_bonnet_check(complex);
    VrCertificate {
        genus: g,
        unconditional_bound: (6.0 * g as f64 - 8.0) * PI,
        min_plane_distance: min_distance,
        minus_two_pi_certificate: min_distance >= 4.0,
        w_core: WCore { volume: vol.value, bending, value: w, negative: w < 0.0 },
        volume_error_estimate: vol.error_estimate,
        hexagon_edges: complex.hexagon_edges().count(),
        expected_hexagon_edges: 6 * g - 6,
        exterior_angle_sum: theta,
        angle_inequality: Inequality::less(vol.value, theta - 2.0 * PI),
        isoperimetric: Inequality::less(vol.value, 0.5 * areas.double),
        areas,
        gauss_bonnet_max_residual: gb.max_residual,
        hexagon_angle_residual: gb.hexagon_angle_residual,
        fuchsian: complex.fuchsian,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub parameter: f64,
    pub min_plane_distance: f64,
    pub w_core: WCore,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreScan {
    pub points: Vec<ScanPoint>,
    /// Parameters where `w_core` changes sign, by linear interpolation between samples.
    pub sign_changes: Vec<f64>,
}

/// Evaluates `w_core` along a one-parameter family of configurations.
pub fn w_core_scan<F>(parameters: &[f64], family: F) -> Result<CoreScan>
where
    F: Fn(f64) -> Result<SchottkyConfiguration>,
{
    let mut points = Vec::with_capacity(parameters.len());
    for &p in parameters {
        let config = family(p)?;
        let min = min_plane_distance(&config)?.min;
        points.push(ScanPoint { parameter: p, min_plane_distance: min, w_core: w_core(&convex_core(&config)?) });
    }
    let sign_changes = points
        .windows(2)
        .filter(|w| (w[0].w_core.value < 0.0) != (w[1].w_core.value < 0.0))
        .map(|w| {
            let (a, b) = (w[0].w_core.value, w[1].w_core.value);
            w[0].parameter + (w[1].parameter - w[0].parameter) * a / (a - b)
        })
        .collect();
    Ok(CoreScan { points, sign_changes })
}

/// Triangulated core in Klein coordinates, one group per face (`P_i` or `H_a_b_c`).
pub fn core_mesh(complex: &ConvexCoreComplex) -> Mesh {
    let mut mesh = Mesh { vertices: complex.vertices.iter().map(|v| v.klein).collect(), groups: vec![] };
    for face in &complex.faces {
        let name = match face.kind {
            FaceKind::Polygon { circle } => format!("P_{circle}"),
            FaceKind::Hexagon { triple: [a, b, c] } => format!("H_{a}_{b}_{c}"),
        };
        let vs = &face.vertices;
        let tris = (1..vs.len() - 1).map(|k| [vs[0], vs[k], vs[k + 1]]).collect();
        mesh.groups.push(crate::mesh::FaceGroup { name, faces: tris });
    }
    mesh
}

/// Exterior angles of every edge, for range checks.
pub fn exterior_angles(complex: &ConvexCoreComplex) -> Vec<(EdgeKind, f64)> {
    complex.edges.iter().map(|e| (e.kind, e.exterior_angle)).collect()
}
