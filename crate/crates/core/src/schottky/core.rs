use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::config::SchottkyConfiguration;
use crate::error::{Error, Result};
use crate::hyp3::minkowski::{self, Vec4};
use crate::hyp3::{perpendicular_feet, GeodesicPlane, PlaneBoundary};
use crate::vec3::{cross, dot, norm};

/// Klein-coordinate tolerance for merging vertices.
pub const KLEIN_TOLERANCE: f64 = 1e-9;
/// Hyperbolic-distance tolerance for a point lying on a plane.
pub const INCIDENCE_TOLERANCE: f64 = 1e-9;

/// Vertex of the core: the foot on `P_circle` of the common perpendicular to `P_partner`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoreVertex {
    pub circle: usize,
    pub partner: usize,
    pub klein: [f64; 3],
    pub hyperboloid: Vec4<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// Piece of the boundary plane over circle `circle`.
    Polygon { circle: usize },
    /// Right-angled hexagon in the plane orthogonal to the three boundary planes.
    Hexagon { triple: [usize; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    /// Vertex indices in cyclic order.
    pub vertices: Vec<usize>,
    /// Unit spacelike normal pointing away from the core.
    pub normal: Vec4<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    HexagonHexagon,
    PolygonHexagon,
    PolygonPolygon,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub endpoints: [usize; 2],
    pub faces: [usize; 2],
    pub kind: EdgeKind,
    /// Hyperbolic length.
    pub length: f64,
    /// Exterior dihedral angle, the angle between the outward normals of the two faces.
    pub exterior_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub characteristic: i64,
}

/// Convex core of the reflection group restricted to the fundamental domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexCoreComplex {
    pub genus: usize,
    pub vertices: Vec<CoreVertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub euler: EulerData,
    /// All boundary circles are orthogonal to one circle, so the core is a doubled plane polygon.
    pub fuchsian: bool,
}

impl ConvexCoreComplex {
    pub fn hexagon_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::HexagonHexagon)
    }

    pub fn polygon_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| matches!(f.kind, FaceKind::Polygon { .. }))
    }

    pub fn hexagon_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| matches!(f.kind, FaceKind::Hexagon { .. }))
    }

    /// Interior angles of a face at its vertices, in the face's vertex order.
    pub fn face_angles(&self, face: usize) -> Vec<f64> {
        let vs = &self.faces[face].vertices;
        let m = vs.len();
        (0..m)
            .map(|k| {
                let x = |i: usize| self.vertices[vs[i]].hyperboloid;
                minkowski::angle_at(&x(k), &x((k + m - 1) % m), &x((k + 1) % m))
            })
            .collect()
    }

    /// Hyperbolic area of a face from its angle deficit.
    pub fn face_area(&self, face: usize) -> f64 {
        let m = self.faces[face].vertices.len() as f64;
        (m - 2.0) * PI - self.face_angles(face).iter().sum::<f64>()
    }

    /// The hexagon–hexagon edge through a vertex.
    pub fn alpha_edge_at(&self, vertex: usize) -> Option<&Edge> {
        self.hexagon_edges().find(|e| e.endpoints.contains(&vertex))
    }
}

/// Signed hyperbolic distance from a hyperboloid point to the plane with unit normal `m`,
/// positive on the side `m` points to.
fn plane_value(m: &Vec4<f64>, x: &Vec4<f64>) -> f64 {
    minkowski::dot(x, m).asinh()
}

/// Builds the convex core polyhedron.
pub fn convex_core(config: &SchottkyConfiguration) -> Result<ConvexCoreComplex> {
    let normals: Vec<Vec4<f64>> = config.planes().iter().map(|p| p.minkowski()).collect();
    let n = normals.len();
    let mut feet = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = perpendicular_feet(&normals[i], &normals[j]);
            feet[i][j] = Some(a);
            feet[j][i] = Some(b);
        }
    }
    let foot = |i: usize, j: usize| feet[i][j].expect("feet exist for distinct circles");

    let mut builder = Builder { normals: &normals, foot: &foot, index: BTreeMap::new(), vertices: vec![], faces: vec![] };
    let fuchsian = match common_orthogonal(&normals) {
        Some(q) => {
            flat_core(config, &q, &mut builder)?;
            true
        }
        None => {
            general_core(&mut builder)?;
            false
        }
    };
    let Builder { vertices, faces, .. } = builder;
    finish(config.genus, vertices, faces, fuchsian)
}

struct Builder<'a, F: Fn(usize, usize) -> Vec4<f64>> {
    normals: &'a [Vec4<f64>],
    foot: &'a F,
    index: BTreeMap<(usize, usize), usize>,
    vertices: Vec<CoreVertex>,
    faces: Vec<Face>,
}

impl<F: Fn(usize, usize) -> Vec4<f64>> Builder<'_, F> {
    fn vertex(&mut self, circle: usize, partner: usize) -> usize {
        if let Some(&v) = self.index.get(&(circle, partner)) {
            return v;
        }
        let x = (self.foot)(circle, partner);
        self.vertices.push(CoreVertex { circle, partner, klein: minkowski::to_klein(&x), hyperboloid: x });
        self.index.insert((circle, partner), self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    /// Hexagon over `(a, b, c)` with vertices on `P_a, P_b, P_b, P_c, P_c, P_a`.
    fn hexagon(&mut self, t: [usize; 3], normal: Vec4<f64>) {
        let [a, b, c] = t;
        let vertices = vec![
            self.vertex(a, b),
            self.vertex(b, a),
            self.vertex(b, c),
            self.vertex(c, b),
            self.vertex(c, a),
            self.vertex(a, c),
        ];
        self.faces.push(Face { kind: FaceKind::Hexagon { triple: t }, vertices, normal });
    }

    /// Whether the foot of `alpha_{i,j}` on `P_i` lies in the closed fundamental domain.
    fn in_domain(&self, i: usize, j: usize) -> bool {
        let x = (self.foot)(i, j);
        self.normals.iter().all(|m| plane_value(m, &x) <= INCIDENCE_TOLERANCE)
    }
}

/// Unit normal of a plane orthogonal to every boundary plane, if one exists.
fn common_orthogonal(normals: &[Vec4<f64>]) -> Option<Vec4<f64>> {
    let q = minkowski::orthogonal_complement(&normals[0], &normals[1], &normals[2]);
    let q = minkowski::normalize_spacelike(&q, 1e-14 * q.iter().fold(0.0f64, |a, v| a.max(v * v)))?;
    normals.iter().all(|m| minkowski::dot(&q, m).abs() < 1e-9).then_some(q)
}

/// Doubled plane polygon: every boundary plane is orthogonal to the plane `q`.
fn flat_core<F: Fn(usize, usize) -> Vec4<f64>>(
    config: &SchottkyConfiguration,
    q: &Vec4<f64>,
    b: &mut Builder<'_, F>,
) -> Result<()> {
    let n = config.circles.len();
    let key = |c: num_complex::Complex<f64>| match GeodesicPlane::from_minkowski(q).map(|p| p.boundary) {
        Some(PlaneBoundary::Circle { center, .. }) => (c - center).arg(),
        Some(PlaneBoundary::Line { point, direction }) => {
            let d = c - point;
            d.re * direction.re + d.im * direction.im
        }
        None => 0.0,
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| key(config.circles[i].center).total_cmp(&key(config.circles[j].center)));
    let o = |k: usize| order[k % n];

    let mut top = vec![vec![]; n];
    let mut bottom = vec![vec![]; n];
    for i in 1..n - 1 {
        b.hexagon([o(0), o(i), o(i + 1)], *q);
        if i > 1 {
            top[o(0)].push(o(i));
            top[o(i)].push(o(0));
        }
    }
    let down = minkowski::scale(q, -1.0);
    for i in 2..n {
        b.hexagon([o(1), o(i), o(i + 1)], down);
        if i > 2 {
            bottom[o(1)].push(o(i));
            bottom[o(i)].push(o(1));
        }
    }

    for k in 0..n {
        let (c, prev, next) = (o(k), o(k + n - 1), o(k + 1));
        let (a, z) = (b.vertex(c, prev), b.vertex(c, next));
        let (ka, kz) = (b.vertices[a].klein, b.vertices[z].klein);
        let dir = [kz[0] - ka[0], kz[1] - ka[1], kz[2] - ka[2]];
        let len2 = dot(&dir, &dir);
        let along = |v: &CoreVertex| {
            let d = [v.klein[0] - ka[0], v.klein[1] - ka[1], v.klein[2] - ka[2]];
            dot(&d, &dir) / len2
        };
        let mut side = |partners: &[usize], ascending: bool| -> Result<Vec<usize>> {
            let mut vs: Vec<(f64, usize)> = partners
                .iter()
                .map(|&p| {
                    let v = b.vertex(c, p);
                    (along(&b.vertices[v]), v)
                })
                .collect();
            if vs.iter().any(|&(t, _)| t <= KLEIN_TOLERANCE || t >= 1.0 - KLEIN_TOLERANCE) {
                return Err(Error::DegenerateConfiguration(format!(
                    "a perpendicular foot on plane {c} lies outside the core edge between its neighbours"
                )));
            }
            vs.sort_by(|x, y| if ascending { x.0.total_cmp(&y.0) } else { y.0.total_cmp(&x.0) });
            Ok(vs.into_iter().map(|(_, v)| v).collect())
        };
        let mut vertices = vec![a];
        vertices.extend(side(&top[c], true)?);
        vertices.push(z);
        vertices.extend(side(&bottom[c], false)?);
        b.faces.push(Face { kind: FaceKind::Polygon { circle: c }, vertices, normal: b.normals[c] });
    }
    check_feet_in_domain(b)
}

fn check_feet_in_domain<F: Fn(usize, usize) -> Vec4<f64>>(b: &Builder<'_, F>) -> Result<()> {
    for v in &b.vertices {
        if !b.in_domain(v.circle, v.partner) {
            return Err(Error::DegenerateConfiguration(format!(
                "the common perpendicular of planes {} and {} leaves the fundamental domain",
                v.circle, v.partner
            )));
        }
    }
    Ok(())
}

/// Half-space intersection: boundary planes plus every supporting triple-orthogonal plane.
fn general_core<F: Fn(usize, usize) -> Vec4<f64>>(b: &mut Builder<'_, F>) -> Result<()> {
    let n = b.normals.len();
    let valid: Vec<Vec4<f64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && b.in_domain(i, j))
        .map(|(i, j)| (b.foot)(i, j))
        .collect();
    if valid.len() < 4 {
        return Err(Error::DegenerateConfiguration("too few perpendicular feet in the fundamental domain".into()));
    }
    let centroid = valid.iter().fold([0.0; 4], |acc, x| minkowski::add(&acc, x));

    for a in 0..n {
        for bb in a + 1..n {
            for c in bb + 1..n {
                let q = minkowski::orthogonal_complement(&b.normals[a], &b.normals[bb], &b.normals[c]);
                let scale = q.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                let Some(mut q) = minkowski::normalize_spacelike(&minkowski::scale(&q, 1.0 / scale), 1e-12) else {
                    continue;
                };
                if minkowski::dot(&q, &centroid) > 0.0 {
                    q = minkowski::scale(&q, -1.0);
                }
                let values: Vec<f64> = valid.iter().map(|x| plane_value(&q, x)).collect();
                if values.iter().any(|&v| v > INCIDENCE_TOLERANCE) {
                    continue;
                }
                let on_plane = values.iter().filter(|v| v.abs() <= INCIDENCE_TOLERANCE).count();
                let own = [(a, bb), (bb, a), (bb, c), (c, bb), (c, a), (a, c)];
                if on_plane != 6 || !own.iter().all(|&(i, j)| b.in_domain(i, j)) {
                    return Err(Error::DegenerateConfiguration(format!(
                        "supporting plane orthogonal to ({a}, {bb}, {c}) touches {on_plane} feet instead of its six"
                    )));
                }
                b.hexagon([a, bb, c], q);
            }
        }
    }
    if b.faces.is_empty() {
        return Err(Error::DegenerateConfiguration("no supporting triple-orthogonal plane".into()));
    }

    for i in 0..n {
        let on: Vec<usize> = b.index.iter().filter(|(&(c, _), _)| c == i).map(|(_, &v)| v).collect();
        if on.len() < 3 {
            return Err(Error::DegenerateConfiguration(format!("plane {i} meets the core in fewer than three vertices")));
        }
        let pts: Vec<[f64; 3]> = on.iter().map(|&v| b.vertices[v].klein).collect();
        let hull = convex_hull_on_plane(&pts, &b.normals[i]);
        if hull.len() != on.len() {
            return Err(Error::DegenerateConfiguration(format!(
                "face on plane {i} has a hexagon vertex that is not extreme"
            )));
        }
        let vertices = hull.into_iter().map(|k| on[k]).collect();
        b.faces.push(Face { kind: FaceKind::Polygon { circle: i }, vertices, normal: b.normals[i] });
    }
    check_feet_in_domain(b)
}

/// Indices of the strict convex hull of coplanar Klein points, in cyclic order.
fn convex_hull_on_plane(pts: &[[f64; 3]], m: &Vec4<f64>) -> Vec<usize> {
    let nrm = [m[1], m[2], m[3]];
    let seed = if nrm[0].abs() < 0.9 * norm(&nrm) { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(&nrm, &seed);
    let e1 = e1.map(|c| c / norm(&e1));
    let e2 = cross(&nrm, &e1);
    let e2 = e2.map(|c| c / norm(&e2));
    let p2: Vec<(f64, f64)> = pts.iter().map(|p| (dot(p, &e1), dot(p, &e2))).collect();
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| p2[a].0.total_cmp(&p2[b].0).then(p2[a].1.total_cmp(&p2[b].1)));
    let turn = |o: usize, a: usize, b: usize| {
        (p2[a].0 - p2[o].0) * (p2[b].1 - p2[o].1) - (p2[a].1 - p2[o].1) * (p2[b].0 - p2[o].0)
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in [idx.clone(), idx.into_iter().rev().collect()] {
        let start = hull.len();
        for &p in &pass {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-14 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Edge extraction, closed-surface checks and edge measurements.
fn finish(genus: usize, vertices: Vec<CoreVertex>, faces: Vec<Face>, fuchsian: bool) -> Result<ConvexCoreComplex> {
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (ka, kb) = (vertices[a].klein, vertices[b].klein);
            let d = [ka[0] - kb[0], ka[1] - kb[1], ka[2] - kb[2]];
            if norm(&d) <= KLEIN_TOLERANCE {
                return Err(Error::DegenerateConfiguration("two core vertices coincide".into()));
            }
        }
    }
    let mut incidence: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        let m = face.vertices.len();
        for k in 0..m {
            let (u, v) = (face.vertices[k], face.vertices[(k + 1) % m]);
            incidence.entry((u.min(v), u.max(v))).or_default().push(f);
        }
    }
    let mut edges = Vec::with_capacity(incidence.len());
    for ((u, v), fs) in incidence {
        if fs.len() != 2 {
            return Err(Error::DegenerateConfiguration(format!(
                "edge between vertices {u} and {v} bounds {} faces",
                fs.len()
            )));
        }
        let hex = |f: usize| matches!(faces[f].kind, FaceKind::Hexagon { .. });
        let kind = match (hex(fs[0]), hex(fs[1])) {
            (true, true) => EdgeKind::HexagonHexagon,
            (false, false) => EdgeKind::PolygonPolygon,
            _ => EdgeKind::PolygonHexagon,
        };
        edges.push(Edge {
            endpoints: [u, v],
            faces: [fs[0], fs[1]],
            kind,
            length: minkowski::distance(&vertices[u].hyperboloid, &vertices[v].hyperboloid),
            exterior_angle: minkowski::spacelike_angle(&faces[fs[0]].normal, &faces[fs[1]].normal),
        });
    }
    let euler = EulerData {
        vertices: vertices.len(),
        edges: edges.len(),
        faces: faces.len(),
        characteristic: vertices.len() as i64 - edges.len() as i64 + faces.len() as i64,
    };
    if euler.characteristic != 2 {
        return Err(Error::DegenerateConfiguration(format!(
            "face lattice is not a sphere (Euler characteristic {})",
            euler.characteristic
        )));
    }
    Ok(ConvexCoreComplex { genus, vertices, edges, faces, euler, fuchsian })
}
