use num_complex::Complex;

use super::sphere::PiecewiseSphere;
use crate::epstein::{caterpillar_point, domain_epstein};
use crate::hyp3::Side;
use crate::mesh::{grid_faces, Mesh};
use crate::metric::CircleDomain;

impl PiecewiseSphere {
    /// Triangle mesh with groups `E`, `C_i` and `T_i`, one strip and cap per boundary circle.
    ///
    /// `n` controls the number of samples along each circle and across each piece.
    pub fn mesh(&self, n: usize) -> Mesh {
        let n = n.max(4);
        let mut mesh = Mesh::default();
        let (pts, faces) = planar_mesh(&self.domain, n);
        let verts = pts.iter().map(|p| domain_epstein(&*self.oracle, *p).to_array()).collect();
        mesh.add_group("E", verts, faces);
        let nl = (n / 4).max(2);
        for (i, strip) in self.strips.iter().enumerate() {
            let len = strip.circle.length();
            let mut strip_v = Vec::with_capacity(n * (nl + 1));
            let mut cap_v = Vec::with_capacity(n * (nl + 1));
            for a in 0..n {
                let s = len * a as f64 / n as f64;
                let jet = crate::metric::BoundaryJet::new(&*self.oracle, &strip.circle, s);
                let (t0, t1) = (crate::epstein::t_start(&jet), strip.circle.curvature());
                for b in 0..=nl {
                    let l = b as f64 / nl as f64;
                    strip_v.push(caterpillar_point(&jet, t0 + l * (t1 - t0)));
                }
                let land = caterpillar_point(&jet, t1);
                let (c, r) = (strip.circle.center, strip.circle.radius);
                let w = Complex::new(land[0] - c.re, land[1] - c.im) / r;
                for b in 0..=nl {
                    let l = b as f64 / nl as f64;
                    let h = c + w * (r * l);
                    cap_v.push([h.re, h.im, r * (1.0 - l * l * w.norm_sqr()).max(0.0).sqrt()]);
                }
            }
            mesh.add_group(&format!("C_{i}"), strip_v, grid_faces(n, nl + 1, true));
            mesh.add_group(&format!("T_{i}"), cap_v, grid_faces(n, nl + 1, true));
        }
        mesh
    }
}

/// Planar triangulation of a circle domain: a polar grid for a disk, otherwise a
/// Cartesian grid whose outside vertices are pulled onto the nearest boundary circle.
fn planar_mesh(domain: &CircleDomain<f64>, n: usize) -> (Vec<Complex<f64>>, Vec<[usize; 3]>) {
    let outer = domain.outer();
    if domain.holes().is_empty() {
        let rings = (n / 4).max(2);
        let mut pts = Vec::with_capacity(n * rings);
        for a in 0..n {
            let th = 2.0 * std::f64::consts::PI * a as f64 / n as f64;
            for b in 0..rings {
                let rho = outer.radius * (b + 1) as f64 / rings as f64;
                pts.push(outer.center + Complex::from_polar(rho, th));
            }
        }
        let mut faces = grid_faces(n, rings, true);
        pts.push(outer.center);
        let centre = pts.len() - 1;
        for a in 0..n {
            faces.push([centre, a * rings, ((a + 1) % n) * rings]);
        }
        return (pts, faces);
    }
    let (lo, hi) = domain.bounding_box();
    let h = (hi.re - lo.re).max(hi.im - lo.im) / n as f64;
    let m = n + 1;
    let mut pts = Vec::with_capacity(m * m);
    let mut inside = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let p = Complex::new(lo.re + i as f64 * h, lo.im + j as f64 * h);
            let ok = domain.contains(p);
            inside.push(ok);
            pts.push(if ok { p } else { snap(domain, p) });
        }
    }
    let id = |i: usize, j: usize| i * m + j;
    let mut faces = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let quad = [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)];
            if quad.iter().filter(|&&q| inside[q]).count() < 2 {
                continue;
            }
            for tri in [[quad[0], quad[1], quad[2]], [quad[0], quad[2], quad[3]]] {
                let (a, b, c) = (pts[tri[0]], pts[tri[1]], pts[tri[2]]);
                let area = ((b - a).conj() * (c - a)).im;
                if area > 1e-3 * h * h {
                    faces.push(tri);
                }
            }
        }
    }
    (pts, faces)
}

fn snap(domain: &CircleDomain<f64>, p: Complex<f64>) -> Complex<f64> {
    let mut best = (f64::INFINITY, p);
    for c in domain.boundary() {
        let d = p - c.center;
        let rho = d.norm();
        let gap = match c.orientation {
            Side::Inside => rho - c.radius,
            Side::Outside => c.radius - rho,
        };
        if gap > 0.0 && gap < best.0 {
            let dir = if rho > 0.0 { d / rho } else { Complex::new(1.0, 0.0) };
            best = (gap, c.center + dir * c.radius);
        }
    }
    best.1
}
