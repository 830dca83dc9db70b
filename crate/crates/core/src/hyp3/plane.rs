use num_complex::Complex;

use super::circle::{CircleBdry, Side};
use super::minkowski::{self, Vec4};
use super::point::{PointKlein, PointUHS};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Ideal boundary of a geodesic plane: a round circle or a straight line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneBoundary<T> {
    Circle { center: Complex<T>, radius: T },
    /// Line through `point` with unit `direction`.
    Line { point: Complex<T>, direction: Complex<T> },
}

/// Totally geodesic plane of hyperbolic 3-space together with a designated
/// closed half-space.
///
/// For a circle boundary, `Side::Inside` designates the half-space over the
/// disk. For a line boundary, `Side::Inside` designates the half-space to the
/// left of the direction vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicPlane<T> {
    pub boundary: PlaneBoundary<T>,
    pub side: Side,
}

/// Common perpendicular between two disjoint planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perpendicular<T> {
    pub foot_a: PointUHS<T>,
    pub foot_b: PointUHS<T>,
    pub length: T,
}

impl<T: Real> GeodesicPlane<T> {
    pub fn over_circle(center: Complex<T>, radius: T, side: Side) -> Self {
        Self { boundary: PlaneBoundary::Circle { center, radius }, side }
    }

    pub fn over_line(point: Complex<T>, direction: Complex<T>, side: Side) -> Self {
        let direction = direction / direction.norm();
        Self { boundary: PlaneBoundary::Line { point, direction }, side }
    }

    /// Plane over a domain boundary circle, with the half-space over the domain designated.
    pub fn from_circle(c: &CircleBdry<T>) -> Self {
        Self::over_circle(c.center, c.radius, c.orientation)
    }

    /// Unit spacelike normal `m`; the designated half-space is `<X, m> < 0`.
    pub fn minkowski(&self) -> Vec4<T> {
        let two = lit::<T>(2.0);
        let m = match self.boundary {
            PlaneBoundary::Circle { center, radius } => {
                let c2 = center.norm_sqr();
                let r2 = radius * radius;
                let s = T::one() / (two * radius);
                [
                    -(T::one() + c2 - r2) * s,
                    -two * center.re * s,
                    -two * center.im * s,
                    (T::one() - c2 + r2) * s,
                ]
            }
            PlaneBoundary::Line { point, direction } => {
                // nu = i u points to the left of the line.
                let nu = Complex::new(-direction.im, direction.re);
                let delta = nu.re * point.re + nu.im * point.im;
                // <L(zeta), m> = 2 (nu . zeta - delta) is negative on the right.
                let m = [delta, nu.re, nu.im, delta];
                minkowski::scale(&m, -T::one())
            }
        };
        match self.side {
            Side::Inside => m,
            Side::Outside => minkowski::scale(&m, -T::one()),
        }
    }

    /// Plane with normal `m`, designating `<X, m> < 0`; `None` if `m` is not spacelike.
    pub fn from_minkowski(m: &Vec4<T>) -> Option<Self> {
        let m = minkowski::normalize_spacelike(m, lit(1e-14))?;
        let s = m[3] - m[0];
        let scale = m[1].abs().max(m[2].abs()).max(m[3].abs()).max(T::one());
        if s.abs() <= lit::<T>(1e-12) * scale {
            // m = -(delta, nu, delta) designates the left side of u = -i nu.
            let nu = -Complex::new(m[1], m[2]);
            let nn = nu.norm();
            let nu = nu / nn;
            let delta = -m[0] / nn;
            let u = Complex::new(nu.im, -nu.re);
            return Some(Self::over_line(nu * delta, u, Side::Inside));
        }
        let radius = T::one() / s.abs();
        let sgn = if s > T::zero() { T::one() } else { -T::one() };
        let center = Complex::new(-m[1], -m[2]) * (radius * sgn);
        let side = if s > T::zero() { Side::Inside } else { Side::Outside };
        Some(Self::over_circle(center, radius, side))
    }

    pub fn flipped(mut self) -> Self {
        self.side = self.side.flipped();
        self
    }

    pub fn is_line(&self) -> bool {
        matches!(self.boundary, PlaneBoundary::Line { .. })
    }

    /// Signed Lorentzian value `<X, m>` at a point; negative in the designated half-space.
    pub fn signed_value(&self, p: &PointUHS<T>) -> T {
        minkowski::dot(&p.to_hyperboloid(), &self.minkowski())
    }

    /// Point of the plane in upper half-space coordinates from boundary-polar data:
    /// `rho` in `[0,1)` is the Euclidean fraction of the radius, `angle` the direction.
    pub fn sample(&self, rho: T, angle: T) -> PointUHS<T> {
        match self.boundary {
            PlaneBoundary::Circle { center, radius } => {
                let h = center + Complex::new(angle.cos(), angle.sin()) * (rho * radius);
                PointUHS::new(h.re, h.im, radius * (T::one() - rho * rho).sqrt())
            }
            PlaneBoundary::Line { point, direction } => {
                // `angle` is the position along the line and `rho` maps to the height.
                let h = point + direction * angle;
                PointUHS::new(h.re, h.im, rho / (T::one() - rho) + lit(1e-12))
            }
        }
    }

    /// Klein-model plane `{k : a . k = b}` as `(a, b)` with `|a| = 1`.
    pub fn klein_plane(&self) -> ([T; 3], T) {
        let m = self.minkowski();
        let n = (m[1] * m[1] + m[2] * m[2] + m[3] * m[3]).sqrt();
        ([m[1] / n, m[2] / n, m[3] / n], m[0] / n)
    }

    /// Residual of a Klein point with respect to the Klein plane.
    pub fn klein_residual(&self, k: &PointKlein<T>) -> T {
        let (a, b) = self.klein_plane();
        a[0] * k.u + a[1] * k.v + a[2] * k.w - b
    }
}

/// Hyperbolic distance between two disjoint geodesic planes.
pub fn plane_distance<T: Real>(a: &GeodesicPlane<T>, b: &GeodesicPlane<T>) -> Result<T> {
    let lambda = minkowski::dot(&a.minkowski(), &b.minkowski()).abs();
    if lambda <= T::one() + lit(1e-9) {
        return Err(Error::OverlappingPlanes { inversive: lambda.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(lambda.acosh())
}

/// Common perpendicular of two disjoint planes: feet on `a` and on `b`.
pub fn common_perpendicular<T: Real>(
    a: &GeodesicPlane<T>,
    b: &GeodesicPlane<T>,
) -> Result<Perpendicular<T>> {
    let length = plane_distance(a, b)?;
    let (fa, fb) = perpendicular_feet(&a.minkowski(), &b.minkowski());
    Ok(Perpendicular {
        foot_a: PointUHS::from_klein(&PointKlein::from_hyperboloid(&fa)),
        foot_b: PointUHS::from_klein(&PointKlein::from_hyperboloid(&fb)),
        length,
    })
}

/// Hyperboloid feet of the common perpendicular of the planes with normals `m1`, `m2`.
pub fn perpendicular_feet<T: Real>(m1: &Vec4<T>, m2: &Vec4<T>) -> (Vec4<T>, Vec4<T>) {
    let lambda = minkowski::dot(m1, m2);
    let beta = T::one() / (lambda * lambda - T::one()).sqrt();
    let mut xa = minkowski::scale(&minkowski::add(m2, &minkowski::scale(m1, -lambda)), beta);
    let mut xb = minkowski::scale(&minkowski::add(m1, &minkowski::scale(m2, -lambda)), beta);
    if xa[0] < T::zero() {
        xa = minkowski::scale(&xa, -T::one());
    }
    if xb[0] < T::zero() {
        xb = minkowski::scale(&xb, -T::one());
    }
    (xa, xb)
}

/// The geodesic plane orthogonal to three pairwise disjoint planes.
pub fn mutual_orthogonal_plane<T: Real>(
    a: &GeodesicPlane<T>,
    b: &GeodesicPlane<T>,
    c: &GeodesicPlane<T>,
) -> Result<GeodesicPlane<T>> {
    for (p, q) in [(a, b), (b, c), (a, c)] {
        plane_distance(p, q)?;
    }
    let q = minkowski::orthogonal_complement(&a.minkowski(), &b.minkowski(), &c.minkowski());
    let scale = q.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if scale <= T::zero() {
        return Err(Error::DegenerateTriple { reason: "normals are linearly dependent".into() });
    }
    let q = minkowski::scale(&q, T::one() / scale);
    if minkowski::dot(&q, &q) <= lit(1e-12) {
        return Err(Error::DegenerateTriple {
            reason: "no common orthogonal plane (orthogonal vector is not spacelike)".into(),
        });
    }
    let plane = GeodesicPlane::from_minkowski(&q).ok_or_else(|| Error::DegenerateTriple {
        reason: "orthogonal vector is not spacelike".into(),
    })?;
    if plane.is_line() {
        return Err(Error::DegenerateTriple {
            reason: "common orthogonal circle degenerates to a line".into(),
        });
    }
    let plane = match plane.side {
        Side::Inside => plane,
        Side::Outside => plane.flipped(),
    };
    Ok(plane)
}

/// Interior dihedral angle between the designated half-spaces of two crossing planes.
///
/// This is the angle of the wedge `{<X,ma> <= 0} ∩ {<X,mb> <= 0}`.
pub fn dihedral_angle<T: Real>(a: &GeodesicPlane<T>, b: &GeodesicPlane<T>) -> Result<T> {
    let c = minkowski::dot(&a.minkowski(), &b.minkowski());
    if c.abs() >= T::one() {
        return Err(Error::NonIntersecting);
    }
    Ok((-c).acos())
}
