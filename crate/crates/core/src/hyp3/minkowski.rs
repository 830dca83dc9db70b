//! Hyperboloid-model helpers: the Lorentzian form `-x0 y0 + x1 y1 + x2 y2 + x3 y3`.
//!
//! Geodesic planes are encoded by unit spacelike vectors `m`; the plane is
//! `{X : <X, m> = 0}` on the upper sheet of the hyperboloid. Every plane
//! computation (distances, perpendiculars, dihedral angles) reduces to
//! linear algebra on these vectors.

use crate::scalar::{lit, Real};

pub type Vec4<T> = [T; 4];

#[inline]
pub fn dot<T: Real>(a: &Vec4<T>, b: &Vec4<T>) -> T {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
pub fn scale<T: Real>(a: &Vec4<T>, s: T) -> Vec4<T> {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

#[inline]
pub fn add<T: Real>(a: &Vec4<T>, b: &Vec4<T>) -> Vec4<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Normalizes a spacelike vector to `<m, m> = 1`; `None` if not spacelike.
pub fn normalize_spacelike<T: Real>(m: &Vec4<T>, tol: T) -> Option<Vec4<T>> {
    let q = dot(m, m);
    if q <= tol {
        return None;
    }
    Some(scale(m, T::one() / q.sqrt()))
}

/// Lorentz-orthogonal complement of three vectors: returns `m` with
/// `<m, a> = <m, b> = <m, c> = 0`.
pub fn orthogonal_complement<T: Real>(a: &Vec4<T>, b: &Vec4<T>, c: &Vec4<T>) -> Vec4<T> {
    // Euclidean generalized cross product, then flip the time component so the
    // Euclidean orthogonality becomes Lorentzian orthogonality.
    let det3 = |i: usize, j: usize, k: usize| -> T {
        a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i])
            + a[k] * (b[i] * c[j] - b[j] * c[i])
    };
    let e0 = det3(1, 2, 3);
    let e1 = -det3(0, 2, 3);
    let e2 = det3(0, 1, 3);
    let e3 = -det3(0, 1, 2);
    [-e0, e1, e2, e3]
}

/// Hyperboloid point of a Klein-ball point.
pub fn from_klein<T: Real>(k: [T; 3]) -> Vec4<T> {
    let r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    let s = T::one() / (T::one() - r2).sqrt();
    [s, k[0] * s, k[1] * s, k[2] * s]
}

/// Klein-ball point of a (future) timelike vector.
pub fn to_klein<T: Real>(x: &Vec4<T>) -> [T; 3] {
    [x[1] / x[0], x[2] / x[0], x[3] / x[0]]
}

/// Hyperbolic distance between two hyperboloid points.
///
/// Uses `<a - b, a - b> = 4 sinh^2(d/2)`, which stays accurate for nearby points.
pub fn distance<T: Real>(a: &Vec4<T>, b: &Vec4<T>) -> T {
    let d = add(a, &scale(b, -T::one()));
    let q = dot(&d, &d).max(T::zero());
    lit::<T>(2.0) * (q.sqrt() / lit(2.0)).asinh()
}

/// Angle between two unit spacelike vectors spanning a spacelike plane.
///
/// Evaluated from the chord `|a - b|` or `|a + b|`, so it is accurate near `0` and near `pi`.
pub fn spacelike_angle<T: Real>(a: &Vec4<T>, b: &Vec4<T>) -> T {
    let two = lit::<T>(2.0);
    let chord = |v: Vec4<T>| (dot(&v, &v).max(T::zero()).sqrt() / two).min(T::one()).asin();
    if dot(a, b) >= T::zero() {
        two * chord(add(a, &scale(b, -T::one())))
    } else {
        T::PI() - two * chord(add(a, b))
    }
}

/// Unit tangent at `base` pointing along the geodesic toward `target`.
pub fn direction<T: Real>(base: &Vec4<T>, target: &Vec4<T>) -> Vec4<T> {
    let c = dot(base, target);
    let v = add(target, &scale(base, c));
    let n = dot(&v, &v).max(T::zero()).sqrt();
    scale(&v, T::one() / n)
}

/// Angle at `base` between the geodesics toward `a` and toward `b`.
pub fn angle_at<T: Real>(base: &Vec4<T>, a: &Vec4<T>, b: &Vec4<T>) -> T {
    spacelike_angle(&direction(base, a), &direction(base, b))
}
