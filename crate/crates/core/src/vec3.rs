//! Small helpers on Euclidean 3-vectors of upper half-space coordinates.

use crate::scalar::Real;

pub type V3<T> = [T; 3];

#[inline]
pub fn dot<T: Real>(a: &V3<T>, b: &V3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross<T: Real>(a: &V3<T>, b: &V3<T>) -> V3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
pub fn det<T: Real>(a: &V3<T>, b: &V3<T>, c: &V3<T>) -> T {
    dot(&cross(a, b), c)
}

#[inline]
pub fn norm<T: Real>(a: &V3<T>) -> T {
    dot(a, a).sqrt()
}
