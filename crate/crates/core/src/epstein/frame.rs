use crate::scalar::{lit, Real};
use crate::vec3::{self, V3};

/// Point, hyperbolic unit normal and their coordinate derivatives on a
/// parametrized surface in the upper half-space (Euclidean components).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    pub x: V3<T>,
    pub n: V3<T>,
    pub xu: V3<T>,
    pub xv: V3<T>,
    pub nu: V3<T>,
    pub nv: V3<T>,
}

/// Levi-Civita derivative `∇_X N` of the upper half-space from the partial
/// derivative `dn` of `N` along the tangent vector `x`.
pub fn covariant<T: Real>(n: &V3<T>, dn: &V3<T>, x: &V3<T>, z: T) -> V3<T> {
    [
        dn[0] - (n[0] * x[2] + n[2] * x[0]) / z,
        dn[1] - (n[1] * x[2] + n[2] * x[1]) / z,
        dn[2] + (n[0] * x[0] + n[1] * x[1] - n[2] * x[2]) / z,
    ]
}

/// Hyperbolic inner product at height `z`.
pub fn hyp_dot<T: Real>(a: &V3<T>, b: &V3<T>, z: T) -> T {
    vec3::dot(a, b) / (z * z)
}

impl<T: Real> Frame<T> {
    pub fn z(&self) -> T {
        self.x[2]
    }

    pub fn cov_u(&self) -> V3<T> {
        covariant(&self.n, &self.nu, &self.xu, self.z())
    }

    pub fn cov_v(&self) -> V3<T> {
        covariant(&self.n, &self.nv, &self.xv, self.z())
    }

    /// Density of the volume primitive `-(2z^2)^{-1} dx∧dy` in `(u, v)`.
    pub fn volume_density(&self) -> T {
        let z = self.z();
        -(self.xu[0] * self.xv[1] - self.xv[0] * self.xu[1]) / (lit::<T>(2.0) * z * z)
    }

    /// Density of the second primitive `x z^{-3} dy∧dz` in `(u, v)`.
    pub fn volume_density_alt(&self) -> T {
        let z = self.z();
        self.x[0] * (self.xu[1] * self.xv[2] - self.xv[1] * self.xu[2]) / (z * z * z)
    }

    /// Mean curvature times the signed area density, free of poles:
    /// `½(det[∇_u N, X_v, N] + det[X_u, ∇_v N, N]) / z^3`.
    pub fn mean_curvature_density(&self) -> T {
        let z = self.z();
        let a = vec3::det(&self.cov_u(), &self.xv, &self.n);
        let b = vec3::det(&self.xu, &self.cov_v(), &self.n);
        (a + b) / (lit::<T>(2.0) * z * z * z)
    }

    /// Unsigned hyperbolic area density.
    pub fn area_density(&self) -> T {
        let z = self.z();
        vec3::norm(&vec3::cross(&self.xu, &self.xv)) / (z * z)
    }

    /// First fundamental form in `(u, v)`.
    pub fn first_form(&self) -> [[T; 2]; 2] {
        let z = self.z();
        let uv = hyp_dot(&self.xu, &self.xv, z);
        [[hyp_dot(&self.xu, &self.xu, z), uv], [uv, hyp_dot(&self.xv, &self.xv, z)]]
    }

    /// Second fundamental form `II(a, b) = -<X_a, ∇_b N>`.
    pub fn second_form(&self) -> [[T; 2]; 2] {
        let z = self.z();
        let (cu, cv) = (self.cov_u(), self.cov_v());
        [
            [-hyp_dot(&self.xu, &cu, z), -hyp_dot(&self.xu, &cv, z)],
            [-hyp_dot(&self.xv, &cu, z), -hyp_dot(&self.xv, &cv, z)],
        ]
    }
}
