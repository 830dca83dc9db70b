use num_complex::Complex;

use super::minkowski::{self, Vec4};
use crate::scalar::{lit, Real};

/// Point of the upper half-space model; `z` is the height above the boundary plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointUHS<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Point of the Klein (projective) ball model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointKlein<T> {
    pub u: T,
    pub v: T,
    pub w: T,
}

impl<T: Real> PointUHS<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        debug_assert!(z > T::zero(), "upper half-space point needs z > 0");
        Self { x, y, z }
    }

    pub fn from_array(p: [T; 3]) -> Self {
        Self::new(p[0], p[1], p[2])
    }

    pub fn horizontal(&self) -> Complex<T> {
        Complex::new(self.x, self.y)
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Hyperbolic distance in the upper half-space metric `|dx|^2 / z^2`.
    pub fn distance(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        let c = T::one() + (dx * dx + dy * dy + dz * dz) / (lit::<T>(2.0) * self.z * other.z);
        c.max(T::one()).acosh()
    }

    /// Poincaré-ball image under the Cayley map sending `(0,0,1)` to the origin.
    pub fn to_ball(&self) -> [T; 3] {
        let two = lit::<T>(2.0);
        let r2 = self.x * self.x + self.y * self.y + self.z * self.z;
        let den = self.x * self.x + self.y * self.y + (self.z + T::one()) * (self.z + T::one());
        [two * self.x / den, two * self.y / den, (r2 - T::one()) / den]
    }

    pub fn from_ball(b: [T; 3]) -> Self {
        let two = lit::<T>(2.0);
        let r2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        let den = b[0] * b[0] + b[1] * b[1] + (T::one() - b[2]) * (T::one() - b[2]);
        Self::new(two * b[0] / den, two * b[1] / den, (T::one() - r2) / den)
    }

    pub fn to_klein(&self) -> PointKlein<T> {
        let b = self.to_ball();
        let r2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        let s = lit::<T>(2.0) / (T::one() + r2);
        PointKlein { u: b[0] * s, v: b[1] * s, w: b[2] * s }
    }

    pub fn from_klein(k: &PointKlein<T>) -> Self {
        let r2 = k.norm_sqr();
        let s = T::one() / (T::one() + (T::one() - r2).max(T::zero()).sqrt());
        Self::from_ball([k.u * s, k.v * s, k.w * s])
    }

    pub fn to_hyperboloid(&self) -> Vec4<T> {
        self.to_klein().to_hyperboloid()
    }
}

impl<T: Real> PointKlein<T> {
    pub fn new(u: T, v: T, w: T) -> Self {
        debug_assert!(u * u + v * v + w * w < T::one(), "Klein point must lie in the open ball");
        Self { u, v, w }
    }

    pub fn from_array(k: [T; 3]) -> Self {
        Self::new(k[0], k[1], k[2])
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.u, self.v, self.w]
    }

    pub fn norm_sqr(&self) -> T {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    pub fn to_hyperboloid(&self) -> Vec4<T> {
        minkowski::from_klein(self.to_array())
    }

    pub fn from_hyperboloid(x: &Vec4<T>) -> Self {
        Self::from_array(minkowski::to_klein(x))
    }

    pub fn distance(&self, other: &Self) -> T {
        minkowski::distance(&self.to_hyperboloid(), &other.to_hyperboloid())
    }
}

/// Boundary point (z = 0) on the unit sphere of the ball model (inverse stereographic projection).
pub fn boundary_to_sphere<T: Real>(zeta: Complex<T>) -> [T; 3] {
    let r2 = zeta.norm_sqr();
    let den = r2 + T::one();
    let two = lit::<T>(2.0);
    [two * zeta.re / den, two * zeta.im / den, (r2 - T::one()) / den]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp3::{GeodesicPlane, Side};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basepoint_maps_to_ball_centre() {
        let k = PointUHS::new(0.0, 0.0, 1.0).to_klein();
        assert!(k.norm_sqr() < 1e-30);
    }

    #[test]
    fn klein_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let p: PointUHS<f64> = PointUHS::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0));
            let q = PointUHS::from_klein(&p.to_klein());
            let e = (p.x - q.x).abs().max((p.y - q.y).abs()).max((p.z - q.z).abs());
            worst = worst.max(e / (1.0 + p.z));
        }
        assert!(worst < 1e-12, "round trip error {worst}");
    }

    #[test]
    fn distance_agrees_between_models() {
        let p: PointUHS<f64> = PointUHS::new(0.3, -0.2, 0.7);
        let q = PointUHS::new(-1.1, 0.4, 2.1);
        assert!((p.distance(&q) - p.to_klein().distance(&q.to_klein())).abs() < 1e-12);
    }

    #[test]
    fn hemisphere_is_flat_in_klein_model() {
        let plane = GeodesicPlane::over_circle(Complex::new(0.4, -0.3), 1.3, Side::Inside);
        for i in 0..50 {
            let rho = (i as f64 + 0.5) / 50.0;
            let p = plane.sample(rho, 0.37 * i as f64);
            assert!(plane.klein_residual(&p.to_klein()).abs() < 1e-10);
            assert!(plane.signed_value(&p).abs() < 1e-10);
        }
    }
}
