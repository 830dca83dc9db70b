use num_complex::Complex;

use super::circle::CircleBdry;
use super::plane::{GeodesicPlane, PlaneBoundary};
use super::point::PointUHS;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Orientation-preserving isometry of hyperbolic 3-space, stored as an
/// `SL(2,C)` matrix `[[a, b], [c, d]]` acting on the boundary by Möbius maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> Isometry<T> {
    /// Normalizes the determinant to one.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() <= lit(1e-300) {
            return Err(Error::InvalidInput("singular Möbius matrix".into()));
        }
        let s = det.sqrt().inv();
        Ok(Self { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self { a: one, b: zero, c: zero, d: one }
    }

    /// `z -> s z + t` with real positive scale.
    pub fn similarity(scale: Complex<T>, shift: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        Self::new(scale, shift, zero, one).expect("nonzero scale")
    }

    pub fn determinant(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Boundary point `-d/c` sent to infinity, if any.
    pub fn pole(&self) -> Option<Complex<T>> {
        if self.c.norm() <= lit(1e-300) {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Möbius action on a finite boundary point not equal to the pole.
    pub fn apply_boundary(&self, z: Complex<T>) -> Complex<T> {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Complex derivative `1/(cz + d)^2` of the boundary action.
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let w = self.c * z + self.d;
        (w * w).inv()
    }

    /// Action on a point of the upper half-space.
    pub fn apply_point(&self, p: &PointUHS<T>) -> PointUHS<T> {
        let zeta = p.horizontal();
        let z2 = p.z * p.z;
        let num_d = self.c * zeta + self.d;
        let den = num_d.norm_sqr() + self.c.norm_sqr() * z2;
        let h = ((self.a * zeta + self.b) * num_d.conj() + self.a * self.c.conj() * z2) / den;
        PointUHS::new(h.re, h.im, p.z / den)
    }

    /// Image of a circle; the domain side follows the map. Fails if the circle passes through the pole.
    pub fn apply_circle(&self, circ: &CircleBdry<T>) -> Result<CircleBdry<T>> {
        let (center, radius, swapped) = self.image_circle(circ.center, circ.radius)?;
        let orientation = if swapped { circ.orientation.flipped() } else { circ.orientation };
        Ok(CircleBdry::new(center, radius, orientation))
    }

    /// Image of a geodesic plane over a circle with the designated side transported.
    pub fn apply_plane(&self, plane: &GeodesicPlane<T>) -> Result<GeodesicPlane<T>> {
        match plane.boundary {
            PlaneBoundary::Circle { center, radius } => {
                let (c, r, swapped) = self.image_circle(center, radius)?;
                let side = if swapped { plane.side.flipped() } else { plane.side };
                Ok(GeodesicPlane::over_circle(c, r, side))
            }
            PlaneBoundary::Line { .. } => Err(Error::InvalidInput(
                "planes over lines are normalized away before transport".into(),
            )),
        }
    }

    /// Image circle `(center, radius, interior_swapped)`.
    fn image_circle(&self, center: Complex<T>, radius: T) -> Result<(Complex<T>, T, bool)> {
        let pole = self.pole();
        if let Some(p) = pole {
            let gap = ((p - center).norm() - radius).abs();
            if gap <= lit::<T>(1e-12) * (T::one() + radius) {
                return Err(Error::InvalidInput("circle passes through the pole of the map".into()));
            }
        }
        let three = [T::zero(), lit::<T>(2.0) * T::PI() / lit(3.0), lit::<T>(4.0) * T::PI() / lit(3.0)];
        let w: Vec<Complex<T>> = three
            .iter()
            .map(|&t| self.apply_boundary(center + Complex::new(t.cos(), t.sin()) * radius))
            .collect();
        let (c, r) = circumcircle(w[0], w[1], w[2])?;
        let swapped = match pole {
            Some(p) => (p - center).norm() < radius,
            None => false,
        };
        Ok((c, r, swapped))
    }
}

/// Circle through three points.
pub fn circumcircle<T: Real>(p: Complex<T>, q: Complex<T>, r: Complex<T>) -> Result<(Complex<T>, T)> {
    let two = lit::<T>(2.0);
    let b = q - p;
    let c = r - p;
    let d = two * (b.re * c.im - b.im * c.re);
    if d.abs() <= lit::<T>(1e-300) {
        return Err(Error::InvalidInput("collinear points have no circumcircle".into()));
    }
    let b2 = b.norm_sqr();
    let c2 = c.norm_sqr();
    let ux = (c.im * b2 - b.im * c2) / d;
    let uy = (b.re * c2 - c.re * b2) / d;
    let u = Complex::new(ux, uy);
    Ok((p + u, u.norm()))
}
