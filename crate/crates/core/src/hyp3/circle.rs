use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Which side of a boundary circle the adjacent domain occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The domain lies outside the circle (the circle bounds a hole).
    Outside,
    /// The domain lies inside the circle (the circle is the outer boundary).
    Inside,
}

impl Side {
    /// `+1` when the domain is outside the circle, `-1` when inside.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Side::Outside => T::one(),
            Side::Inside => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Side::Outside => Side::Inside,
            Side::Inside => Side::Outside,
        }
    }
}

/// Round boundary circle of a planar domain.
///
/// The arc-length parametrization keeps the domain on the left, so the
/// outer circle runs counter-clockwise and holes run clockwise. With
/// `T = γ'` and `ν = iT` the inward (into the domain) normal, `γ'' = kν`
/// where `k = 1/r` on the outer circle and `k = -1/r` on a hole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleBdry<T> {
    pub center: Complex<T>,
    pub radius: T,
    pub orientation: Side,
}

impl<T: Real> CircleBdry<T> {
    pub fn new(center: Complex<T>, radius: T, orientation: Side) -> Self {
        debug_assert!(radius > T::zero(), "circle radius must be positive");
        Self { center, radius, orientation }
    }

    pub fn unit() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), T::one(), Side::Inside)
    }

    pub fn length(&self) -> T {
        lit::<T>(2.0) * T::PI() * self.radius
    }

    /// Signed Euclidean curvature relative to the domain (`γ'' = k iγ'`).
    pub fn curvature(&self) -> T {
        -self.orientation.sign::<T>() / self.radius
    }

    fn unit_phase(&self, s: T) -> Complex<T> {
        let a = s / self.radius;
        match self.orientation {
            Side::Inside => Complex::new(a.cos(), a.sin()),
            Side::Outside => Complex::new(a.cos(), -a.sin()),
        }
    }

    /// Point at arc length `s`.
    pub fn point(&self, s: T) -> Complex<T> {
        self.center + self.unit_phase(s) * self.radius
    }

    /// Unit tangent `γ'(s)`.
    pub fn tangent(&self, s: T) -> Complex<T> {
        let e = self.unit_phase(s);
        match self.orientation {
            Side::Inside => Complex::new(-e.im, e.re),
            Side::Outside => Complex::new(e.im, -e.re),
        }
    }

    /// Unit normal `iγ'(s)`, pointing into the domain.
    pub fn inward_normal(&self, s: T) -> Complex<T> {
        let t = self.tangent(s);
        Complex::new(-t.im, t.re)
    }

    /// Whether `p` lies in the open disk bounded by the circle.
    pub fn encloses(&self, p: Complex<T>) -> bool {
        (p - self.center).norm_sqr() < self.radius * self.radius
    }

    /// Whether `p` lies strictly on the domain side of the circle.
    pub fn on_domain_side(&self, p: Complex<T>) -> bool {
        match self.orientation {
            Side::Inside => self.encloses(p),
            Side::Outside => (p - self.center).norm_sqr() > self.radius * self.radius,
        }
    }

    /// Inversive distance `(|c1-c2|^2 - r1^2 - r2^2) / (2 r1 r2)`.
    ///
    /// Its absolute value exceeds one exactly when the circles are disjoint;
    /// it is negative for nested circles.
    pub fn inversive_distance(&self, other: &Self) -> T {
        let d2 = (self.center - other.center).norm_sqr();
        (d2 - self.radius * self.radius - other.radius * other.radius)
            / (lit::<T>(2.0) * self.radius * other.radius)
    }

    /// Angle of intersection of two crossing circles, `None` if they do not cross.
    pub fn intersection_angle(&self, other: &Self) -> Option<T> {
        let c = -self.inversive_distance(other);
        if c.abs() >= T::one() {
            None
        } else {
            Some(c.acos())
        }
    }
}
