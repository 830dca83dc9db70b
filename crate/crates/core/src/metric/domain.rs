use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hyp3::{CircleBdry, Side};
use crate::scalar::{lit, Real};

/// Disjointness margin on inversive distances.
pub const DISJOINT_MARGIN: f64 = 1e-9;

/// Bounded planar domain whose boundary is finitely many disjoint round circles:
/// one outer circle and any number of holes inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleDomain<T> {
    boundary: Vec<CircleBdry<T>>,
}

impl<T: Real> CircleDomain<T> {
    /// Validates and stores the boundary; the outer circle is moved to the front.
    pub fn new(boundary: Vec<CircleBdry<T>>) -> Result<Self> {
        let outer: Vec<usize> =
            (0..boundary.len()).filter(|&i| boundary[i].orientation == Side::Inside).collect();
        if outer.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "a bounded circle domain needs exactly one outer circle, found {}",
                outer.len()
            )));
        }
        let mut boundary = boundary;
        boundary.swap(0, outer[0]);
        for c in &boundary {
            if !(c.radius > T::zero()) || !c.radius.is_finite() {
                return Err(Error::InvalidInput("circle radii must be positive and finite".into()));
            }
        }
        let margin = T::one() + lit(DISJOINT_MARGIN);
        let o = boundary[0];
        for (i, h) in boundary.iter().enumerate().skip(1) {
            let gap = o.radius - (h.center - o.center).norm() - h.radius;
            if gap <= T::zero() || -o.inversive_distance(h) <= margin {
                return Err(Error::InvalidInput(format!("hole {i} is not strictly inside the outer circle")));
            }
            for (j, g) in boundary.iter().enumerate().skip(i + 1) {
                if h.inversive_distance(g) <= margin {
                    return Err(Error::InvalidInput(format!("holes {i} and {j} intersect or touch")));
                }
            }
        }
        Ok(Self { boundary })
    }

    /// Domain inside the circle `|z - center| = radius`.
    pub fn disk(center: Complex<T>, radius: T) -> Self {
        Self { boundary: vec![CircleBdry::new(center, radius, Side::Inside)] }
    }

    pub fn unit_disk() -> Self {
        Self::disk(Complex::new(T::zero(), T::zero()), T::one())
    }

    /// Builds a domain from bare circles: the circle enclosing all others becomes the outer one.
    pub fn from_circles(circles: &[(Complex<T>, T)]) -> Result<Self> {
        if circles.is_empty() {
            return Err(Error::InvalidInput("no boundary circles".into()));
        }
        let outer = (0..circles.len())
            .max_by(|&i, &j| circles[i].1.partial_cmp(&circles[j].1).expect("finite radii"))
            .expect("nonempty");
        let boundary = circles
            .iter()
            .enumerate()
            .map(|(i, &(c, r))| {
                let side = if i == outer { Side::Inside } else { Side::Outside };
                CircleBdry::new(c, r, side)
            })
            .collect();
        Self::new(boundary)
    }

    pub fn boundary(&self) -> &[CircleBdry<T>] {
        &self.boundary
    }

    pub fn outer(&self) -> &CircleBdry<T> {
        &self.boundary[0]
    }

    pub fn holes(&self) -> &[CircleBdry<T>] {
        &self.boundary[1..]
    }

    /// Number of boundary components (the complement has this many disks).
    pub fn boundary_components(&self) -> usize {
        self.boundary.len()
    }

    pub fn contains(&self, p: Complex<T>) -> bool {
        self.boundary.iter().all(|c| c.on_domain_side(p))
    }

    /// Euclidean distance from `p` to the boundary (positive inside the domain).
    pub fn boundary_distance(&self, p: Complex<T>) -> T {
        self.boundary
            .iter()
            .map(|c| {
                let d = (p - c.center).norm() - c.radius;
                match c.orientation {
                    Side::Inside => -d,
                    Side::Outside => d,
                }
            })
            .fold(T::infinity(), T::min)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Complex<T>, Complex<T>) {
        let o = self.outer();
        let r = Complex::new(o.radius, o.radius);
        (o.center - r, o.center + r)
    }

    /// Smallest Euclidean gap between two boundary circles (infinite for a disk).
    pub fn min_gap(&self) -> T {
        let o = self.outer();
        let mut gap = T::infinity();
        for (i, h) in self.holes().iter().enumerate() {
            gap = gap.min(o.radius - (h.center - o.center).norm() - h.radius);
            for g in &self.holes()[i + 1..] {
                gap = gap.min((h.center - g.center).norm() - h.radius - g.radius);
            }
        }
        gap
    }

    /// Euclidean area.
    pub fn area(&self) -> T {
        let disk = |c: &CircleBdry<T>| T::PI() * c.radius * c.radius;
        self.holes().iter().fold(disk(self.outer()), |a, h| a - disk(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex<f64> {
        Complex::new(x, y)
    }

    #[test]
    fn outer_circle_is_detected() {
        let d = CircleDomain::from_circles(&[(c(0.5, 0.0), 0.25), (c(0.0, 0.0), 1.0), (c(-0.5, 0.0), 0.25)]).unwrap();
        assert_eq!(d.outer().radius, 1.0);
        assert_eq!(d.holes().len(), 2);
        assert!(d.contains(c(0.0, 0.5)));
        assert!(!d.contains(c(0.5, 0.0)));
        assert!((d.min_gap() - 0.25).abs() < 1e-15);
        assert!((d.area() - (std::f64::consts::PI - std::f64::consts::PI / 8.0)).abs() < 1e-14);
    }

    #[test]
    fn touching_holes_are_rejected() {
        let r = CircleDomain::from_circles(&[(c(0.0, 0.0), 1.0), (c(0.25, 0.0), 0.25), (c(-0.25, 0.0), 0.25)]);
        assert!(r.is_err());
        let r = CircleDomain::from_circles(&[(c(0.0, 0.0), 1.0), (c(0.75, 0.0), 0.25)]);
        assert!(r.is_err());
    }
}
