use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp3::{plane_distance, CircleBdry, GeodesicPlane, Isometry, Side};
use crate::metric::DISJOINT_MARGIN;

/// One boundary circle in structured text.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Möbius map `(az + b)/(cz + d)` pairing circle `from` with circle `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSpec {
    pub from: usize,
    pub to: usize,
    /// `[a, b, c, d]` as `[re, im]` pairs.
    pub matrix: [[f64; 2]; 4],
}

/// Structured-text form of a Schottky configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchottkySpec {
    pub genus: usize,
    pub circles: Vec<CircleSpec>,
    #[serde(default)]
    pub pairings: Vec<PairingSpec>,
}

/// `2g` disjoint round circles bounding a fundamental domain outside all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct SchottkyConfiguration {
    pub genus: usize,
    /// Boundary circles with the domain on their outside.
    pub circles: Vec<CircleBdry<f64>>,
    pub pairings: Vec<(usize, usize, Isometry<f64>)>,
}

impl SchottkyConfiguration {
    pub fn new(genus: usize, circles: &[(Complex<f64>, f64)]) -> Result<Self> {
        Self::with_pairings(genus, circles, vec![])
    }

    pub fn with_pairings(
        genus: usize,
        circles: &[(Complex<f64>, f64)],
        pairings: Vec<(usize, usize, Isometry<f64>)>,
    ) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidInput(format!("genus must be at least 2, got {genus}")));
        }
        if circles.len() != 2 * genus {
            return Err(Error::InvalidInput(format!("genus {genus} needs {} circles, got {}", 2 * genus, circles.len())));
        }
        let circles: Vec<CircleBdry<f64>> = circles
            .iter()
            .map(|&(c, r)| {
                if !(r > 0.0 && r.is_finite() && c.re.is_finite() && c.im.is_finite()) {
                    return Err(Error::InvalidInput(format!("invalid circle center {c} radius {r}")));
                }
                Ok(CircleBdry::new(c, r, Side::Outside))
            })
            .collect::<Result<_>>()?;
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                let (a, b) = (&circles[i], &circles[j]);
                let d = (a.center - b.center).norm();
                if d <= a.radius + b.radius || a.inversive_distance(b) <= 1.0 + DISJOINT_MARGIN {
                    return Err(Error::OverlappingPlanes { inversive: a.inversive_distance(b) });
                }
            }
        }
        for &(from, to, g) in &pairings {
            let (Some(a), Some(b)) = (circles.get(from), circles.get(to)) else {
                return Err(Error::InvalidInput(format!("pairing {from} -> {to} references a missing circle")));
            };
            let image = g.apply_circle(a)?;
            let tol = 1e-9 * (1.0 + b.radius + b.center.norm());
            if (image.center - b.center).norm() > tol || (image.radius - b.radius).abs() > tol {
                return Err(Error::InvalidInput(format!("pairing {from} -> {to} does not map circle {from} onto circle {to}")));
            }
            if image.orientation != Side::Inside {
                return Err(Error::InvalidInput(format!("pairing {from} -> {to} must map the outside of circle {from} into circle {to}")));
            }
        }
        Ok(Self { genus, circles, pairings })
    }

    /// `2g` circles of radius `radius` with centers evenly spaced on the circle `|z| = distance`.
    pub fn symmetric(genus: usize, distance: f64, radius: f64) -> Result<Self> {
        let n = 2 * genus;
        let circles: Vec<_> = (0..n)
            .map(|k| (Complex::from_polar(distance, 2.0 * std::f64::consts::PI * k as f64 / n as f64), radius))
            .collect();
        Self::new(genus, &circles)
    }

    pub fn from_spec(spec: &SchottkySpec) -> Result<Self> {
        let circles: Vec<_> = spec.circles.iter().map(|c| (Complex::new(c.center[0], c.center[1]), c.radius)).collect();
        let pairings = spec
            .pairings
            .iter()
            .map(|p| {
                let m = p.matrix.map(|[re, im]| Complex::new(re, im));
                Ok((p.from, p.to, Isometry::new(m[0], m[1], m[2], m[3])?))
            })
            .collect::<Result<_>>()?;
        Self::with_pairings(spec.genus, &circles, pairings)
    }

    pub fn to_spec(&self) -> SchottkySpec {
        SchottkySpec {
            genus: self.genus,
            circles: self.circles.iter().map(|c| CircleSpec { center: [c.center.re, c.center.im], radius: c.radius }).collect(),
            pairings: self
                .pairings
                .iter()
                .map(|&(from, to, g)| PairingSpec { from, to, matrix: [g.a, g.b, g.c, g.d].map(|z| [z.re, z.im]) })
                .collect(),
        }
    }

    /// Boundary planes with the fundamental domain designated.
    pub fn planes(&self) -> Vec<GeodesicPlane<f64>> {
        self.circles.iter().map(GeodesicPlane::from_circle).collect()
    }

    /// Image under a Möbius map whose pole avoids every circle's closed disk and the domain side.
    pub fn transported(&self, g: &Isometry<f64>) -> Result<Self> {
        let circles = self
            .circles
            .iter()
            .map(|c| {
                let im = g.apply_circle(c)?;
                if im.orientation != Side::Outside {
                    return Err(Error::DegenerateConfiguration(
                        "Möbius map sends the fundamental domain inside a boundary circle".into(),
                    ));
                }
                Ok((im.center, im.radius))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.genus, &circles)
    }
}

/// Pairwise plane distances with the minimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub matrix: Vec<Vec<f64>>,
    pub min: f64,
    pub argmin: (usize, usize),
}

/// Minimum hyperbolic distance between boundary planes.
pub fn min_plane_distance(config: &SchottkyConfiguration) -> Result<DistanceReport> {
    let planes = config.planes();
    let n = planes.len();
    let mut matrix = vec![vec![0.0; n]; n];
    let (mut min, mut argmin) = (f64::INFINITY, (0, 0));
    for i in 0..n {
        for j in i + 1..n {
            let d = plane_distance(&planes[i], &planes[j])?;
            matrix[i][j] = d;
            matrix[j][i] = d;
            if d < min {
                min = d;
                argmin = (i, j);
            }
        }
    }
    Ok(DistanceReport { matrix, min, argmin })
}
