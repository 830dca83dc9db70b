use super::frame::Frame;
use crate::error::{Error, Result};
use crate::hyp3::PointUHS;
use crate::scalar::{lit, Real};
use crate::vec3::V3;

/// Local shape data of an Epstein-type surface at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsteinSample<T> {
    pub position: PointUHS<T>,
    /// Unit normal in the hyperbolic metric (Euclidean components).
    pub normal: V3<T>,
    pub first_form: [[T; 2]; 2],
    pub second_form: [[T; 2]; 2],
    /// `½ tr(I⁻¹ II)`; `None` where the first form is singular or `H` has a pole.
    pub mean_curvature: Option<T>,
    pub principal: Option<[T; 2]>,
    /// Signed area density in the sample's coordinates.
    pub area_density: T,
    /// Sign of the coordinate frame relative to the normal.
    pub orientation: T,
    /// Mean curvature times signed area density, finite everywhere.
    pub h_density: T,
}

/// Eigenvalues of `I⁻¹ II` for symmetric forms, in increasing order.
pub fn shape_eigenvalues<T: Real>(first: &[[T; 2]; 2], second: &[[T; 2]; 2]) -> Option<([T; 2], T)> {
    let det = first[0][0] * first[1][1] - first[0][1] * first[1][0];
    if det.abs() <= T::epsilon() {
        return None;
    }
    let inv = [[first[1][1] / det, -first[0][1] / det], [-first[1][0] / det, first[0][0] / det]];
    let mut s = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            s[i][j] = inv[i][0] * second[0][j] + inv[i][1] * second[1][j];
        }
    }
    let two = lit::<T>(2.0);
    let tr = s[0][0] + s[1][1];
    let dt = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    let disc = (tr * tr / lit(4.0) - dt).max(T::zero()).sqrt();
    Some(([tr / two - disc, tr / two + disc], tr / two))
}

impl<T: Real> EpsteinSample<T> {
    /// Shape data measured from a frame, failing when the immersion degenerates.
    pub fn from_frame(f: &Frame<T>, tol: T) -> Result<Self> {
        let first = f.first_form();
        let second = f.second_form();
        let det = first[0][0] * first[1][1] - first[0][1] * first[1][0];
        let cross = crate::vec3::cross(&f.xu, &f.xv);
        let orientation = if crate::vec3::dot(&cross, &f.n) >= T::zero() { T::one() } else { -T::one() };
        let h_density = f.mean_curvature_density();
        if det < tol {
            return Err(Error::SingularFirstForm { det: det.to_f64().unwrap_or(f64::NAN) });
        }
        let eig = shape_eigenvalues(&first, &second);
        Ok(Self {
            position: PointUHS::from_array(f.x),
            normal: f.n,
            first_form: first,
            second_form: second,
            mean_curvature: eig.map(|e| e.1),
            principal: eig.map(|e| e.0),
            area_density: orientation * det.max(T::zero()).sqrt(),
            orientation,
            h_density,
        })
    }
}
