use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::epstein::{
    caterpillar, caterpillar_frame, caterpillar_normal, domain_epstein, domain_epstein_gauss, domain_frame, t_land,
    t_start, Frame,
};
use crate::error::Result;
use crate::hyp3::{CircleBdry, GeodesicPlane, PointUHS};
use crate::metric::{BoundaryJet, CircleDomain, MetricOracle};
use crate::quad::{periodic_trapezoid, DomainRule, QuadratureSpec};
use crate::vec3::dot;

/// Orientation of the Epstein piece relative to the planar coordinates `(x, y)`.
pub const ORIENTATION_EPSTEIN: f64 = -1.0;
/// Orientation of a caterpillar strip relative to `(s, t)`.
pub const ORIENTATION_CATERPILLAR: f64 = 1.0;
/// Orientation of a cap relative to `(s, λ)`, `λ` the radial fraction towards the landing curve.
pub const ORIENTATION_CAP: f64 = -1.0;

/// One arc-length sample of a caterpillar strip with its quadrature weight.
#[derive(Debug, Clone, Copy)]
pub struct StripNode {
    pub weight: f64,
    pub jet: BoundaryJet<f64>,
    pub t_start: f64,
    /// Landing parameter used for assembly: the Euclidean curvature of the circle.
    pub t_land: f64,
}

impl StripNode {
    /// Leaf parameter at the fraction `lambda` of the window `[t_start, t_land]`.
    pub fn t_at(&self, lambda: f64) -> f64 {
        self.t_start + lambda * (self.t_land - self.t_start)
    }

    /// Caterpillar frame in `(s, t)` at the fraction `lambda`.
    pub fn frame(&self, lambda: f64) -> Frame<f64> {
        caterpillar_frame(&self.jet, self.t_at(lambda))
    }
}

/// The caterpillar strip over one boundary circle and the geodesic plane capping it.
#[derive(Debug, Clone)]
pub struct Strip {
    pub circle: CircleBdry<f64>,
    pub plane: GeodesicPlane<f64>,
    pub nodes: Vec<StripNode>,
}

/// Structural checks gathered while assembling a piecewise sphere.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BuildReport {
    /// Largest hyperbolic distance between the Epstein boundary and the strip start curve.
    pub seam_gap: f64,
    /// Largest `1 - cos` between the Epstein normal and the strip normal at `t_start`.
    pub tangency_residual: f64,
    /// Largest `|t_land - k|` with `t_land` found by root finding on the plane.
    pub landing_residual: f64,
    /// Largest `|cos|` of the angle between the strip normal and the plane normal at landing.
    pub landing_angle_residual: f64,
    /// Adjacent pieces induce opposite orientations on every shared boundary curve.
    pub orientation_consistent: bool,
    /// The whole surface collapses to a point.
    pub degenerate: bool,
    /// Recoverable problems found during assembly.
    pub flags: Vec<String>,
}

impl BuildReport {
    pub fn pass(&self) -> bool {
        self.seam_gap < 1e-7
            && self.tangency_residual < 1e-7
            && self.landing_residual < 1e-9
            && self.landing_angle_residual < 1e-7
            && self.orientation_consistent
            && self.flags.is_empty()
    }
}

/// The glued surface `E ∪ C ∪ T` with its quadrature data.
#[derive(Clone)]
pub struct PiecewiseSphere {
    pub domain: CircleDomain<f64>,
    pub oracle: Arc<dyn MetricOracle<f64>>,
    pub spec: QuadratureSpec,
    pub epstein: DomainRule,
    pub strips: Vec<Strip>,
    pub report: BuildReport,
}

/// Assembles the piecewise sphere of `e^{2φ}|dz|^2` on `domain`.
pub fn build_piecewise_sphere(
    domain: &CircleDomain<f64>,
    oracle: Arc<dyn MetricOracle<f64>>,
    spec: &QuadratureSpec,
) -> Result<PiecewiseSphere> {
    spec.validate()?;
    let epstein = DomainRule::new(domain, spec)?;
    let mut strips = Vec::with_capacity(domain.boundary().len());
    for circle in domain.boundary() {
        let nodes = periodic_trapezoid(spec.boundary, circle.length())
            .into_iter()
            .map(|(s, weight)| {
                let jet = BoundaryJet::new(&*oracle, circle, s);
                StripNode { weight, jet, t_start: t_start(&jet), t_land: circle.curvature() }
            })
            .collect();
        strips.push(Strip { circle: *circle, plane: GeodesicPlane::from_circle(circle), nodes });
    }
    let mut ps = PiecewiseSphere { domain: domain.clone(), oracle, spec: *spec, epstein, strips, report: Default::default() };
    ps.report = inspect(&ps);
    Ok(ps)
}

fn inspect(ps: &PiecewiseSphere) -> BuildReport {
    let mut r = BoundaryReportAcc::default();
    let oracle = &*ps.oracle;
    for strip in &ps.strips {
        for node in &strip.nodes {
            let jet = &node.jet;
            let start = caterpillar(jet, node.t_start);
            let e = domain_epstein(oracle, jet.gamma);
            r.seam_gap = r.seam_gap.max(start.distance(&e));
            let (n1, n2) = (caterpillar_normal(jet, node.t_start), domain_epstein_gauss(oracle, jet.gamma));
            r.tangency = r.tangency.max(1.0 - dot(&n1, &n2) / (start.z * start.z));

            match t_land(jet, &strip.plane) {
                Ok(t) => r.landing = r.landing.max((t - node.t_land).abs()),
                Err(_) if start.distance(&caterpillar(jet, node.t_land)) < 1e-12 => {}
                Err(e) => r.flags.push(format!("circle at {}: {e}", strip.circle.center)),
            }
            let land = node.frame(1.0);
            let radial = [land.x[0] - strip.circle.center.re, land.x[1] - strip.circle.center.im, land.x[2]];
            let nn = dot(&land.n, &land.n).sqrt() * dot(&radial, &radial).sqrt();
            if nn > 0.0 {
                r.angle = r.angle.max((dot(&land.n, &radial) / nn).abs());
            }

            // Induced boundary directions: E and the strip bottom edge along the start curve,
            // the strip top edge and the cap rim along the landing curve.
            let f = domain_frame(jet.gamma, &oracle.jet(jet.gamma));
            let de = [0, 1, 2].map(|i| f.xu[i] * jet.tangent.re + f.xv[i] * jet.tangent.im);
            let start_frame = node.frame(0.0);
            let delta = 1e-5 * strip.circle.radius;
            let dt0 = (t_start(&BoundaryJet::new(oracle, &strip.circle, jet.s + delta))
                - t_start(&BoundaryJet::new(oracle, &strip.circle, jet.s - delta)))
                / (2.0 * delta);
            let bottom = [0, 1, 2].map(|i| start_frame.xu[i] + start_frame.xv[i] * dt0);
            let scale = dot(&de, &de).sqrt() * dot(&bottom, &bottom).sqrt();
            if scale > 1e-16 && ORIENTATION_EPSTEIN * ORIENTATION_CATERPILLAR * dot(&de, &bottom) >= 0.0 {
                r.orientation_ok = false;
            }
            let top = land.xu;
            if dot(&top, &top) > 1e-16 && -ORIENTATION_CATERPILLAR * -ORIENTATION_CAP * dot(&top, &top) >= 0.0 {
                r.orientation_ok = false;
            }
            let p0 = *r.anchor.get_or_insert(start);
            r.extent = r.extent.max(start.distance(&p0)).max(p0.distance(&caterpillar(jet, node.t_land)));
        }
    }
    let degenerate = r.extent < 1e-9 && {
        let p0 = r.anchor.unwrap_or_else(|| domain_epstein(oracle, Complex::new(0.0, 0.0)));
        ps.epstein.nodes.iter().step_by(97).all(|(p, _)| domain_epstein(oracle, *p).distance(&p0) < 1e-9)
    };
    BuildReport {
        seam_gap: r.seam_gap,
        tangency_residual: r.tangency,
        landing_residual: r.landing,
        landing_angle_residual: r.angle,
        orientation_consistent: r.orientation_ok,
        degenerate,
        flags: r.flags,
    }
}

struct BoundaryReportAcc {
    seam_gap: f64,
    tangency: f64,
    landing: f64,
    angle: f64,
    orientation_ok: bool,
    extent: f64,
    anchor: Option<PointUHS<f64>>,
    flags: Vec<String>,
}

impl Default for BoundaryReportAcc {
    fn default() -> Self {
        Self { seam_gap: 0.0, tangency: 0.0, landing: 0.0, angle: 0.0, orientation_ok: true, extent: 0.0, anchor: None, flags: vec![] }
    }
}
