use std::sync::Arc;

use serde::Serialize;

use super::sphere::{
    build_piecewise_sphere, PiecewiseSphere, ORIENTATION_CAP, ORIENTATION_CATERPILLAR, ORIENTATION_EPSTEIN,
};
use crate::epstein::domain_frame;
use crate::error::{Error, Result};
use crate::metric::{outward_derivative, CircleDomain, MetricOracle};
use crate::quad::{gauss_legendre_on, weighted_sum_n, QuadratureSpec};

/// A quantity split over the three kinds of pieces.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PieceTerms {
    pub epstein: f64,
    pub caterpillar: f64,
    pub cap: f64,
    pub total: f64,
}

impl PieceTerms {
    fn new(epstein: f64, caterpillar: f64, cap: f64) -> Self {
        Self { epstein, caterpillar, cap, total: epstein + caterpillar + cap }
    }
}

/// Enclosed volume from two different primitives of the volume form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeReport {
    /// Primitive `-(2z^2)^{-1} dx∧dy`.
    pub value: f64,
    pub pieces: PieceTerms,
    /// Primitive `x z^{-3} dy∧dz`.
    pub alt_value: f64,
    pub alt_pieces: PieceTerms,
    pub primitive_gap: f64,
}

/// Caterpillar area term and the Riemannian strip area reported beside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaTerm {
    /// `∫ (t_land - t_start) ds` over Euclidean arc length.
    pub value: f64,
    /// `∫ k(g) ds(g)` from the geodesic curvature of `e^{2φ}|dz|^2`.
    pub geodesic_curvature_integral: f64,
    /// Hyperbolic area of the strips, a diagnostic that does not enter `W`.
    pub riemannian_strip_area: f64,
}

/// Term-by-term breakdown of the W-volume.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WBreakdown {
    pub volume: VolumeReport,
    pub mean_curvature: PieceTerms,
    pub area: AreaTerm,
    /// `vol - ½∫H da - ¾ area`.
    pub w: f64,
    pub build: super::sphere::BuildReport,
}

struct Raw {
    vol: PieceTerms,
    alt: PieceTerms,
    mc: PieceTerms,
    area: AreaTerm,
}

fn integrate_all(ps: &PiecewiseSphere) -> Raw {
    let oracle = &*ps.oracle;
    let [ve, ae, me] = ps.epstein.integrate_n(|p| {
        let f = domain_frame(p, &oracle.jet(p));
        [f.volume_density(), f.volume_density_alt(), f.mean_curvature_density()]
    });

    let lam = gauss_legendre_on(ps.spec.strip, 0.0, 1.0);
    let mut strip_nodes = Vec::new();
    for (i, strip) in ps.strips.iter().enumerate() {
        for (j, node) in strip.nodes.iter().enumerate() {
            for &(l, wl) in &lam {
                strip_nodes.push(((i, j, l), node.weight * wl));
            }
        }
    }
    let [vc, ac, mc, rc] = weighted_sum_n(&strip_nodes, |&(i, j, l)| {
        let node = &ps.strips[i].nodes[j];
        let jac = node.t_land - node.t_start;
        let f = node.frame(l);
        [
            jac * f.volume_density(),
            jac * f.volume_density_alt(),
            jac * f.mean_curvature_density(),
            jac.abs() * f.area_density(),
        ]
    });

    let cap_lam = gauss_legendre_on(ps.spec.cap, 0.0, 1.0);
    let mut cap_nodes = Vec::new();
    for (i, strip) in ps.strips.iter().enumerate() {
        for (j, node) in strip.nodes.iter().enumerate() {
            cap_nodes.push(((i, j), node.weight));
        }
    }
    let [vt, at] = weighted_sum_n(&cap_nodes, |&(i, j)| {
        let strip = &ps.strips[i];
        let (c, r) = (strip.circle.center, strip.circle.radius);
        let land = strip.nodes[j].frame(1.0);
        let w = [(land.x[0] - c.re) / r, (land.x[1] - c.im) / r];
        let dw = [land.xu[0] / r, land.xu[1] / r];
        let a2 = w[0] * w[0] + w[1] * w[1];
        let cross = dw[0] * w[1] - w[0] * dw[1];
        // ∫_0^1 λ / (1 - λ²a²) dλ in closed form.
        let radial = if a2 < 1e-12 { 0.5 + 0.25 * a2 } else { -(-a2).ln_1p() / (2.0 * a2) };
        let closed = -0.5 * cross * radial;
        let wdw = w[0] * dw[0] + w[1] * dw[1];
        let alt: f64 = cap_lam
            .iter()
            .map(|&(l, wl)| {
                let q = (1.0 - l * l * a2).sqrt();
                let x = c.re + r * l * w[0];
                let z = r * q;
                let ys = [r * l * dw[1], -r * l * l * wdw / q];
                let yl = [r * w[1], -r * l * a2 / q];
                wl * x * (ys[0] * yl[1] - yl[0] * ys[1]) / (z * z * z)
            })
            .sum();
        [closed, alt]
    });

    let mut area = 0.0;
    let mut kg = 0.0;
    for strip in &ps.strips {
        for node in &strip.nodes {
            let j = &node.jet;
            area += node.weight * (node.t_land - node.t_start);
            kg += node.weight * (-j.phi).exp() * (j.curvature + outward_derivative(j)) * j.phi.exp();
        }
    }

    Raw {
        vol: PieceTerms::new(ORIENTATION_EPSTEIN * ve, ORIENTATION_CATERPILLAR * vc, ORIENTATION_CAP * vt),
        alt: PieceTerms::new(ORIENTATION_EPSTEIN * ae, ORIENTATION_CATERPILLAR * ac, ORIENTATION_CAP * at),
        mc: PieceTerms::new(ORIENTATION_EPSTEIN * me, ORIENTATION_CATERPILLAR * mc, 0.0),
        area: AreaTerm { value: area, geodesic_curvature_integral: kg, riemannian_strip_area: rc },
    }
}

fn volume_report(raw: &Raw) -> VolumeReport {
    VolumeReport {
        value: raw.vol.total,
        pieces: raw.vol,
        alt_value: raw.alt.total,
        alt_pieces: raw.alt,
        primitive_gap: (raw.vol.total - raw.alt.total).abs(),
    }
}

fn require_orientation(ps: &PiecewiseSphere) -> Result<()> {
    if ps.report.orientation_consistent {
        Ok(())
    } else {
        Err(Error::OrientationInconsistent("adjacent pieces induce equal boundary orientations".into()))
    }
}

/// Hyperbolic volume enclosed by the piecewise sphere, by Stokes' theorem.
pub fn enclosed_volume(ps: &PiecewiseSphere) -> Result<VolumeReport> {
    require_orientation(ps)?;
    Ok(volume_report(&integrate_all(ps)))
}

/// `∫ H da` over the Epstein piece and the strips; the caps are totally geodesic.
pub fn mean_curvature_integral(ps: &PiecewiseSphere) -> Result<PieceTerms> {
    require_orientation(ps)?;
    Ok(integrate_all(ps).mc)
}

/// Caterpillar area term `∫ (t_land - t_start) ds = ∫ k(g) ds(g)`.
pub fn caterpillar_area_term(ps: &PiecewiseSphere) -> AreaTerm {
    integrate_all(ps).area
}

impl WBreakdown {
    pub fn from_sphere(ps: &PiecewiseSphere) -> Result<Self> {
        require_orientation(ps)?;
        let raw = integrate_all(ps);
        let w = raw.vol.total - 0.5 * raw.mc.total - 0.75 * raw.area.value;
        Ok(Self { volume: volume_report(&raw), mean_curvature: raw.mc, area: raw.area, w, build: ps.report.clone() })
    }
}

/// W-volume of `e^{2φ}|dz|^2` on `domain` with its term breakdown.
pub fn w_volume(
    domain: &CircleDomain<f64>,
    oracle: Arc<dyn MetricOracle<f64>>,
    spec: &QuadratureSpec,
) -> Result<WBreakdown> {
    WBreakdown::from_sphere(&build_piecewise_sphere(domain, oracle, spec)?)
}
