use std::sync::Arc;

use serde::Serialize;

use super::terms::{w_volume, WBreakdown};
use crate::error::{Error, Result};
use crate::hyp3::Isometry;
use crate::metric::{
    outward_derivative, BoundaryJet, CircleDomain, MetricOracle, MobiusPullback, ScaledMetric, SumMetric,
};
use crate::quad::{periodic_trapezoid, weighted_sum, DomainRule, QuadratureSpec};

/// The four integrals of the conformal-variation formula for `e^{2φ}g`, `g = e^{2ψ}|dz|^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PolyakovTerms {
    /// `-¼ ∫ |∇_g φ|^2 da(g)`.
    pub gradient: f64,
    /// `-¼ ∫ Scal(g) φ da(g)`.
    pub curvature: f64,
    /// `-½ ∫ k(g) φ ds(g)`.
    pub boundary_curvature: f64,
    /// `-¾ ∫ ∂_n φ ds(g)` with the outward normal.
    pub boundary_normal: f64,
    pub total: f64,
}

impl PolyakovTerms {
    /// The part linear in `φ`: the derivative of `W(e^{2tφ}g)` at `t = 0`.
    pub fn linear(&self) -> f64 {
        self.curvature + self.boundary_curvature + self.boundary_normal
    }
}

/// Planar evaluation of the conformal-variation formula, independent of any 3D geometry.
pub fn polyakov_rhs(
    domain: &CircleDomain<f64>,
    background: &dyn MetricOracle<f64>,
    phi: &dyn MetricOracle<f64>,
    spec: &QuadratureSpec,
) -> Result<PolyakovTerms> {
    let rule = DomainRule::new(domain, spec)?;
    // The conformal weights cancel: |∇_g φ|^2 da(g) = |∇φ|^2 dx dy and Scal(g) da(g) = -2Δψ dx dy.
    let [grad, curv] = rule.integrate_n(|p| {
        let (j, b) = (phi.jet(p), background.jet(p));
        [j.grad_norm_sqr(), -2.0 * b.laplacian() * j.value]
    });
    let (mut bk, mut bn) = (0.0, 0.0);
    for circle in domain.boundary() {
        let nodes = periodic_trapezoid(spec.boundary, circle.length());
        bk += weighted_sum(&nodes, |&s| {
            let (j, b) = (BoundaryJet::new(phi, circle, s), BoundaryJet::new(background, circle, s));
            (b.curvature + outward_derivative(&b)) * j.phi
        });
        bn += weighted_sum(&nodes, |&s| outward_derivative(&BoundaryJet::new(phi, circle, s)));
    }
    let (gradient, curvature, boundary_curvature, boundary_normal) = (-0.25 * grad, -0.25 * curv, -0.5 * bk, -0.75 * bn);
    Ok(PolyakovTerms {
        gradient,
        curvature,
        boundary_curvature,
        boundary_normal,
        total: gradient + curvature + boundary_curvature + boundary_normal,
    })
}

/// `e^{2φ}g` as a single oracle.
pub fn conformal_change(background: Arc<dyn MetricOracle<f64>>, phi: Arc<dyn MetricOracle<f64>>) -> Arc<dyn MetricOracle<f64>> {
    Arc::new(SumMetric { terms: vec![background, phi] })
}

/// Outcome of comparing `W(e^{2φ}g) - W(g)` with the planar formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceCheck {
    pub w_background: f64,
    pub w_conformal: f64,
    pub delta_w: f64,
    pub rhs: PolyakovTerms,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub background_breakdown: WBreakdown,
    pub conformal_breakdown: WBreakdown,
}

/// Default absolute tolerance of the difference check on unit-scale domains.
pub const DIFFERENCE_TOLERANCE: f64 = 1e-4;

pub fn w_difference_check(
    domain: &CircleDomain<f64>,
    background: Arc<dyn MetricOracle<f64>>,
    phi: Arc<dyn MetricOracle<f64>>,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> Result<DifferenceCheck> {
    let base = w_volume(domain, background.clone(), spec)?;
    let conf = w_volume(domain, conformal_change(background.clone(), phi.clone()), spec)?;
    let rhs = polyakov_rhs(domain, &*background, &*phi, spec)?;
    let delta_w = conf.w - base.w;
    let residual = (delta_w - rhs.total).abs();
    Ok(DifferenceCheck {
        w_background: base.w,
        w_conformal: conf.w,
        delta_w,
        rhs,
        residual,
        tolerance,
        pass: residual <= tolerance,
        background_breakdown: base,
        conformal_breakdown: conf,
    })
}

/// Residuals below this level are treated as rounding noise in halving studies.
pub const HALVING_FLOOR: f64 = 1e-12;

/// Two-pipeline residual at nested resolutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalvingStudy {
    pub resolutions: Vec<usize>,
    pub residuals: Vec<f64>,
    /// `log2(e_n / max(e_{2n}, floor))` for each consecutive pair whose coarser
    /// residual is at least four times the floor, so that second-order decay is resolvable.
    pub orders: Vec<Option<f64>>,
    /// Smallest measured order; a lower bound when the finer residual reached the floor.
    pub observed_order: Option<f64>,
    pub floor: f64,
}

/// Difference checks at each resolution of `QuadratureSpec::with_resolution`.
pub fn halving_study(
    domain: &CircleDomain<f64>,
    background: Arc<dyn MetricOracle<f64>>,
    phi: Arc<dyn MetricOracle<f64>>,
    resolutions: &[usize],
) -> Result<HalvingStudy> {
    if resolutions.len() < 2 || resolutions.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::InvalidInput("halving study needs doubling resolutions".into()));
    }
    let residuals = resolutions
        .iter()
        .map(|&n| {
            let spec = QuadratureSpec::with_resolution(n);
            Ok(w_difference_check(domain, background.clone(), phi.clone(), &spec, f64::INFINITY)?.residual)
        })
        .collect::<Result<Vec<f64>>>()?;
    let orders: Vec<Option<f64>> = residuals
        .windows(2)
        .map(|w| (w[0] >= 4.0 * HALVING_FLOOR).then(|| (w[0] / w[1].max(HALVING_FLOOR)).log2()))
        .collect();
    let observed_order = orders.iter().flatten().copied().reduce(f64::min);
    Ok(HalvingStudy { resolutions: resolutions.to_vec(), residuals, orders, observed_order, floor: HALVING_FLOOR })
}

/// Central differences of `t ↦ W(e^{2tφ}g)` at `t = 0` against the linear planar terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub steps: Vec<f64>,
    pub estimates: Vec<f64>,
    pub residuals: Vec<f64>,
    pub target: f64,
    /// Observed order of the step-to-step changes, when they exceed the noise floor.
    pub order: Option<f64>,
    /// Rounding level of the central differences at the smallest step.
    pub noise_floor: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Step-refinement study with steps `h, h/2, h/4`.
///
/// The order is measured on the differences between consecutive estimates, which
/// carry the truncation error alone. When those differences sit at the rounding
/// level the truncation error is unresolved and no order is reported.
pub fn w_derivative_check(
    domain: &CircleDomain<f64>,
    background: Arc<dyn MetricOracle<f64>>,
    phi: Arc<dyn MetricOracle<f64>>,
    h: f64,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> Result<DerivativeCheck> {
    if !(h > 1e-6) {
        return Err(Error::StepUnderflow { h });
    }
    let w_at = |t: f64| -> Result<f64> {
        let scaled: Arc<dyn MetricOracle<f64>> = Arc::new(ScaledMetric { factor: t, inner: phi.clone() });
        Ok(w_volume(domain, conformal_change(background.clone(), scaled), spec)?.w)
    };
    let target = polyakov_rhs(domain, &*background, &*phi, spec)?.linear();
    let steps = vec![h, h / 2.0, h / 4.0];
    let mut estimates = Vec::new();
    let mut scale: f64 = 0.0;
    for &s in &steps {
        let (a, b) = (w_at(s)?, w_at(-s)?);
        scale = scale.max(a.abs()).max(b.abs());
        estimates.push((a - b) / (2.0 * s));
    }
    let residuals: Vec<f64> = estimates.iter().map(|e| (e - target).abs()).collect();
    let noise_floor = 1e3 * f64::EPSILON * (scale + 1.0) / steps[2];
    let (d1, d2) = ((estimates[0] - estimates[1]).abs(), (estimates[1] - estimates[2]).abs());
    let order = if d1 > noise_floor && d2 > 0.0 { Some((d1 / d2).log2()) } else { None };
    let converged = order.map_or(true, |o| o >= 1.9);
    Ok(DerivativeCheck {
        pass: converged && residuals.iter().all(|r| *r <= tolerance),
        steps,
        estimates,
        residuals,
        target,
        order,
        noise_floor,
        tolerance,
    })
}

/// Image of a domain and metric under a Möbius map: `ω(U)` with the pushed-forward factor.
pub fn transport(
    domain: &CircleDomain<f64>,
    oracle: Arc<dyn MetricOracle<f64>>,
    map: &Isometry<f64>,
) -> Result<(CircleDomain<f64>, Arc<dyn MetricOracle<f64>>)> {
    if let Some(pole) = map.pole() {
        if domain.boundary_distance(pole) > -1e-9 {
            return Err(Error::DegenerateConfiguration(format!("Möbius pole {pole} lies in the closed domain")));
        }
    }
    let circles = domain.boundary().iter().map(|c| map.apply_circle(c)).collect::<Result<Vec<_>>>()?;
    let image = CircleDomain::new(circles)?;
    let pushed: Arc<dyn MetricOracle<f64>> = Arc::new(MobiusPullback::new(map.inverse(), oracle));
    Ok((image, pushed))
}
