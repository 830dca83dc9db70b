use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use super::conformal::{uniformize, Normalization, TheodorsenReport, UniformizationPair, UniformizeOptions};
use super::curve::{CurveSpec, JordanCurve, Smoothness};
use super::pullback::{pullback_metric, Component};
use crate::error::Result;
use crate::metric::{CircleDomain, MetricOracle, RoundSphere, ScaledMetric, SumMetric};
use crate::quad::QuadratureSpec;
use crate::wvol::{polyakov_rhs, w_volume, PolyakovTerms, WBreakdown};

/// `I^L = -(4/π)(W(g₁) + W(g₂))`, the factor relating W-volume to the energy.
const ENERGY_FACTOR: f64 = -4.0 / PI;

/// Negative energies above this level are reported as quadrature noise.
pub const NEGATIVE_TOLERANCE: f64 = 1e-6;

/// Energy from the two W-volumes of the pulled-back round metrics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoewnerEnergy {
    pub energy: f64,
    /// `[W(g₁), W(g₂)]`.
    pub w: [f64; 2],
    pub interior: WBreakdown,
    pub exterior: WBreakdown,
    pub warnings: Vec<String>,
}

/// Energy from the planar conformal-variation terms against the round metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoewnerEnergy2d {
    pub energy: f64,
    pub interior: PolyakovTerms,
    pub exterior: PolyakovTerms,
}

fn negative_warnings(energy: f64) -> Vec<String> {
    if energy >= 0.0 {
        Vec::new()
    } else if energy > -NEGATIVE_TOLERANCE {
        vec![format!("energy {energy:.3e} is slightly negative, within quadrature noise")]
    } else {
        vec![format!("energy {energy:.3e} is negative beyond quadrature noise")]
    }
}

fn pullbacks(pair: &UniformizationPair) -> Result<[Arc<dyn MetricOracle<f64>>; 2]> {
    Ok([
        Arc::new(pullback_metric(pair, Component::Interior)?),
        Arc::new(pullback_metric(pair, Component::Exterior)?),
    ])
}

/// Loewner energy through the W-volumes of `f₁^* g_{S²}` and `f₂^* g_{S²}` on the unit disk.
///
/// The maps are evaluated in the frame of [`UniformizationPair::normalized`].
pub fn loewner_energy(pair: &UniformizationPair, spec: &QuadratureSpec) -> Result<LoewnerEnergy> {
    let [g1, g2] = pullbacks(&pair.normalized())?;
    let disk = CircleDomain::unit_disk();
    let (interior, exterior) = rayon::join(|| w_volume(&disk, g1, spec), || w_volume(&disk, g2, spec));
    let (interior, exterior) = (interior?, exterior?);
    let energy = ENERGY_FACTOR * (interior.w + exterior.w);
    Ok(LoewnerEnergy { energy, w: [interior.w, exterior.w], interior, exterior, warnings: negative_warnings(energy) })
}

/// Loewner energy from planar integrals alone.
///
/// Each `W(g_i)` equals `W(g_{S²}) + RHS(ψ_i)` with `ψ_i = φ_i - φ_round` and
/// `W(g_{S²}) = 0` on the disk, so no three-dimensional geometry is involved.
/// The frame is the same as for [`loewner_energy`].
pub fn loewner_energy_2d(pair: &UniformizationPair, spec: &QuadratureSpec) -> Result<LoewnerEnergy2d> {
    let disk = CircleDomain::unit_disk();
    let round: Arc<dyn MetricOracle<f64>> = Arc::new(RoundSphere);
    let minus_round: Arc<dyn MetricOracle<f64>> = Arc::new(ScaledMetric { factor: -1.0, inner: round.clone() });
    let mut terms = Vec::new();
    for g in pullbacks(&pair.normalized())? {
        let psi = SumMetric { terms: vec![g, minus_round.clone()] };
        terms.push(polyakov_rhs(&disk, &*round, &psi, spec)?);
    }
    Ok(LoewnerEnergy2d {
        energy: ENERGY_FACTOR * (terms[0].total + terms[1].total),
        interior: terms[0],
        exterior: terms[1],
    })
}

/// Both energies for one curve with the solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoewnerReport {
    pub curve: CurveSpec,
    pub smoothness: Smoothness,
    pub normalization: Normalization,
    pub interior_solve: Option<TheodorsenReport>,
    pub exterior_solve: Option<TheodorsenReport>,
    pub energy: f64,
    pub energy_2d: f64,
    pub w: [f64; 2],
    /// `|energy - energy_2d|`.
    pub gap: f64,
    /// Agreement threshold `1e-3 max(1, energy)`.
    pub tolerance: f64,
    pub agree: bool,
    pub volume: LoewnerEnergy,
    pub planar: LoewnerEnergy2d,
    pub warnings: Vec<String>,
}

/// Relative agreement required between the two pipelines.
pub const PIPELINE_TOLERANCE: f64 = 1e-3;

pub fn loewner_report(curve: &JordanCurve, options: &UniformizeOptions, spec: &QuadratureSpec) -> Result<LoewnerReport> {
    let pair = uniformize(curve, options)?;
    report_for_pair(curve.to_spec(), curve.smoothness(), &pair, spec)
}

/// Report for maps that were solved or supplied elsewhere.
pub fn report_for_pair(
    curve: CurveSpec,
    smoothness: Smoothness,
    pair: &UniformizationPair,
    spec: &QuadratureSpec,
) -> Result<LoewnerReport> {
    let (volume, planar) = rayon::join(|| loewner_energy(pair, spec), || loewner_energy_2d(pair, spec));
    let (volume, planar) = (volume?, planar?);
    let gap = (volume.energy - planar.energy).abs();
    let tolerance = PIPELINE_TOLERANCE * volume.energy.max(1.0);
    let mut warnings = volume.warnings.clone();
    if !smoothness.resolved() {
        warnings.push(format!("curve modes decay only to {:.1e} of the peak", smoothness.tail_ratio));
    }
    Ok(LoewnerReport {
        curve,
        smoothness,
        normalization: pair.normalization,
        interior_solve: pair.interior_report,
        exterior_solve: pair.exterior_report,
        energy: volume.energy,
        energy_2d: planar.energy,
        w: volume.w,
        gap,
        tolerance,
        agree: gap <= tolerance,
        volume,
        planar,
        warnings,
    })
}
