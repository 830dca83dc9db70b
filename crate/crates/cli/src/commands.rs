use std::f64::consts::PI;
use std::sync::Arc;

use epsw::epstein::{caterpillar_normal, caterpillar_point, caterpillar_shape, t_land, t_start};
use epsw::hyp3::{CircleBdry, GeodesicPlane, Side};
use epsw::loewner::{loewner_report, report_for_pair, JordanCurve, LoewnerReport, UniformizationPair};
use epsw::metric::{oracle_selfcheck, BoundaryJet, CircleDomain, MetricOracle, MetricSpec};
use epsw::mesh::Mesh;
use epsw::schottky::{convex_core, core_mesh, vr_upper_bounds, SchottkyConfiguration, VrCertificate};
use epsw::wvol::{build_piecewise_sphere, halving_study, w_difference_check, w_volume, DifferenceCheck, HalvingStudy};
use epsw::{Error, Result};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, RunConfig};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const DEGENERATE_SCHOTTKY: i32 = 4;
    pub const NO_CONVERGENCE: i32 = 5;
}

/// Structural residuals above this level are reported as numerical failures.
const STRUCTURE_TOLERANCE: f64 = 1e-7;

/// A finished run: its report, the status and an optional mesh to write.
pub struct Run {
    pub report: Value,
    pub status: i32,
    pub mesh: Option<Mesh>,
}

impl Run {
    fn new(report: impl Serialize, ok: bool) -> Result<Self> {
        Ok(Self { report: to_value(report)?, status: if ok { exit::OK } else { exit::NUMERICAL }, mesh: None })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(format!("report serialization: {e}")))
}

/// Exit status for a library error raised by `command`.
pub fn error_status(command: Command, err: &Error) -> i32 {
    match err {
        Error::NoConvergence(_) => exit::NO_CONVERGENCE,
        Error::DegenerateConfiguration(_) | Error::OverlappingPlanes { .. } if command == Command::Schottky => {
            exit::DEGENERATE_SCHOTTKY
        }
        Error::InvalidInput(_) | Error::EvaluationOutsideDomain { .. } => exit::VALIDATION,
        _ => exit::NUMERICAL,
    }
}

/// Variant name of an error, for structured reports.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::OverlappingPlanes { .. } => "overlapping_planes",
        Error::DegenerateTriple { .. } => "degenerate_triple",
        Error::NonIntersecting => "non_intersecting",
        Error::EvaluationOutsideDomain { .. } => "evaluation_outside_domain",
        Error::SingularFirstForm { .. } => "singular_first_form",
        Error::DenominatorVanishes { .. } => "denominator_vanishes",
        Error::NoLanding => "no_landing",
        Error::OrientationInconsistent(_) => "orientation_inconsistent",
        Error::PatchingFailure(_) => "patching_failure",
        Error::StepUnderflow { .. } => "step_underflow",
        Error::DegenerateConfiguration(_) => "degenerate_configuration",
        Error::NoConvergence(_) => "no_convergence",
        Error::DerivativeVanishes { .. } => "derivative_vanishes",
        Error::InvalidInput(_) => "invalid_input",
    }
}

/// Advice attached to error reports where the user can act on it.
pub fn guidance(command: Command, err: &Error) -> Option<&'static str> {
    match (command, err) {
        (Command::Loewner, Error::NoConvergence(_)) => Some(
            "the curve is outside the reach of the uniformization solver; supply the conformal maps \
             in the `maps` section (base point, interior coefficients of f1 - base, exterior coefficients \
             of G(w) = 1/(f2(1/w) - base)) instead of `curve`",
        ),
        (Command::Loewner, Error::DerivativeVanishes { .. }) => {
            Some("the supplied maps are not conformal on the closed disk; check the coefficients")
        }
        (Command::Schottky, Error::DegenerateConfiguration(_) | Error::OverlappingPlanes { .. }) => {
            Some("the boundary circles must be pairwise disjoint with positive radii")
        }
        _ => None,
    }
}

pub fn run(command: Command, config: &RunConfig) -> Result<Run> {
    match command {
        Command::Wvol => wvol(config),
        Command::PolyakovCheck => polyakov_check(config),
        Command::Schottky => schottky(config),
        Command::Loewner => loewner(config),
        Command::EpsteinExport => epstein_export(config),
        Command::Selftest => selftest(config),
    }
}

fn metric(config: &RunConfig) -> Result<Arc<dyn MetricOracle<f64>>> {
    config.metric.clone().unwrap_or(MetricSpec::RoundSphere).build()
}

fn wvol(config: &RunConfig) -> Result<Run> {
    let breakdown = w_volume(&config.domain()?, metric(config)?, &config.quadrature())?;
    let pass = breakdown.build.pass();
    Run::new(json!({ "w": breakdown.w, "build_pass": pass, "breakdown": breakdown }), pass)
}

#[derive(Serialize)]
struct PolyakovReport {
    pass: bool,
    check: DifferenceCheck,
    /// Present when requested, or when the check fails and a convergence table can tell why.
    convergence: Option<ConvergenceTable>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ConvergenceTable {
    Study(HalvingStudy),
    Unavailable { resolutions: Vec<usize>, error: String },
}

fn polyakov_check(config: &RunConfig) -> Result<Run> {
    let domain = config.domain()?;
    let background = metric(config)?;
    let phi = config.phi.clone().unwrap_or(MetricSpec::Flat { c: 0.0 }).build()?;
    let spec = config.quadrature();
    let tolerance = config.tolerance.unwrap_or(epsw::wvol::DIFFERENCE_TOLERANCE);
    let check = w_difference_check(&domain, background.clone(), phi.clone(), &spec, tolerance)?;
    let levels = config.halving.clone().or_else(|| {
        (!check.pass).then(|| {
            let n = spec.boundary;
            vec![n / 4, n / 2, n]
        })
    });
    let convergence = levels.map(|levels| match halving_study(&domain, background, phi, &levels) {
        Ok(study) => ConvergenceTable::Study(study),
        Err(e) => ConvergenceTable::Unavailable { resolutions: levels, error: e.to_string() },
    });
    let pass = check.pass;
    Run::new(PolyakovReport { pass, check, convergence }, pass)
}

/// Checks whose failure means the construction is numerically unreliable.
fn certificate_checks(cert: &VrCertificate) -> Vec<(&'static str, bool)> {
    vec![
        ("hexagon_edges", cert.hexagon_edges == cert.expected_hexagon_edges),
        ("hexagon_angles", cert.hexagon_angle_residual < STRUCTURE_TOLERANCE),
        ("gauss_bonnet", cert.gauss_bonnet_max_residual < STRUCTURE_TOLERANCE),
        ("angle_inequality", cert.angle_inequality.holds),
        ("isoperimetric", cert.isoperimetric.holds),
    ]
}

fn schottky(config: &RunConfig) -> Result<Run> {
    let spec = config.schottky.clone().ok_or_else(|| Error::InvalidInput("missing `schottky`".into()))?;
    let group = SchottkyConfiguration::from_spec(&spec)?;
    let certificate = vr_upper_bounds(&group)?;
    let checks = certificate_checks(&certificate);
    let pass = checks.iter().all(|(_, ok)| *ok);
    let mesh = core_mesh(&convex_core(&group)?);
    let mut run = Run::new(
        json!({
            "pass": pass,
            "checks": checks.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "certificate": certificate,
        }),
        pass,
    )?;
    run.mesh = Some(mesh);
    Ok(run)
}

/// Samples per boundary used to compare supplied maps.
const MAP_CHECK_SAMPLES: usize = 2048;

/// Largest distance from the exterior boundary to the interior boundary, relative to the diameter.
fn map_mismatch(pair: &UniformizationPair) -> f64 {
    let circle = |k: usize, n: usize| Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
    let inner: Vec<_> = (0..4 * MAP_CHECK_SAMPLES).map(|k| pair.f1(circle(k, 4 * MAP_CHECK_SAMPLES))).collect();
    let diameter = inner.iter().flat_map(|a| inner.iter().step_by(64).map(move |b| (a - b).norm())).fold(0.0, f64::max);
    let seg_dist = |p: Complex<f64>, a: Complex<f64>, b: Complex<f64>| {
        let d = b - a;
        let t = ((p - a).re * d.re + (p - a).im * d.im) / d.norm_sqr().max(f64::MIN_POSITIVE);
        (p - (a + d * t.clamp(0.0, 1.0))).norm()
    };
    (0..MAP_CHECK_SAMPLES)
        .map(|k| {
            let p = pair.f2(circle(k, MAP_CHECK_SAMPLES));
            (0..inner.len()).map(|i| seg_dist(p, inner[i], inner[(i + 1) % inner.len()])).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        / diameter.max(f64::MIN_POSITIVE)
}

/// Relative tolerance for supplied maps tracing the same curve.
const MAP_MISMATCH_TOLERANCE: f64 = 1e-6;

fn loewner(config: &RunConfig) -> Result<Run> {
    let spec = config.quadrature();
    let report: LoewnerReport = match (&config.maps, config.curve()?) {
        (Some(maps), _) => {
            let pair = maps.build()?;
            let mismatch = map_mismatch(&pair);
            if !(mismatch <= MAP_MISMATCH_TOLERANCE) {
                return Err(Error::InvalidInput(format!(
                    "interior and exterior maps trace different curves (relative distance {mismatch:.2e})"
                )));
            }
            let samples: Vec<_> =
                (0..1024).map(|k| pair.f1(Complex::from_polar(1.0, 2.0 * PI * k as f64 / 1024.0))).collect();
            let curve = JordanCurve::from_samples(&samples)?;
            report_for_pair(curve.to_spec(), curve.smoothness(), &pair, &spec)?
        }
        (None, Some(curve)) => loewner_report(&curve, &config.uniformize.unwrap_or_default(), &spec)?,
        (None, None) => return Err(Error::InvalidInput("missing `curve` or `maps`".into())),
    };
    let pass = report.agree;
    Run::new(report, pass)
}

#[derive(Serialize)]
struct GroupSummary {
    name: String,
    faces: usize,
    extent: f64,
}

fn epstein_export(config: &RunConfig) -> Result<Run> {
    let ps = build_piecewise_sphere(&config.domain()?, metric(config)?, &config.quadrature())?;
    let mesh = ps.mesh(config.mesh_resolution.unwrap_or(crate::config::DEFAULT_MESH_RESOLUTION));
    let groups: Vec<_> = mesh
        .groups
        .iter()
        .map(|g| GroupSummary { name: g.name.clone(), faces: g.faces.len(), extent: mesh.group_extent(g) })
        .collect();
    let pass = ps.report.pass();
    let mut run = Run::new(
        json!({
            "pass": pass,
            "degenerate": ps.report.degenerate,
            "vertices": mesh.vertices.len(),
            "groups": groups,
            "build": ps.report,
        }),
        pass,
    )?;
    run.mesh = Some(mesh);
    Ok(run)
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, result: Result<(bool, String)>) -> Check {
    match result {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
    }
}

fn random_bump(rng: &mut ChaCha8Rng) -> Result<Arc<dyn MetricOracle<f64>>> {
    let coeffs = (0..5).map(|_| [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)]).collect();
    MetricSpec::FourierBump { eps: 0.3, coeffs }.build()
}

fn selftest(config: &RunConfig) -> Result<Run> {
    let spec = config.quadrature();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.unwrap_or(0));
    let disk = CircleDomain::unit_disk();
    let mut checks = Vec::new();

    checks.push(check(
        "round_metric_nullity",
        w_volume(&disk, Arc::new(epsw::metric::RoundSphere), &spec).map(|b| (b.w.abs() < 1e-6, format!("W = {:.2e}", b.w))),
    ));

    let bump = random_bump(&mut rng)?;
    checks.push(check(
        "oracle_jets",
        oracle_selfcheck(&*bump, &disk, 32).map(|r| {
            (r.pass, format!("gradient residual {:.1e}, Hessian residual {:.1e}", r.max_grad_residual, r.max_hess_residual))
        }),
    ));

    let flat: Arc<dyn MetricOracle<f64>> = Arc::new(epsw::metric::Flat { c: 0.0 });
    checks.push(check(
        "polyakov_alvarez",
        w_difference_check(&disk, flat.clone(), bump.clone(), &spec, epsw::wvol::DIFFERENCE_TOLERANCE)
            .map(|c| (c.pass, format!("residual {:.2e}", c.residual))),
    ));

    checks.push(check("caterpillar_geometry", caterpillar_geometry(&mut rng)));

    checks.push(check(
        "schottky_certificate",
        SchottkyConfiguration::symmetric(2, 6.0, 1.0).and_then(|g| vr_upper_bounds(&g)).map(|cert| {
            let ok = certificate_checks(&cert).iter().all(|(_, ok)| *ok)
                && cert.minus_two_pi_certificate
                && (cert.unconditional_bound - 4.0 * PI).abs() < 1e-12;
            (ok, format!("min plane distance {:.4}, -2π certificate {}", cert.min_plane_distance, cert.minus_two_pi_certificate))
        }),
    ));

    checks.push(check(
        "loewner_circle",
        JordanCurve::circle(Complex::new(0.2, -0.1), 1.3)
            .and_then(|c| loewner_report(&c, &Default::default(), &spec))
            .map(|r| (r.energy.abs() < 1e-4 && r.agree, format!("I^L = {:.2e}, pipeline gap {:.1e}", r.energy, r.gap))),
    ));

    let pass = checks.iter().all(|c| c.pass);
    Run::new(json!({ "pass": pass, "checks": checks }), pass)
}

/// Closed-form caterpillar geometry at random jets: `k₁ = -1`, tangency at the start and
/// landing at the circle curvature.
fn caterpillar_geometry(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let (mut landing, mut angle): (f64, f64) = (0.0, 0.0);
    let mut k1_exact = true;
    for _ in 0..20 {
        let m = random_bump(rng)?;
        let center = Complex::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        let side = if rng.gen_bool(0.5) { Side::Inside } else { Side::Outside };
        let c = CircleBdry::new(center, rng.gen_range(0.4..1.5), side);
        let jet = BoundaryJet::new(&*m, &c, rng.gen_range(0.0..c.length()));
        let tl = t_land(&jet, &GeodesicPlane::from_circle(&c))?;
        landing = landing.max((tl - c.curvature()).abs());
        let (x, n) = (caterpillar_point(&jet, tl), caterpillar_normal(&jet, tl));
        let r = [x[0] - c.center.re, x[1] - c.center.im, x[2]];
        let norm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let cos = (r[0] * n[0] + r[1] * n[1] + r[2] * n[2]) / (norm(&r) * norm(&n));
        angle = angle.max((cos.clamp(-1.0, 1.0).acos() - PI / 2.0).abs());
        let t = 0.5 * (t_start(&jet) + tl);
        if let Ok(shape) = caterpillar_shape(&jet, t) {
            k1_exact &= shape.principal.map_or(true, |k| k[0] == -1.0);
        }
    }
    Ok((
        landing < 1e-9 && angle < STRUCTURE_TOLERANCE && k1_exact,
        format!("|t_land - k| {landing:.1e}, landing angle - π/2 {angle:.1e}, k1 = -1 exactly: {k1_exact}"),
    ))
}
