use epsw::loewner::{ConformalMap, CurveSpec, JordanCurve, UniformizationPair, UniformizeOptions};
use epsw::metric::{CircleDomain, MetricSpec};
use epsw::quad::QuadratureSpec;
use epsw::schottky::{CircleSpec, SchottkyConfiguration, SchottkySpec};
use epsw::{Error, Result};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Boundary circles of a planar domain; the largest one is the outer circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub circles: Vec<CircleSpec>,
}

impl DomainSpec {
    pub fn unit_disk() -> Self {
        Self { circles: vec![CircleSpec { center: [0.0, 0.0], radius: 1.0 }] }
    }

    pub fn build(&self) -> Result<CircleDomain<f64>> {
        let circles: Vec<_> =
            self.circles.iter().map(|c| (Complex::new(c.center[0], c.center[1]), c.radius)).collect();
        CircleDomain::from_circles(&circles)
    }
}

/// Explicit conformal maps for curves outside the solver's reach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsSpec {
    /// Interior base point `f₁(0)`.
    pub base: [f64; 2],
    /// Taylor coefficients of `f₁ - base`, `[re, im]` from `z^0`.
    pub interior: Vec<[f64; 2]>,
    /// Taylor coefficients of `G(w) = 1/(f₂(1/w) - base)`.
    pub exterior: Vec<[f64; 2]>,
}

impl MapsSpec {
    pub fn build(&self) -> Result<UniformizationPair> {
        let map = |c: &[[f64; 2]]| ConformalMap { coeffs: c.iter().map(|a| Complex::new(a[0], a[1])).collect() };
        UniformizationPair::from_maps(Complex::new(self.base[0], self.base[1]), map(&self.interior), map(&self.exterior))
    }
}

/// Every input of a run. Sections a subcommand does not use must be absent.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    /// Metric for `wvol` and `epstein-export`; background metric for `polyakov-check`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSpec>,
    /// Conformal factor for `polyakov-check`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<MetricSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Resolutions of the optional convergence table of `polyakov-check`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halving: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schottky: Option<SchottkySpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maps: Option<MapsSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniformize: Option<UniformizeOptions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    /// Subdivisions per piece for mesh export.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh_resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Subcommands sharing the config schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Wvol,
    PolyakovCheck,
    Schottky,
    Loewner,
    EpsteinExport,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Wvol => "wvol",
            Command::PolyakovCheck => "polyakov-check",
            Command::Schottky => "schottky",
            Command::Loewner => "loewner",
            Command::EpsteinExport => "epstein-export",
            Command::Selftest => "selftest",
        }
    }
}

pub const DEFAULT_MESH_RESOLUTION: usize = 32;

fn default_bump() -> MetricSpec {
    MetricSpec::FourierBump { eps: 0.3, coeffs: vec![[0.1, 0.0], [0.5, 0.1], [0.3, 0.0], [-0.2, 0.1]] }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }

    /// Fills defaults for the subcommand, applies overrides and rejects unused sections.
    pub fn resolve(mut self, command: Command, resolution: Option<usize>, seed: Option<u64>) -> Result<Self> {
        let unused = |name: &str| Error::InvalidInput(format!("`{name}` is not used by `{}`", command.name()));
        let allowed: &[&str] = match command {
            Command::Wvol => &["domain", "metric", "quadrature"],
            Command::PolyakovCheck => &["domain", "metric", "phi", "tolerance", "halving", "quadrature"],
            Command::Schottky => &["schottky", "quadrature"],
            Command::Loewner => &["curve", "maps", "uniformize", "quadrature"],
            Command::EpsteinExport => &["domain", "metric", "quadrature", "mesh_resolution"],
            Command::Selftest => &["quadrature", "seed"],
        };
        let present = [
            ("domain", self.domain.is_some()),
            ("metric", self.metric.is_some()),
            ("phi", self.phi.is_some()),
            ("tolerance", self.tolerance.is_some()),
            ("halving", self.halving.is_some()),
            ("schottky", self.schottky.is_some()),
            ("curve", self.curve.is_some()),
            ("maps", self.maps.is_some()),
            ("uniformize", self.uniformize.is_some()),
            ("mesh_resolution", self.mesh_resolution.is_some()),
            ("seed", self.seed.is_some()),
        ];
        if let Some((name, _)) = present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            return Err(unused(name));
        }
        let quadrature = match resolution {
            Some(n) => QuadratureSpec::with_resolution(n),
            None => self.quadrature.unwrap_or_default(),
        };
        quadrature.validate()?;
        self.quadrature = Some(quadrature);
        match command {
            Command::Wvol | Command::EpsteinExport => {
                self.domain.get_or_insert_with(DomainSpec::unit_disk);
                let default = if command == Command::Wvol { MetricSpec::RoundSphere } else { MetricSpec::Flat { c: 0.0 } };
                self.metric.get_or_insert(default);
                if command == Command::EpsteinExport {
                    self.mesh_resolution.get_or_insert(DEFAULT_MESH_RESOLUTION);
                }
            }
            Command::PolyakovCheck => {
                self.domain.get_or_insert_with(DomainSpec::unit_disk);
                self.metric.get_or_insert(MetricSpec::Flat { c: 0.0 });
                self.phi.get_or_insert_with(default_bump);
                self.tolerance.get_or_insert(epsw::wvol::DIFFERENCE_TOLERANCE);
            }
            Command::Schottky => {
                if self.schottky.is_none() {
                    self.schottky = Some(SchottkyConfiguration::symmetric(2, 6.0, 1.0)?.to_spec());
                }
            }
            Command::Loewner => {
                if self.curve.is_some() && self.maps.is_some() {
                    return Err(Error::InvalidInput("give either `curve` or `maps`, not both".into()));
                }
                if self.maps.is_none() {
                    self.curve.get_or_insert(CurveSpec::Polynomial { coeffs: vec![[0.0, 0.0], [1.0, 0.0], [0.1, 0.0]] });
                    self.uniformize.get_or_insert_with(UniformizeOptions::default);
                }
            }
            Command::Selftest => {
                if let Some(s) = seed {
                    self.seed = Some(s);
                }
                self.seed.get_or_insert(0);
            }
        }
        if let Some(s) = seed {
            if command != Command::Selftest {
                return Err(Error::InvalidInput(format!("--seed {s} is only used by `selftest`")));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(Error::InvalidInput(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.mesh_resolution == Some(0) {
            return Err(Error::InvalidInput("mesh_resolution must be positive".into()));
        }
        Ok(self)
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.quadrature.unwrap_or_default()
    }

    pub fn domain(&self) -> Result<CircleDomain<f64>> {
        self.domain.clone().unwrap_or_else(DomainSpec::unit_disk).build()
    }

    pub fn curve(&self) -> Result<Option<JordanCurve>> {
        self.curve.as_ref().map(|c| c.build()).transpose()
    }
}
