use thiserror::Error;

/// Failures raised by the geometric and numerical pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("geodesic planes intersect or are tangent (inversive distance {inversive:.3e})")]
    OverlappingPlanes { inversive: f64 },

    #[error("no geodesic plane is orthogonal to the given triple: {reason}")]
    DegenerateTriple { reason: String },

    #[error("boundary circles do not cross, planes do not meet")]
    NonIntersecting,

    #[error("metric evaluated outside its domain at ({x}, {y})")]
    EvaluationOutsideDomain { x: f64, y: f64 },

    #[error("first fundamental form is singular (det = {det:.3e})")]
    SingularFirstForm { det: f64 },

    #[error("mean curvature denominator vanishes; H times area density = {h_density:.6e}")]
    DenominatorVanishes { h_density: f64 },

    #[error("caterpillar leaf does not reach its geodesic plane in the search bracket")]
    NoLanding,

    #[error("piece orientations are inconsistent: {0}")]
    OrientationInconsistent(String),

    #[error("domain cannot be patched: {0}")]
    PatchingFailure(String),

    #[error("finite-difference step underflowed at h = {h:.3e}")]
    StepUnderflow { h: f64 },

    #[error("degenerate Schottky configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("uniformization did not converge: {0}")]
    NoConvergence(String),

    #[error("derivative of the uniformizing map vanishes (|f'| = {modulus:.3e})")]
    DerivativeVanishes { modulus: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
