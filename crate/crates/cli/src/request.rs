use schemars::JsonSchema;
use serde::Deserialize;

use crate::wire::{Ideal, Point};

/// Envelope keys accepted next to `command` in every request.
pub const ENVELOPE_KEYS: [&str; 4] = ["version", "tol", "seed", "samples"];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl Options {
    /// Values from `over` win.
    pub fn merged(&self, over: &Options) -> Options {
        Options {
            tol: over.tol.or(self.tol),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
        }
    }
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Kp(KpRequest),
    Maxdisk(MaxDiskRequest),
    Height(PointsRequest),
    Project(PointsRequest),
    Trace(TraceRequest),
    Hessian(HessianRequest),
    HoroballCheck(PointsRequest),
    Schwarzian(SchwarzianRequest),
    SolveSchwarzian(SolveRequest),
    Flow(FlowRequest),
    Apriori(AprioriRequest),
    Models(ModelsRequest),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kp(_) => "kp",
            Command::Maxdisk(_) => "maxdisk",
            Command::Height(_) => "height",
            Command::Project(_) => "project",
            Command::Trace(_) => "trace",
            Command::Hessian(_) => "hessian",
            Command::HoroballCheck(_) => "horoball-check",
            Command::Schwarzian(_) => "schwarzian",
            Command::SolveSchwarzian(_) => "solve-schwarzian",
            Command::Flow(_) => "flow",
            Command::Apriori(_) => "apriori",
            Command::Models(_) => "models",
        }
    }
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct KpRequest {
    pub complement: Vec<Ideal>,
    pub queries: Vec<Ideal>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MaxDiskRequest {
    pub complement: Vec<Ideal>,
    pub at: Ideal,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct PointsRequest {
    pub complement: Vec<Ideal>,
    pub points: Vec<Point>,
}

fn default_t_max() -> f64 {
    12.0
}

fn default_dt() -> f64 {
    0.05
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TraceRequest {
    pub complement: Vec<Ideal>,
    pub from: Point,
    /// The geodesic ray runs from `from` to this point at infinity.
    pub towards: Ideal,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
}

fn default_eps() -> f64 {
    1e-3
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct HessianRequest {
    pub complement: Vec<Ideal>,
    pub at: Point,
    /// Angle of the probe direction in the plane orthogonal to the height
    /// gradient.
    #[serde(default)]
    pub angle: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
}

fn default_order() -> usize {
    6
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SchwarzianRequest {
    /// Expression in `z` built from numbers, `i`, `+ − * /`, integer powers,
    /// `exp`, `cosh`, `sinh`, `cos`, `sin`.
    pub map: String,
    pub at: [f64; 2],
    /// Number of Taylor coefficients of the Schwarzian beyond the constant.
    #[serde(default = "default_order")]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct NormalizationSpec {
    pub phi: [f64; 2],
    pub dphi: [f64; 2],
    #[serde(default)]
    pub d2phi: [f64; 2],
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    /// The prescribed Schwarzian, same grammar as `map`.
    pub field: String,
    /// Polyline starting at the normalization point.
    pub path: Vec<[f64; 2]>,
    /// Defaults to `φ = 0, φ′ = 1, φ″ = 0`.
    #[serde(default)]
    pub normalization: Option<NormalizationSpec>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    ClosedForm,
    Rk4,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FlowRequest {
    /// Symmetric shape operator at time zero.
    #[serde(rename = "A0")]
    pub a0: [[f64; 2]; 2],
    pub t: f64,
    #[serde(default)]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    #[default]
    Interior,
    Exterior,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SurfaceSpec {
    /// Points at distance `r` from the plane over the disk.
    Equidistant {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        side: Side,
        r: f64,
    },
    /// Tube of radius `r` about the geodesic from `p` to `q`.
    Cylinder { p: Ideal, q: Ideal, r: f64 },
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct AprioriRequest {
    pub surface: SurfaceSpec,
    /// Radius of the curvature bound `K ≤ tanh² r`; defaults to the
    /// surface's own `r`.
    #[serde(default)]
    pub r: Option<f64>,
    /// Extra normal offset applied to the surface (a translated control).
    #[serde(default)]
    pub offset: f64,
    /// Parameter points; a default grid is used when absent.
    #[serde(default)]
    pub params: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ModelsRequest {
    pub point: Point,
}
