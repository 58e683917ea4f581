use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::wire::{Disk, Ideal};

pub const VERSION: &str = "v1";

/// A successful result document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Success {
    pub version: String,
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Output {
    Kp(KpResult),
    Maxdisk(MaxDiskResult),
    Height(HeightResult),
    Project(ProjectResult),
    Trace(TraceResult),
    Hessian(HessianResult),
    HoroballCheck(HoroballResult),
    Schwarzian(SchwarzianResult),
    SolveSchwarzian(SolveResult),
    Flow(FlowResult),
    Apriori(AprioriResult),
    Models(ModelsResult),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Validation,
    Numeric,
}

/// A failed request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub version: String,
    pub command: Option<String>,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct KpResult {
    pub domain_type: String,
    /// Densities of the form; at `inf` in the chart `w = 1/z`.
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MaxDiskResult {
    pub value: f64,
    pub disk: Disk,
    /// Points of the complement on the boundary of the disk.
    pub support: Vec<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct HeightResult {
    pub heights: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Projection {
    /// Nearest point of the convex hull boundary, `[re z, im z, h]`.
    pub foot: [f64; 3],
    /// Endpoint at infinity of the ray from the foot through the point.
    pub ideal: Ideal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ProjectResult {
    pub projections: Vec<Projection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TraceSample {
    pub t: f64,
    pub height: f64,
    pub horizontal_speed: f64,
    pub uhs: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TraceResult {
    pub downward_start: bool,
    pub samples: Vec<TraceSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct HessianResult {
    pub height: f64,
    /// Second difference along the probe direction.
    pub probe: f64,
    pub lower: f64,
    pub upper: f64,
    pub straddles_ridge: bool,
    /// Smallest probe over a ring of directions that avoid ridges.
    pub directional_min: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct HoroballResult {
    pub contained: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SchwarzianResult {
    pub value: [f64; 2],
    /// Taylor coefficients at the basepoint.
    pub coefficients: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SolveSample {
    /// Segment index plus fraction along the segment.
    pub t: f64,
    pub z: [f64; 2],
    pub phi: Ideal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SolveResult {
    pub end: Ideal,
    pub chart_flips: Vec<f64>,
    pub wronskian_drift: f64,
    pub samples: Vec<SolveSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FlowSample {
    pub t: f64,
    pub k: f64,
    pub principal: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FlowResult {
    /// Extrinsic curvature `det A_t`.
    pub k: f64,
    pub principal: [f64; 2],
    pub matrix: [[f64; 2]; 2],
    /// Present when a sample count is given.
    pub trajectory: Option<Vec<FlowSample>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct AprioriSample {
    pub param: [f64; 2],
    pub gauss: Ideal,
    pub curvature: f64,
    pub test_distance: Option<f64>,
    pub horoball_level: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct AprioriResult {
    pub r: f64,
    pub curvature_hypothesis: bool,
    pub distance_bound_holds: bool,
    pub horoball_bound_holds: bool,
    /// Largest `d − r` over samples with a bounded distance.
    pub max_distance_excess: Option<f64>,
    pub min_horoball_level: f64,
    pub samples: Vec<AprioriSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ModelsResult {
    pub hyperboloid: [f64; 4],
    pub klein: [f64; 3],
    pub uhs: [f64; 3],
}
