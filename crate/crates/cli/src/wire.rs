//! Serialized forms of points, disks and matrices shared by requests and
//! results.

use hyperend::{EuclideanDisk, HPoint, IdealPoint, MinkowskiVec, OrientedDisk};
use num_complex::Complex64;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

/// A point of the Riemann sphere: `[re, im]` or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(untagged)]
pub enum Ideal {
    Finite([f64; 2]),
    Infinity(InfTag),
}

impl Ideal {
    pub fn to_core(self) -> Result<IdealPoint, Failure> {
        match self {
            Ideal::Finite([re, im]) => {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(Failure::validation("ideal point has non-finite coordinates"));
                }
                Ok(IdealPoint::finite(re, im))
            }
            Ideal::Infinity(_) => Ok(IdealPoint::Infinity),
        }
    }
}

impl From<IdealPoint> for Ideal {
    fn from(z: IdealPoint) -> Ideal {
        match z {
            IdealPoint::Finite(z) => Ideal::Finite([z.re, z.im]),
            IdealPoint::Infinity => Ideal::Infinity(InfTag::Inf),
        }
    }
}

pub fn complex(c: [f64; 2]) -> Complex64 {
    Complex64::new(c[0], c[1])
}

pub fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

pub fn ideal_set(points: &[Ideal]) -> Result<Vec<IdealPoint>, Failure> {
    points.iter().map(|p| p.to_core()).collect()
}

/// A point of hyperbolic space in one of the three models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Point {
    /// `[x1, x2, x3, x4]` on the upper sheet of `⟨x, x⟩ = −1`.
    Hyperboloid([f64; 4]),
    /// `[k1, k2, k3]` in the open unit ball.
    Klein([f64; 3]),
    /// `[re z, im z, h]` with `h > 0`.
    Uhs([f64; 3]),
}

impl Point {
    pub fn to_core(self) -> Result<HPoint, Failure> {
        let x = match self {
            Point::Hyperboloid(v) => HPoint::new(MinkowskiVec::from_array(v)),
            Point::Klein(k) => HPoint::from_klein(k),
            Point::Uhs([a, b, h]) => HPoint::from_uhs(Complex64::new(a, b), h),
        };
        x.map_err(|e| Failure::validation(format!("invalid point: {e}")))
    }
}

pub fn uhs(x: &HPoint) -> [f64; 3] {
    let (z, h) = x.to_uhs();
    [z.re, z.im, h]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Euclid {
    Disk { center: [f64; 2], radius: f64 },
    Exterior { center: [f64; 2], radius: f64 },
    HalfPlane { normal: [f64; 2], offset: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Disk {
    /// Unit spacelike de Sitter pole.
    pub pole: [f64; 4],
    pub euclidean: Euclid,
}

impl From<&OrientedDisk> for Disk {
    fn from(d: &OrientedDisk) -> Disk {
        let euclidean = match d.euclidean() {
            EuclideanDisk::Disk { center, radius } => Euclid::Disk {
                center: pair(center),
                radius,
            },
            EuclideanDisk::Exterior { center, radius } => Euclid::Exterior {
                center: pair(center),
                radius,
            },
            EuclideanDisk::HalfPlane { normal, offset } => Euclid::HalfPlane {
                normal: pair(normal),
                offset,
            },
        };
        Disk {
            pole: d.pole().to_array(),
            euclidean,
        }
    }
}
