//! The Kulkarni-Pinkall form of `Ω = Ĉ \ P` for a finite set `P`.
//!
//! At `x ∈ Ω` the form is the infimum of the Poincaré area densities at `x`
//! of the disks `D ⊆ Ω` containing `x`. After `n(z) = 1/(z − x)` sends `x` to
//! `∞`, the admissible disks become exteriors of circles enclosing `n(P)`,
//! and the exterior of a circle of radius `ρ` has density `4ρ²` at `∞` in the
//! chart `w = 1/n(z) = z − x`, whatever its centre. The chart `w` differs from
//! `z` by a translation, so
//!
//! ```text
//! ω(x) = 4ρ*²,    ρ* = radius of the minimum enclosing circle of n(P).
//! ```

pub mod mec;

use num_complex::Complex64;

use crate::disks::{disk_from_circle, Orientation, OrientedDisk};
use crate::error::{GeomError, Result};
use crate::lorentz::{IdealPoint, MobiusMap};

pub use mec::{minimum_enclosing_circle, EnclosingCircle};

/// Seed of the randomized enclosing-circle construction.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Points of `Ĉ` closer than this in the chordal metric are identified.
pub const DISTINCT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomainType {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl DomainType {
    pub fn name(&self) -> &'static str {
        match self {
            DomainType::Elliptic => "elliptic",
            DomainType::Parabolic => "parabolic",
            DomainType::Hyperbolic => "hyperbolic",
        }
    }
}

/// The Möbius surface `(Ĉ \ P, z)` for a finite set `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteComplementDomain {
    complement: Vec<IdealPoint>,
}

impl FiniteComplementDomain {
    pub fn new(points: Vec<IdealPoint>) -> Result<FiniteComplementDomain> {
        for (i, p) in points.iter().enumerate() {
            if let IdealPoint::Finite(z) = p {
                if !z.is_finite() {
                    return Err(GeomError::Degenerate("non-finite coordinate".into()));
                }
            }
            if points[..i].iter().any(|q| p.chordal_distance(q) <= DISTINCT_TOL) {
                return Err(GeomError::Degenerate(format!("repeated point {p:?}")));
            }
        }
        Ok(FiniteComplementDomain { complement: points })
    }

    #[inline]
    pub fn complement(&self) -> &[IdealPoint] {
        &self.complement
    }

    pub fn contains(&self, x: IdealPoint) -> bool {
        self.complement.iter().all(|p| p.chordal_distance(&x) > DISTINCT_TOL)
    }

    pub fn image(&self, m: &MobiusMap) -> FiniteComplementDomain {
        FiniteComplementDomain {
            complement: self.complement.iter().map(|&p| m.apply(p)).collect(),
        }
    }
}

pub fn kp_classify(dom: &FiniteComplementDomain) -> DomainType {
    match dom.complement.len() {
        0 => DomainType::Elliptic,
        1 => DomainType::Parabolic,
        _ => DomainType::Hyperbolic,
    }
}

/// The Möbius map `n` with `n(x) = ∞` used to normalize queries.
pub fn normalizing_map(x: IdealPoint) -> MobiusMap {
    match x {
        IdealPoint::Infinity => MobiusMap::identity(),
        IdealPoint::Finite(x) => {
            let zero = Complex64::new(0.0, 0.0);
            let one = Complex64::new(1.0, 0.0);
            MobiusMap::new(zero, one, one, -x).expect("unit determinant")
        }
    }
}

/// Value and maximal disk of the Kulkarni-Pinkall form at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct KpSolution {
    pub value: f64,
    /// `None` for elliptic and parabolic domains.
    pub max_disk: Option<OrientedDisk>,
    /// Points of `P` on the boundary of the maximal disk.
    pub support: Vec<IdealPoint>,
}

pub fn kp_solve(dom: &FiniteComplementDomain, x: IdealPoint, seed: u64) -> Result<KpSolution> {
    if !dom.contains(x) {
        return Err(GeomError::PointInComplement);
    }
    if kp_classify(dom) != DomainType::Hyperbolic {
        return Ok(KpSolution {
            value: 0.0,
            max_disk: None,
            support: Vec::new(),
        });
    }
    let n = normalizing_map(x);
    let moved: Vec<Complex64> = dom
        .complement
        .iter()
        .map(|&p| n.apply(p).as_finite().ok_or(GeomError::PointInComplement))
        .collect::<Result<_>>()?;
    let circle = minimum_enclosing_circle(&moved, seed).expect("non-empty");
    let exterior = disk_from_circle(circle.center, circle.radius, Orientation::Exterior)?;
    Ok(KpSolution {
        value: 4.0 * circle.radius * circle.radius,
        max_disk: Some(exterior.image(&n.inverse())),
        support: circle.support.iter().map(|&i| dom.complement[i]).collect(),
    })
}

/// Kulkarni-Pinkall area density at `x`, in the chart `z` (or `1/z` at `∞`).
pub fn kp_form(dom: &FiniteComplementDomain, x: IdealPoint) -> Result<f64> {
    Ok(kp_solve(dom, x, DEFAULT_SEED)?.value)
}

/// The unique disk realizing [`kp_form`] at `x`.
pub fn kp_max_disk(dom: &FiniteComplementDomain, x: IdealPoint) -> Result<OrientedDisk> {
    let kind = kp_classify(dom);
    if kind != DomainType::Hyperbolic {
        return Err(GeomError::NotHyperbolic(kind.name()));
    }
    Ok(kp_solve(dom, x, DEFAULT_SEED)?.max_disk.expect("hyperbolic domain"))
}
