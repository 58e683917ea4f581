//! Disks of the Riemann sphere as points of de Sitter space.
//!
//! An oriented disk `D` is stored by its pole `N`, a unit spacelike vector,
//! with the convention
//!
//! ```text
//! z ∈ D  ⇔  ⟨ℓ(z), N⟩ < 0,        x ∈ H  ⇔  ⟨x, N⟩ < 0,
//! ```
//!
//! where `H` is the open half-space of hyperbolic space with ideal boundary
//! `D`. Lines are disks through `∞` and use the same representation.

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::lorentz::{
    ideal_lift, ideal_point_of_null, HPoint, IdealPoint, LorentzMatrix, MinkowskiVec, MobiusMap, Tolerances,
};

/// Which side of a circle is the disk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Interior,
    Exterior,
}

/// Which side of the line `ax + by + c = 0` is the disk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LineSide {
    /// `ax + by + c > 0`
    Positive,
    /// `ax + by + c < 0`
    Negative,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// Relative position of two oriented disks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiskRelation {
    /// Boundary circles cross at exactly two points.
    Overlap,
    /// Boundary circles touch at one point.
    Tangent,
    /// One disk contains the closure of the other.
    Nested,
    /// The closures are disjoint.
    Disjoint,
    /// The complements have disjoint closures, so the disks cover the sphere.
    Covering,
    Equal,
    /// Same circle, opposite sides.
    Opposite,
}

/// Euclidean description of an oriented disk.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum EuclideanDisk {
    /// `{|z − center| < radius}`
    Disk { center: Complex64, radius: f64 },
    /// `{|z − center| > radius} ∪ {∞}`
    Exterior { center: Complex64, radius: f64 },
    /// `{Re(conj(normal)·z) > offset}` with `|normal| = 1`.
    HalfPlane { normal: Complex64, offset: f64 },
}

/// An oriented disk in the Riemann sphere.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct OrientedDisk {
    pole: MinkowskiVec,
}

// Threshold on |n3 + n4| below which the boundary circle is treated as a line.
const LINE_TOL: f64 = 1e-12;

impl OrientedDisk {
    /// Accepts a unit spacelike pole (within 1e−10).
    pub fn from_pole(pole: MinkowskiVec) -> Result<OrientedDisk> {
        let scale = pole.max_abs().max(1.0);
        if (pole.norm_sq() - 1.0).abs() > 1e-10 * scale * scale {
            return Err(GeomError::Degenerate(format!(
                "pole is not unit spacelike: ⟨N,N⟩ = {}",
                pole.norm_sq()
            )));
        }
        Ok(OrientedDisk { pole })
    }

    /// Rescales any spacelike vector to a pole.
    pub fn from_spacelike(v: MinkowskiVec) -> Result<OrientedDisk> {
        let n = v.norm_sq();
        if !(n > 0.0) {
            return Err(GeomError::Degenerate("vector is not spacelike".into()));
        }
        Ok(OrientedDisk {
            pole: v * (1.0 / n.sqrt()),
        })
    }

    pub fn from_circle(center: Complex64, radius: f64, orientation: Orientation) -> Result<OrientedDisk> {
        disk_from_circle(center, radius, orientation)
    }

    #[inline]
    pub fn pole(&self) -> MinkowskiVec {
        self.pole
    }

    /// The complementary disk.
    pub fn reversed(&self) -> OrientedDisk {
        OrientedDisk { pole: -self.pole }
    }

    /// Image under a Lorentz transformation.
    pub fn transform(&self, l: &LorentzMatrix) -> OrientedDisk {
        OrientedDisk {
            pole: l.apply(&self.pole),
        }
    }

    /// Image under a Möbius map.
    pub fn image(&self, m: &MobiusMap) -> OrientedDisk {
        self.transform(&m.lift())
    }

    /// `⟨ℓ(z), N⟩` with `ℓ` normalized to fourth component 1.
    pub fn level(&self, z: IdealPoint) -> f64 {
        let l = ideal_lift(z);
        l.inner(&self.pole) / l[3]
    }

    pub fn contains(&self, z: IdealPoint) -> Membership {
        disk_contains(self, z)
    }

    pub fn euclidean(&self) -> EuclideanDisk {
        let n = self.pole;
        let alpha = n[2] + n[3];
        if alpha.abs() <= LINE_TOL * n.max_abs() {
            let w = Complex64::new(n[0], n[1]);
            let len = w.norm();
            return EuclideanDisk::HalfPlane {
                normal: -w / len,
                offset: 0.5 * (n[2] - n[3]) / len,
            };
        }
        // ⟨ℓ(z),N⟩ = −α(|z − c|² − ρ²) with c = (n1 + i n2)/α and ρ = 1/|α|
        let center = Complex64::new(n[0], n[1]) / alpha;
        let radius = 1.0 / alpha.abs();
        if alpha < 0.0 {
            EuclideanDisk::Disk { center, radius }
        } else {
            EuclideanDisk::Exterior { center, radius }
        }
    }

    /// Three distinct points on the boundary circle.
    pub fn boundary_points(&self) -> [IdealPoint; 3] {
        match self.euclidean() {
            EuclideanDisk::Disk { center, radius } | EuclideanDisk::Exterior { center, radius } => [
                IdealPoint::Finite(center + radius),
                IdealPoint::Finite(center + Complex64::new(0.0, radius)),
                IdealPoint::Finite(center - radius),
            ],
            EuclideanDisk::HalfPlane { normal, offset } => {
                let foot = normal * offset;
                let along = normal * Complex64::new(0.0, 1.0);
                [
                    IdealPoint::Finite(foot),
                    IdealPoint::Finite(foot + along),
                    IdealPoint::Infinity,
                ]
            }
        }
    }

    /// A point strictly outside the closure of the disk.
    pub fn exterior_point(&self) -> IdealPoint {
        match self.euclidean() {
            EuclideanDisk::Disk { center, radius } => IdealPoint::Finite(center + 2.0 * radius),
            EuclideanDisk::Exterior { center, .. } => IdealPoint::Finite(center),
            EuclideanDisk::HalfPlane { normal, offset } => IdealPoint::Finite(normal * (offset - 1.0)),
        }
    }

    /// The point of the totally geodesic plane `∂H` lying below `z`, i.e. the
    /// foot of the geodesic from `z` orthogonal to the plane. This is the
    /// isometry from `D` with its Poincaré metric onto `∂H`.
    pub fn plane_point(&self, z: IdealPoint) -> Result<HPoint> {
        let l = ideal_lift(z);
        let s = l.inner(&self.pole);
        if !(s < 0.0) {
            return Err(GeomError::NotInterior);
        }
        HPoint::normalize(self.pole + l * (-1.0 / s))
    }

    /// Distance between interior points in the curvature −1 metric of the disk.
    pub fn poincare_distance(&self, z: IdealPoint, w: IdealPoint) -> Result<f64> {
        Ok(self.plane_point(z)?.distance(&self.plane_point(w)?))
    }

    /// A Möbius map sending the disk onto the upper half-plane and `x` to `i`.
    pub fn to_upper_half_plane(&self, x: IdealPoint) -> Result<MobiusMap> {
        if self.contains(x) != Membership::Interior {
            return Err(GeomError::NotInterior);
        }
        let [p, q, r] = self.boundary_points();
        // p ↦ 0, q ↦ 1, r ↦ ∞ sends the boundary onto the real line
        let mut m = MobiusMap::from_three_points(p, q, r)?;
        let w = m.apply(x).as_finite().ok_or(GeomError::NotInterior)?;
        if w.im < 0.0 {
            m = MobiusMap::scaling(Complex64::new(-1.0, 0.0))?.compose(&m);
        }
        let w = m.apply(x).as_finite().ok_or(GeomError::NotInterior)?;
        let affine = MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(-w.re, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(w.im, 0.0),
        )?;
        Ok(affine.compose(&m))
    }

    /// A Möbius map sending the disk onto the unit disk and `x` to `0`.
    pub fn to_unit_disk(&self, x: IdealPoint) -> Result<MobiusMap> {
        let i = Complex64::new(0.0, 1.0);
        let cayley = MobiusMap::new(Complex64::new(1.0, 0.0), -i, Complex64::new(1.0, 0.0), i)?;
        Ok(cayley.compose(&self.to_upper_half_plane(x)?))
    }
}

/// The disk bounded by `|z − center| = radius`.
///
/// With `s = 1/ρ` for the interior and `−1/ρ` for the exterior,
/// `N = s·(−c1, −c2, (|c|² − ρ² − 1)/2, −(|c|² − ρ² + 1)/2)`.
pub fn disk_from_circle(center: Complex64, radius: f64, orientation: Orientation) -> Result<OrientedDisk> {
    if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
        return Err(GeomError::Degenerate(format!("circle of radius {radius}")));
    }
    let s = match orientation {
        Orientation::Interior => 1.0 / radius,
        Orientation::Exterior => -1.0 / radius,
    };
    let q = center.norm_sqr() - radius * radius;
    Ok(OrientedDisk {
        pole: MinkowskiVec::new(-center.re, -center.im, 0.5 * (q - 1.0), -0.5 * (q + 1.0)) * s,
    })
}

/// The half-plane on the given side of `ax + by + c = 0`.
pub fn disk_from_line(a: f64, b: f64, c: f64, side: LineSide) -> Result<OrientedDisk> {
    let len = a.hypot(b);
    if !(len > 0.0) || !c.is_finite() {
        return Err(GeomError::Degenerate("line with vanishing normal".into()));
    }
    // ⟨ℓ(z), N⟩ = −k(ax + by + c) for k = 2/|(a, b)|
    let k = match side {
        LineSide::Positive => 2.0 / len,
        LineSide::Negative => -2.0 / len,
    };
    Ok(OrientedDisk {
        pole: MinkowskiVec::new(-0.5 * k * a, -0.5 * k * b, -0.5 * k * c, 0.5 * k * c),
    })
}

pub fn disk_contains(disk: &OrientedDisk, z: IdealPoint) -> Membership {
    disk_contains_with(disk, z, &Tolerances::default())
}

pub fn disk_contains_with(disk: &OrientedDisk, z: IdealPoint, tol: &Tolerances) -> Membership {
    let v = disk.level(z);
    if v < -tol.boundary {
        Membership::Interior
    } else if v > tol.boundary {
        Membership::Exterior
    } else {
        Membership::Boundary
    }
}

pub fn disk_relation(d0: &OrientedDisk, d1: &OrientedDisk) -> DiskRelation {
    disk_relation_with(d0, d1, &Tolerances::default())
}

pub fn disk_relation_with(d0: &OrientedDisk, d1: &OrientedDisk, tol: &Tolerances) -> DiskRelation {
    let c = d0.pole.inner(&d1.pole);
    if (c - 1.0).abs() <= tol.boundary {
        if (d0.pole - d1.pole).max_abs() <= tol.boundary.sqrt() {
            return DiskRelation::Equal;
        }
        return DiskRelation::Tangent;
    }
    if (c + 1.0).abs() <= tol.boundary {
        if (d0.pole + d1.pole).max_abs() <= tol.boundary.sqrt() {
            return DiskRelation::Opposite;
        }
        return DiskRelation::Tangent;
    }
    if c.abs() < 1.0 {
        return DiskRelation::Overlap;
    }
    // Non-crossing circles: locate each boundary relative to the other disk.
    let b0_in_1 = d1.level(d0.boundary_points()[0]) < 0.0;
    let b1_in_0 = d0.level(d1.boundary_points()[0]) < 0.0;
    match (b0_in_1, b1_in_0) {
        (true, true) => DiskRelation::Covering,
        (false, false) => DiskRelation::Disjoint,
        _ => DiskRelation::Nested,
    }
}

/// Point at parameter `s` of the shorter de Sitter geodesic arc joining the
/// poles of two overlapping disks.
pub fn disk_geodesic_arc(d0: &OrientedDisk, d1: &OrientedDisk, s: f64) -> Result<OrientedDisk> {
    if disk_relation(d0, d1) != DiskRelation::Overlap {
        return Err(GeomError::NotOverlapping);
    }
    let theta = d0.pole.inner(&d1.pole).clamp(-1.0, 1.0).acos();
    let st = theta.sin();
    let pole = d0.pole * (((1.0 - s) * theta).sin() / st) + d1.pole * ((s * theta).sin() / st);
    Ok(OrientedDisk { pole })
}

/// Area density of the Poincaré metric of `D` at `z`, in the chart `z` (or
/// `1/z` when `z = ∞`).
///
/// For a Euclidean disk of radius `R` whose centre lies at distance `r` from
/// `z` the density is `4R²/((R − r)²(R + r)²)`; other disks are first moved to
/// a bounded disk by `w = 1/(z − q)` for some `q` outside `D`, and the 2-form
/// is pulled back with `|w′|²`.
pub fn disk_area_form(disk: &OrientedDisk, z: IdealPoint) -> Result<f64> {
    if disk.contains(z) != Membership::Interior {
        return Err(GeomError::NotInterior);
    }
    // Sending the mirror image of z across ∂D to ∞ makes m(z) the centre of
    // a bounded disk, so the closed form is evaluated at r = 0 without the
    // cancellation in R² − r² that a far exterior point would cause.
    let l = ideal_lift(z);
    let mirror = ideal_point_of_null(&(l - disk.pole * (2.0 * l.inner(&disk.pole))))?;
    let q = match (mirror, disk.euclidean(), z) {
        (IdealPoint::Finite(q), _, _) => q,
        (_, EuclideanDisk::Disk { center, radius }, IdealPoint::Finite(z)) => {
            return Ok(bounded_area_form(radius, (z - center).norm()));
        }
        _ => return Err(GeomError::Degenerate("no finite mirror point".into())),
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let m = MobiusMap::new(zero, one, one, -q)?;
    let image = disk.image(&m);
    let w = m.apply(z);
    match (image.euclidean(), w) {
        (EuclideanDisk::Disk { center, radius }, IdealPoint::Finite(w)) => {
            let k = m.conformal_factor(z);
            Ok(bounded_area_form(radius, (w - center).norm()) * k * k)
        }
        _ => Err(GeomError::Degenerate("transport did not produce a bounded disk".into())),
    }
}

#[inline]
fn bounded_area_form(big_r: f64, r: f64) -> f64 {
    let a = (big_r - r) * (big_r + r);
    4.0 * big_r * big_r / (a * a)
}

/// `arcsinh(−⟨x, N⟩)`: signed distance from `x` to the plane `∂H`, positive
/// inside `H`.
pub fn halfspace_signed_distance(disk: &OrientedDisk, x: &HPoint) -> f64 {
    (-x.vec().inner(&disk.pole)).asinh()
}
