//! Open horoballs parametrized by asymptotic centre and asymptotic curvature.
//!
//! A horoball is stored as a future null vector `ℓ_B` with
//! `B = {x : ⟨x, ℓ_B⟩ > −1}`. For the horoball `{height > t}` of the upper
//! half-space one has `ℓ_B = t·ℓ(∞)`, and the largest half-space tangent to it
//! from outside has ideal boundary `{|w| < 1/t}` in the chart `w = 1/z`, with
//! area density `4t²` at `w = 0`. Transporting by Möbius maps, for which
//! `L·ℓ(z) = ℓ(m z)/|m′(z)|`, gives in every chart
//!
//! ```text
//! ℓ_B = (√ω / 2)·ℓ(y).
//! ```

use crate::disks::{Membership, OrientedDisk};
use crate::error::{GeomError, Result};
use crate::lorentz::{
    ideal_lift, ideal_point_of_null, HPoint, IdealPoint, LorentzMatrix, MinkowskiVec, MobiusMap, Tolerances,
};

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Horoball {
    centre: IdealPoint,
    scaled_lift: MinkowskiVec,
}

impl Horoball {
    /// Builds a horoball from a future null vector.
    pub fn from_lift(v: MinkowskiVec) -> Result<Horoball> {
        let scale = v.max_abs();
        if !(v[3] > 0.0) || v.norm_sq().abs() > 1e-10 * scale * scale {
            return Err(GeomError::Degenerate("horoball lift must be future null".into()));
        }
        Ok(Horoball {
            centre: ideal_point_of_null(&v)?,
            scaled_lift: v,
        })
    }

    #[inline]
    pub fn centre(&self) -> IdealPoint {
        self.centre
    }

    #[inline]
    pub fn scaled_lift(&self) -> MinkowskiVec {
        self.scaled_lift
    }

    /// Asymptotic curvature in the standard chart at the centre.
    pub fn curvature(&self) -> f64 {
        let lambda = self.scaled_lift[3] / ideal_lift(self.centre)[3];
        4.0 * lambda * lambda
    }

    /// `⟨x, ℓ_B⟩ + 1`; positive inside the horoball.
    pub fn level(&self, x: &HPoint) -> f64 {
        x.vec().inner(&self.scaled_lift) + 1.0
    }

    pub fn contains(&self, x: &HPoint) -> Membership {
        horoball_contains(self, x)
    }

    pub fn transform(&self, l: &LorentzMatrix) -> Horoball {
        let v = l.apply(&self.scaled_lift);
        Horoball {
            centre: ideal_point_of_null(&v).unwrap_or(IdealPoint::Infinity),
            scaled_lift: v,
        }
    }

    pub fn image(&self, m: &MobiusMap) -> Horoball {
        Horoball {
            centre: m.apply(self.centre),
            scaled_lift: m.lift().apply(&self.scaled_lift),
        }
    }

    /// Point of the horosphere on the geodesic from the centre towards `z`.
    pub fn boundary_point_towards(&self, z: IdealPoint) -> Result<HPoint> {
        let l = ideal_lift(z);
        let q = -l.inner(&self.scaled_lift);
        if !(q > 0.0) {
            return Err(GeomError::Degenerate("direction coincides with the centre".into()));
        }
        HPoint::normalize(l * (1.0 / q) + self.scaled_lift * 0.5)
    }
}

/// The horoball with asymptotic centre `y` and asymptotic curvature `omega`
/// (chart `z` at finite points, `1/z` at infinity).
pub fn horoball_make(y: IdealPoint, omega: f64) -> Result<Horoball> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(GeomError::Degenerate(format!(
            "asymptotic curvature {omega} must be positive"
        )));
    }
    Ok(Horoball {
        centre: y,
        scaled_lift: ideal_lift(y) * (0.5 * omega.sqrt()),
    })
}

pub fn horoball_contains(b: &Horoball, x: &HPoint) -> Membership {
    horoball_contains_with(b, x, &Tolerances::default())
}

pub fn horoball_contains_with(b: &Horoball, x: &HPoint, tol: &Tolerances) -> Membership {
    let v = b.level(x);
    if v > tol.boundary {
        Membership::Interior
    } else if v < -tol.boundary {
        Membership::Exterior
    } else {
        Membership::Boundary
    }
}

/// The largest horoball centred at `y` inside the half-space bounded by `D`.
///
/// Writing `ℓ_B = λ ℓ(y)`, the supremum of `⟨x, ℓ_B⟩` over the plane `∂H` is
/// `−λ |⟨ℓ(y), N⟩|`, so tangency forces `λ = 1/|⟨ℓ(y), N⟩|`.
pub fn inscribed_horoball(disk: &OrientedDisk, y: IdealPoint) -> Result<Horoball> {
    if disk.contains(y) != Membership::Interior {
        return Err(GeomError::NotInterior);
    }
    let l = ideal_lift(y);
    let s = l.inner(&disk.pole());
    Ok(Horoball {
        centre: y,
        scaled_lift: l * (-1.0 / s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::{disk_area_form, disk_from_circle, disk_from_line, LineSide, Orientation};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn horoball_at_infinity_is_height_superlevel() {
        let t: f64 = 1.7;
        let b = horoball_make(IdealPoint::Infinity, 4.0 * t * t).unwrap();
        for &(h, expect) in &[
            (1.0, Membership::Exterior),
            (1.7, Membership::Boundary),
            (3.0, Membership::Interior),
        ] {
            let x = HPoint::from_uhs(c(0.4, -2.0), h).unwrap();
            assert_eq!(b.contains(&x), expect, "h = {h}");
        }
    }

    #[test]
    fn scaling_equivariance() {
        let b = horoball_make(IdealPoint::finite(0.0, 0.0), 4.0).unwrap();
        let m = MobiusMap::scaling(c(2.0, 0.0)).unwrap();
        let img = b.image(&m);
        let expect = horoball_make(IdealPoint::finite(0.0, 0.0), 1.0).unwrap();
        assert!((img.scaled_lift() - expect.scaled_lift()).max_abs() < 1e-14);
        assert_abs_diff_eq!(img.curvature(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn calibration_through_basepoint() {
        let b = horoball_make(IdealPoint::finite(0.0, 0.0), 4.0).unwrap();
        assert_eq!(b.contains(&HPoint::basepoint()), Membership::Boundary);
        let away = HPoint::from_uhs(c(0.0, 0.0), 1f64.exp()).unwrap();
        assert_eq!(b.contains(&away), Membership::Exterior);
        let toward = HPoint::from_uhs(c(0.0, 0.0), (-5f64).exp()).unwrap();
        assert_eq!(b.contains(&toward), Membership::Interior);
        assert!(horoball_make(IdealPoint::Infinity, 0.0).is_err());
    }

    #[test]
    fn inscribed_examples() {
        let unit = disk_from_circle(c(0.0, 0.0), 1.0, Orientation::Interior).unwrap();
        let b = inscribed_horoball(&unit, IdealPoint::finite(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(b.curvature(), 4.0, epsilon = 1e-14);
        let right = disk_from_line(1.0, 0.0, 0.0, LineSide::Positive).unwrap();
        let b = inscribed_horoball(&right, IdealPoint::finite(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(b.curvature(), 1.0, epsilon = 1e-14);
        let y = IdealPoint::finite(0.2, 0.3);
        assert_abs_diff_eq!(
            inscribed_horoball(&unit, y).unwrap().curvature(),
            disk_area_form(&unit, y).unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(
            inscribed_horoball(&unit, IdealPoint::finite(2.0, 0.0)),
            Err(GeomError::NotInterior)
        );
    }

    #[test]
    fn boundary_point_lies_on_horosphere() {
        let b = horoball_make(IdealPoint::finite(1.0, -1.0), 2.5).unwrap();
        let x = b.boundary_point_towards(IdealPoint::finite(-3.0, 0.5)).unwrap();
        assert!(b.level(&x).abs() < 1e-12);
    }
}
