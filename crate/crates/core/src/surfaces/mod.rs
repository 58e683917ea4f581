//! Explicit convex surfaces in `H³`: equidistants of planes, horospheres and
//! tubes about geodesics, with their fundamental forms, asymptotic Gauss maps
//! and normal offsets.
//!
//! Every family is given by a unit normal field `N` along `e`, both in
//! closed form. With `∂ᵢ` the parameter derivatives,
//!
//! ```text
//! I = ⟨∂ᵢe, ∂ⱼe⟩,   II = ⟨∂ᵢN, ∂ⱼe⟩,   III = ⟨∂ᵢN, ∂ⱼN⟩,   A = I⁻¹ II.
//! ```
//!
//! Offsetting by `t` along the normal gives `e cosh t + N sinh t` with normal
//! `e sinh t + N cosh t`, so offsets are stored rather than recomputed.

mod dual;
pub mod flow;

use nalgebra::{Matrix2, SymmetricEigen};
use num_complex::Complex64;

use crate::disks::{disk_area_form, halfspace_signed_distance, Membership, OrientedDisk};
use crate::ends::{end_height, EndOverDomain};
use crate::error::{GeomError, Result};
use crate::horoball::Horoball;
use crate::kp::{kp_form, FiniteComplementDomain};
use crate::lorentz::{ideal_lift, ideal_point_of_null, HPoint, IdealPoint, MinkowskiVec, MobiusMap};
use crate::schwarzian::{mobius_compose, schwarzian_jet, Jet};

use dual::{dual_lift, DVec, Dual};

pub use flow::{shape_flow, FlowMethod, FlowResult, ShapeState};

/// Parameter point: `(Re z, Im z)` for equidistants and horospheres,
/// `(s, θ)` with Gauss map `e^{s+iθ}` for tubes.
pub type Param = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoroOrientation {
    /// Normal pointing out of the horoball; shape operator `Id`.
    Outward,
    /// Normal pointing into the horoball; shape operator `−Id`.
    Inward,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceFamily {
    /// Points at distance `r` from the plane bounding `H_D`, on the `D` side.
    PlaneEquidistant { disk: OrientedDisk, r: f64 },
    Horosphere {
        ball: Horoball,
        orientation: HoroOrientation,
    },
    /// Points at distance `r` from the geodesic joining `0` and `∞`, moved
    /// into place by the surface's Möbius map.
    Cylinder { r: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitSurface {
    family: SurfaceFamily,
    mobius: MobiusMap,
    offset: f64,
}

impl ExplicitSurface {
    pub fn plane_equidistant(disk: OrientedDisk, r: f64) -> Result<ExplicitSurface> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(GeomError::Degenerate(format!("equidistance {r} must be positive")));
        }
        Ok(ExplicitSurface {
            family: SurfaceFamily::PlaneEquidistant { disk, r },
            mobius: MobiusMap::identity(),
            offset: 0.0,
        })
    }

    pub fn horosphere(ball: Horoball, orientation: HoroOrientation) -> ExplicitSurface {
        ExplicitSurface {
            family: SurfaceFamily::Horosphere { ball, orientation },
            mobius: MobiusMap::identity(),
            offset: 0.0,
        }
    }

    /// Tube of radius `r` about the geodesic from `p` to `q`.
    pub fn cylinder(p: IdealPoint, q: IdealPoint, r: f64) -> Result<ExplicitSurface> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(GeomError::Degenerate(format!("tube radius {r} must be positive")));
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let m = match (p, q) {
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => MobiusMap::new(q, p, one, one)?,
            (IdealPoint::Finite(p), IdealPoint::Infinity) => MobiusMap::translation(p),
            (IdealPoint::Infinity, IdealPoint::Finite(q)) => MobiusMap::new(q, one, one, zero)?,
            _ => return Err(GeomError::Degenerate("axis endpoints coincide".into())),
        };
        Ok(ExplicitSurface {
            family: SurfaceFamily::Cylinder { r },
            mobius: m,
            offset: 0.0,
        })
    }

    #[inline]
    pub fn family(&self) -> &SurfaceFamily {
        &self.family
    }

    #[inline]
    pub fn mobius(&self) -> &MobiusMap {
        &self.mobius
    }

    #[inline]
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The image under the isometry induced by `m`.
    pub fn image(&self, m: &MobiusMap) -> ExplicitSurface {
        ExplicitSurface {
            mobius: m.compose(&self.mobius),
            ..self.clone()
        }
    }

    /// The parallel surface at signed distance `t` along the normal. Its
    /// Gauss map is unchanged.
    pub fn offset_by(&self, t: f64) -> ExplicitSurface {
        ExplicitSurface {
            offset: self.offset + t,
            ..self.clone()
        }
    }

    /// `(e, N)` with first derivatives.
    fn frame(&self, u: Param) -> Result<(DVec, DVec)> {
        let (a, b) = (Dual::param(u[0], 0), Dual::param(u[1], 1));
        let (e, n) = match &self.family {
            SurfaceFamily::PlaneEquidistant { disk, r } => {
                let n0 = DVec::constant(&disk.pole());
                let l = dual_lift(a, b);
                let s = l.inner(&n0);
                if !(s.v < -1e-12 * l.0[3].v) {
                    return Err(GeomError::ChartBoundary);
                }
                let y = n0.add(&l.scale(Dual::constant(-1.0) / s));
                let (c, sh) = (Dual::constant(r.cosh()), Dual::constant(r.sinh()));
                (y.scale(c).sub(&n0.scale(sh)), y.scale(sh).sub(&n0.scale(c)))
            }
            SurfaceFamily::Horosphere { ball, orientation } => {
                let lb = DVec::constant(&ball.scaled_lift());
                let l = dual_lift(a, b);
                let q = -l.inner(&lb);
                if !(q.v > 1e-12 * l.0[3].v * lb.0[3].v) {
                    return Err(GeomError::ChartBoundary);
                }
                let lq = l.scale(Dual::constant(1.0) / q);
                let half = lb.scale(Dual::constant(0.5));
                let e = lq.add(&half);
                let n = lq.sub(&half);
                match orientation {
                    HoroOrientation::Outward => (e, n),
                    HoroOrientation::Inward => (e, n.scale(Dual::constant(-1.0))),
                }
            }
            SurfaceFamily::Cylinder { r } => {
                let zero = Dual::constant(0.0);
                let axis = DVec([zero, zero, -a.sinh(), a.cosh()]);
                let ring = DVec([b.cos(), b.sin(), zero, zero]);
                let (c, sh) = (Dual::constant(r.cosh()), Dual::constant(r.sinh()));
                (axis.scale(c).add(&ring.scale(sh)), axis.scale(sh).add(&ring.scale(c)))
            }
        };
        let (e, n) = if self.offset != 0.0 {
            let (c, s) = (Dual::constant(self.offset.cosh()), Dual::constant(self.offset.sinh()));
            (e.scale(c).add(&n.scale(s)), e.scale(s).add(&n.scale(c)))
        } else {
            (e, n)
        };
        let l = self.mobius.lift().0;
        Ok((e.transform(&l), n.transform(&l)))
    }

    /// The point `e(u)` and its unit normal.
    pub fn point(&self, u: Param) -> Result<(HPoint, MinkowskiVec)> {
        let (e, n) = self.frame(u)?;
        Ok((HPoint::normalize(e.value())?, n.value()))
    }

    /// The set of points of `Ĉ` swept out by the Gauss map.
    pub fn gauss_image(&self) -> Result<GaussImage> {
        let m = &self.mobius;
        Ok(match &self.family {
            SurfaceFamily::PlaneEquidistant { disk, .. } => GaussImage::Disk(disk.image(m)),
            SurfaceFamily::Horosphere {
                ball,
                orientation: HoroOrientation::Outward,
            } => GaussImage::Punctured(FiniteComplementDomain::new(vec![m.apply(ball.centre())])?),
            SurfaceFamily::Horosphere { .. } => return Err(GeomError::CriticalPoint),
            SurfaceFamily::Cylinder { .. } => GaussImage::Punctured(FiniteComplementDomain::new(vec![
                m.apply(IdealPoint::finite(0.0, 0.0)),
                m.apply(IdealPoint::Infinity),
            ])?),
        })
    }

    /// The Gauss map as a holomorphic function of `w = u₀ + i u₁`, expanded
    /// to `order`.
    pub fn gauss_jet(&self, u: Param, order: usize) -> Result<Jet> {
        let w = Jet::variable(Complex64::new(u[0], u[1]), order);
        let base = match &self.family {
            SurfaceFamily::Cylinder { .. } => w.exp(),
            SurfaceFamily::Horosphere {
                orientation: HoroOrientation::Inward,
                ball,
            } => {
                let c = ball.centre().as_finite().ok_or(GeomError::CriticalPoint)?;
                Jet::constant(w.base, c, order)
            }
            _ => w,
        };
        mobius_compose(&self.mobius, &base)
    }
}

/// Gauss image of one of the explicit families.
#[derive(Clone, Debug, PartialEq)]
pub enum GaussImage {
    Disk(OrientedDisk),
    Punctured(FiniteComplementDomain),
}

impl GaussImage {
    /// Kulkarni-Pinkall density at `x` (for a disk, its Poincaré density).
    pub fn kp_density(&self, x: IdealPoint) -> Result<f64> {
        match self {
            GaussImage::Disk(d) => {
                if d.contains(x) != Membership::Interior {
                    return Err(GeomError::PointInComplement);
                }
                disk_area_form(d, x)
            }
            GaussImage::Punctured(dom) => kp_form(dom, x),
        }
    }

    /// Largest distance from `p` to the boundary of a half-space whose ideal
    /// disk lies in the image; `None` when this is unbounded.
    pub fn max_test_distance(&self, p: &HPoint) -> Result<Option<f64>> {
        match self {
            GaussImage::Disk(d) => Ok(Some(halfspace_signed_distance(d, p))),
            GaussImage::Punctured(dom) if dom.complement().len() >= 2 => {
                Ok(Some(end_height(&EndOverDomain::new(dom.clone())?, p)))
            }
            GaussImage::Punctured(_) => Ok(None),
        }
    }
}

/// Fundamental forms, shape operator and extrinsic curvature at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceData {
    pub i: Matrix2<f64>,
    pub ii: Matrix2<f64>,
    pub iii: Matrix2<f64>,
    pub a: Matrix2<f64>,
    pub k: f64,
}

impl SurfaceData {
    /// Principal curvatures in increasing order.
    pub fn principal_curvatures(&self) -> [f64; 2] {
        let tr = self.a.trace();
        let disc = (tr * tr / 4.0 - self.k).max(0.0).sqrt();
        [tr / 2.0 - disc, tr / 2.0 + disc]
    }

    /// Whether the second fundamental form is positive definite.
    pub fn is_isc(&self) -> bool {
        self.ii[(0, 0)] > 0.0 && self.ii.determinant() > 0.0
    }
}

fn gram(a: &DVec, b: &DVec) -> Matrix2<f64> {
    Matrix2::from_fn(|i, j| a.partial(i).inner(&b.partial(j)))
}

pub fn surface_forms(s: &ExplicitSurface, u: Param) -> Result<SurfaceData> {
    let (e, n) = s.frame(u)?;
    let i = gram(&e, &e);
    let ii = gram(&n, &e);
    let iii = gram(&n, &n);
    let inv = i
        .try_inverse()
        .ok_or_else(|| GeomError::Degenerate("first fundamental form is singular".into()))?;
    let a = inv * ii;
    Ok(SurfaceData {
        i,
        ii,
        iii,
        a,
        k: a.determinant(),
    })
}

/// Horizon of the unit normal at `e(u)`.
pub fn surface_gauss_map(s: &ExplicitSurface, u: Param) -> Result<IdealPoint> {
    let (e, n) = s.frame(u)?;
    ideal_point_of_null(&(e.value() + n.value()))
}

/// The point `exp(t N(u))` and the first fundamental form of the offset
/// surface, `cosh²t I + 2 cosh t sinh t II + sinh²t III`.
pub fn surface_normal_offset(s: &ExplicitSurface, t: f64, u: Param) -> Result<(HPoint, Matrix2<f64>)> {
    let f = surface_forms(s, u)?;
    let (e, n) = s.point(u)?;
    let (c, sh) = (t.cosh(), t.sinh());
    let point = HPoint::normalize(e.vec() * c + n * sh)?;
    Ok((point, f.i * (c * c) + f.ii * (2.0 * c * sh) + f.iii * (sh * sh)))
}

/// `I + 2II + III`.
pub fn surface_horospherical_metric(s: &ExplicitSurface, u: Param) -> Result<Matrix2<f64>> {
    let f = surface_forms(s, u)?;
    Ok(f.i + f.ii * 2.0 + f.iii)
}

/// Pullback of the round metric of the unit sphere by the Gauss map.
pub fn gauss_spherical_metric(s: &ExplicitSurface, u: Param) -> Result<Matrix2<f64>> {
    let (e, n) = s.frame(u)?;
    let null = e.add(&n);
    let w = null.0[3];
    let sphere: [Dual; 3] = [null.0[0] / w, null.0[1] / w, null.0[2] / w];
    Ok(Matrix2::from_fn(|i, j| sphere.iter().map(|c| c.d[i] * c.d[j]).sum()))
}

/// Pullback by the Gauss map of the Kulkarni-Pinkall metric of its image.
pub fn gauss_kp_metric(s: &ExplicitSurface, u: Param) -> Result<Matrix2<f64>> {
    let (e, n) = s.frame(u)?;
    let null = e.add(&n);
    let den = null.0[3] + null.0[2];
    if den.v.abs() <= 1e-12 * null.0[3].v {
        return Err(GeomError::ChartBoundary);
    }
    let (x, y) = (null.0[0] / den, null.0[1] / den);
    let density = s.gauss_image()?.kp_density(IdealPoint::finite(x.v, y.v))?;
    Ok(Matrix2::from_fn(|i, j| density * (x.d[i] * x.d[j] + y.d[i] * y.d[j])))
}

/// Generalized eigenvalues of `g` relative to the positive definite `h`.
fn relative_eigenvalues(g: &Matrix2<f64>, h: &Matrix2<f64>) -> Result<[f64; 2]> {
    let chol = h
        .cholesky()
        .ok_or_else(|| GeomError::Degenerate("reference form is not positive definite".into()))?;
    let linv = chol.l().try_inverse().expect("invertible Cholesky factor");
    let m = linv * g * linv.transpose();
    let eig = SymmetricEigen::new((m + m.transpose()) * 0.5).eigenvalues;
    Ok([eig[0].min(eig[1]), eig[0].max(eig[1])])
}

/// `λ_max/λ_min − 1` for the eigenvalues of the Gauss-map spherical metric
/// relative to `I + 2II + III`; zero exactly when the two are conformal.
pub fn conformality_defect(s: &ExplicitSurface, u: Param) -> Result<f64> {
    let h = surface_horospherical_metric(s, u)?;
    let g = gauss_spherical_metric(s, u)?;
    let [lo, hi] = relative_eigenvalues(&g, &h)?;
    if !(lo > 0.0) {
        return Err(GeomError::Degenerate("Gauss map is not an immersion".into()));
    }
    Ok(hi / lo - 1.0)
}

/// Largest eigenvalue of the pulled-back Kulkarni-Pinkall metric relative to
/// `I + 2II + III`; at most 1 exactly when `g_KP ≤ I + 2II + III`.
pub fn kp_metric_ratio(s: &ExplicitSurface, u: Param) -> Result<f64> {
    let h = surface_horospherical_metric(s, u)?;
    let g = gauss_kp_metric(s, u)?;
    Ok(relative_eigenvalues(&g, &h)?[1])
}

/// Schwarzian of the Gauss map in the holomorphic parametrization.
pub fn surface_schwarzian(s: &ExplicitSurface, u: Param, order: usize) -> Result<Jet> {
    schwarzian_jet(&s.gauss_jet(u, order.max(3))?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AprioriSample {
    pub param: Param,
    pub gauss: IdealPoint,
    pub curvature: f64,
    /// `sup d(e(u), ∂H_D)` over test disks `D` in the Gauss image, or `None`
    /// when unbounded.
    pub test_distance: Option<f64>,
    /// `⟨e(u), ℓ_B⟩ + 1` for the horoball `B` centred at the Gauss image with
    /// the Kulkarni-Pinkall density as asymptotic curvature; `≥ 0` inside
    /// the closed horoball.
    pub horoball_level: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AprioriReport {
    pub r: f64,
    pub samples: Vec<AprioriSample>,
    /// Every sample has `K ≤ tanh² r`.
    pub curvature_hypothesis: bool,
    /// Largest `d − r`, over samples where the distance is bounded.
    pub max_distance_excess: f64,
    pub min_horoball_level: f64,
    pub distance_bound_holds: bool,
    pub horoball_bound_holds: bool,
}

/// Slack of the a priori checks.
pub const APRIORI_TOL: f64 = 1e-8;

/// Evaluates the distance and horoball bounds at each sample.
pub fn surface_apriori_check(s: &ExplicitSurface, samples: &[Param], r: f64) -> Result<AprioriReport> {
    let image = s.gauss_image()?;
    let bound = r.tanh().powi(2);
    let mut out = Vec::with_capacity(samples.len());
    for &u in samples {
        let data = surface_forms(s, u)?;
        if !data.is_isc() {
            return Err(GeomError::Degenerate(format!(
                "second fundamental form is not positive at {u:?}"
            )));
        }
        let (p, _) = s.point(u)?;
        let gauss = surface_gauss_map(s, u)?;
        let omega = image.kp_density(gauss)?;
        let lb = ideal_lift(gauss) * (0.5 * omega.sqrt());
        out.push(AprioriSample {
            param: u,
            gauss,
            curvature: data.k,
            test_distance: image.max_test_distance(&p)?,
            horoball_level: p.vec().inner(&lb) + 1.0,
        });
    }
    let max_excess = out
        .iter()
        .filter_map(|x| x.test_distance.map(|d| d - r))
        .fold(f64::NEG_INFINITY, f64::max);
    let min_level = out.iter().map(|x| x.horoball_level).fold(f64::INFINITY, f64::min);
    Ok(AprioriReport {
        r,
        curvature_hypothesis: out.iter().all(|x| x.curvature <= bound + APRIORI_TOL),
        distance_bound_holds: out
            .iter()
            .all(|x| x.test_distance.is_some_and(|d| d <= r + APRIORI_TOL)),
        horoball_bound_holds: min_level >= -APRIORI_TOL,
        max_distance_excess: max_excess,
        min_horoball_level: min_level,
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::{disk_from_circle, Orientation};
    use crate::horoball::horoball_make;
    use approx::assert_abs_diff_eq;

    fn unit_disk() -> OrientedDisk {
        disk_from_circle(Complex64::new(0.0, 0.0), 1.0, Orientation::Interior).unwrap()
    }

    fn close(a: &Matrix2<f64>, b: &Matrix2<f64>, tol: f64) -> bool {
        (a - b).abs().max() <= tol * (1.0 + b.abs().max())
    }

    #[test]
    fn equidistant_forms_and_centre() {
        let r = 0.7;
        let s = ExplicitSurface::plane_equidistant(unit_disk(), r).unwrap();
        let f = surface_forms(&s, [0.2, -0.3]).unwrap();
        assert!(close(&f.a, &(Matrix2::identity() * r.tanh()), 1e-12));
        assert_abs_diff_eq!(f.k, r.tanh().powi(2), epsilon = 1e-12);
        let (p, _) = s.point([0.0, 0.0]).unwrap();
        let (z, h) = p.to_uhs();
        assert!(z.norm() < 1e-14);
        assert_abs_diff_eq!(h, (-r).exp(), epsilon = 1e-14);
        let g = surface_gauss_map(&s, [0.2, -0.3]).unwrap();
        assert!(g.chordal_distance(&IdealPoint::finite(0.2, -0.3)) < 1e-13);
        assert_eq!(surface_forms(&s, [1.5, 0.0]), Err(GeomError::ChartBoundary));
    }

    #[test]
    fn horosphere_and_cylinder_curvatures() {
        let b = horoball_make(IdealPoint::Infinity, 4.0).unwrap();
        let s = ExplicitSurface::horosphere(b, HoroOrientation::Outward);
        let f = surface_forms(&s, [0.4, 2.0]).unwrap();
        assert!(close(&f.a, &Matrix2::identity(), 1e-12));
        let (p, _) = s.point([0.4, 2.0]).unwrap();
        assert_abs_diff_eq!(p.to_uhs().1, 1.0, epsilon = 1e-12);
        let g = surface_gauss_map(&s, [0.4, 2.0]).unwrap();
        assert!(g.chordal_distance(&IdealPoint::finite(0.4, 2.0)) < 1e-13);

        let r = 0.6;
        let c = ExplicitSurface::cylinder(IdealPoint::finite(0.0, 0.0), IdealPoint::Infinity, r).unwrap();
        let f = surface_forms(&c, [0.3, 1.0]).unwrap();
        let [k0, k1] = f.principal_curvatures();
        assert_abs_diff_eq!(k0, r.tanh(), epsilon = 1e-12);
        assert_abs_diff_eq!(k1, 1.0 / r.tanh(), epsilon = 1e-12);
        assert_abs_diff_eq!(f.k, 1.0, epsilon = 1e-12);
        // Gauss map h cosh r e^{iθ}
        let (p, _) = c.point([0.3, 1.0]).unwrap();
        let h = p.to_uhs().1;
        let g = surface_gauss_map(&c, [0.3, 1.0]).unwrap().as_finite().unwrap();
        assert!((g - Complex64::from_polar(h * r.cosh(), 1.0)).norm() < 1e-12);
    }

    #[test]
    fn schwarzians_of_families() {
        let b = horoball_make(IdealPoint::Infinity, 1.0).unwrap();
        let h = ExplicitSurface::horosphere(b, HoroOrientation::Outward);
        assert!(surface_schwarzian(&h, [0.1, 0.2], 6).unwrap().max_abs() < 1e-12);
        let c = ExplicitSurface::cylinder(IdealPoint::finite(1.0, 0.0), IdealPoint::finite(-1.0, 2.0), 0.4).unwrap();
        let s = surface_schwarzian(&c, [0.3, 0.5], 6).unwrap();
        assert!((s.value() + 0.5).norm() < 1e-10);
        let inward = ExplicitSurface::horosphere(b, HoroOrientation::Inward);
        assert!(surface_schwarzian(&inward, [0.0, 0.0], 6).is_err());
    }

    #[test]
    fn apriori_on_equidistant() {
        let r = 0.5;
        let s = ExplicitSurface::plane_equidistant(unit_disk(), r).unwrap();
        let rep = surface_apriori_check(&s, &[[0.0, 0.0], [0.5, 0.3]], r).unwrap();
        assert!(rep.curvature_hypothesis && rep.distance_bound_holds && rep.horoball_bound_holds);
        assert_abs_diff_eq!(rep.max_distance_excess, 0.0, epsilon = 1e-12);
        let pushed = ExplicitSurface::plane_equidistant(unit_disk(), r + 0.05).unwrap();
        let rep = surface_apriori_check(&pushed, &[[0.0, 0.0]], r).unwrap();
        assert!(!rep.distance_bound_holds);
        assert_abs_diff_eq!(rep.max_distance_excess, 0.05, epsilon = 1e-12);
    }
}
