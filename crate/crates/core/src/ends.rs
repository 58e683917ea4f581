//! The hyperbolic end `H³ \ K` over `Ĉ \ P`, where `K` is the convex hull of
//! the finite ideal set `P`.
//!
//! The height `h(x) = d(x, K)` is the largest distance from `x` to a plane
//! separating `x` from `K`. Writing such a plane by its de Sitter pole `N`,
//! with `⟨x, N⟩ < 0` and `⟨ℓ(p), N⟩ ≥ 0` on `P`, the distance is
//! `asinh(−⟨x, N⟩)`. At the optimum `x = λN + Σ μᵢ ℓ(pᵢ)` with `μᵢ ≥ 0`; one
//! active point is degenerate (`N` would be null), so the candidates are the
//! planes through an edge `pq` orthogonal to the perpendicular from `x`, and
//! the planes through a face `pqr`.

use crate::error::{GeomError, Result};
use crate::horoball::horoball_make;
use crate::kp::{kp_form, FiniteComplementDomain};
use crate::lorentz::{
    check_unit_tangent, geodesic_point_unchecked, ideal_lift, ideal_point_of_null, HPoint, IdealPoint, MinkowskiVec,
    Tolerances,
};

/// Slack allowed in `⟨ℓ(p), N⟩ ≥ 0` for unit-scaled lifts.
const FEASIBILITY_TOL: f64 = 1e-10;

/// The end over a hyperbolic finite-complement domain.
#[derive(Clone, Debug, PartialEq)]
pub struct EndOverDomain {
    domain: FiniteComplementDomain,
    lifts: Vec<MinkowskiVec>,
}

impl EndOverDomain {
    pub fn new(domain: FiniteComplementDomain) -> Result<EndOverDomain> {
        if domain.complement().len() < 2 {
            return Err(GeomError::NotHyperbolic(crate::kp::kp_classify(&domain).name()));
        }
        let lifts = domain
            .complement()
            .iter()
            .map(|&p| {
                let l = ideal_lift(p);
                l * (1.0 / l[3])
            })
            .collect();
        Ok(EndOverDomain { domain, lifts })
    }

    pub fn from_points(points: Vec<IdealPoint>) -> Result<EndOverDomain> {
        EndOverDomain::new(FiniteComplementDomain::new(points)?)
    }

    #[inline]
    pub fn domain(&self) -> &FiniteComplementDomain {
        &self.domain
    }

    fn feasible(&self, n: &MinkowskiVec) -> bool {
        self.lifts.iter().all(|l| l.inner(n) >= -FEASIBILITY_TOL)
    }
}

/// The plane realizing the height: its pole and the indices of the points of
/// `P` it passes through (an edge or a face of the hull).
#[derive(Clone, Debug, PartialEq)]
pub struct SupportingPlane {
    pub pole: MinkowskiVec,
    pub height: f64,
    pub active: Vec<usize>,
}

fn oriented_pole(x: &HPoint, v: MinkowskiVec) -> Option<MinkowskiVec> {
    let q = v.norm_sq();
    if !(q > 1e-24) {
        return None;
    }
    let n = v * (1.0 / q.sqrt());
    Some(if x.vec().inner(&n) > 0.0 { -n } else { n })
}

/// The optimal separating plane, or `None` when `x ∈ K`.
#[allow(clippy::needless_range_loop)]
pub fn end_supporting_plane(end: &EndOverDomain, x: &HPoint) -> Option<SupportingPlane> {
    let xv = x.vec();
    let ls = &end.lifts;
    let k = ls.len();
    let mut best: Option<SupportingPlane> = None;
    let mut consider = |pole: MinkowskiVec, active: Vec<usize>| {
        let s = xv.inner(&pole);
        if s >= 0.0 || !end.feasible(&pole) {
            return;
        }
        let height = (-s).asinh();
        if best.as_ref().is_none_or(|b| height > b.height) {
            best = Some(SupportingPlane { pole, height, active });
        }
    };
    for i in 0..k {
        for j in i + 1..k {
            let (p, q) = (ls[i], ls[j]);
            let pq = p.inner(&q);
            let v = xv + p * (-xv.inner(&q) / pq) + q * (-xv.inner(&p) / pq);
            if let Some(n) = oriented_pole(x, v) {
                consider(n, vec![i, j]);
            }
            for r in j + 1..k {
                if let Some(n) = oriented_pole(x, MinkowskiVec::orthogonal_to(&p, &q, &ls[r])) {
                    consider(n, vec![i, j, r]);
                }
            }
        }
    }
    best
}

/// `d(x, K)`; zero on and inside the hull.
pub fn end_height(end: &EndOverDomain, x: &HPoint) -> f64 {
    end_supporting_plane(end, x).map_or(0.0, |s| s.height)
}

/// Unit gradient of the height at `x`, as a tangent vector.
pub fn end_height_gradient(end: &EndOverDomain, x: &HPoint) -> Result<MinkowskiVec> {
    let plane = end_supporting_plane(end, x).ok_or(GeomError::InsideHull)?;
    Ok(gradient_from_pole(x, &plane))
}

fn gradient_from_pole(x: &HPoint, plane: &SupportingPlane) -> MinkowskiVec {
    x.tangent_part(&(-plane.pole)) * (1.0 / plane.height.cosh())
}

/// Nearest point of `K` and the ideal endpoint of the vertical line through
/// `x`.
pub fn end_project(end: &EndOverDomain, x: &HPoint) -> Result<(HPoint, IdealPoint)> {
    let plane = end_supporting_plane(end, x).ok_or(GeomError::InsideHull)?;
    Ok(project_on(x, &plane))
}

fn project_on(x: &HPoint, plane: &SupportingPlane) -> (HPoint, IdealPoint) {
    let s = x.vec().inner(&plane.pole);
    let foot = HPoint::normalize(x.vec() - plane.pole * s).expect("timelike foot");
    let ideal = ideal_point_of_null(&(foot.vec() - plane.pole)).expect("non-zero null vector");
    (foot, ideal)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RaySample {
    pub t: f64,
    pub point: HPoint,
    pub height: f64,
    /// Length of the part of the velocity orthogonal to the height gradient.
    pub horizontal_speed: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayTrace {
    pub samples: Vec<RaySample>,
    /// The start velocity had a negative height derivative.
    pub downward_start: bool,
}

/// Samples the geodesic `x cosh t + v sinh t` at `t = 0, dt, 2dt, …, t_max`.
pub fn end_trace_geodesic(end: &EndOverDomain, x: &HPoint, v: &MinkowskiVec, t_max: f64, dt: f64) -> Result<RayTrace> {
    check_unit_tangent(x, v, Tolerances::default().tangent)?;
    if !(dt > 0.0) || !(t_max >= 0.0) {
        return Err(GeomError::Degenerate(format!(
            "bad sampling t_max = {t_max}, dt = {dt}"
        )));
    }
    let start = end_supporting_plane(end, x).ok_or(GeomError::InsideHull)?;
    let downward_start = gradient_from_pole(x, &start).inner(v) < -Tolerances::default().tangent;
    let steps = (t_max / dt + 1e-9).floor() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = i as f64 * dt;
        // Renormalizing would cost ~e^{2t}·ulp; the closed form is already unit.
        let point = geodesic_point_unchecked(x, v, t);
        let (height, horizontal_speed) = match end_supporting_plane(end, &point) {
            Some(plane) => {
                // With a = ⟨x,N⟩, b = ⟨v,N⟩ the vertical speed is −⟨γ′,N⟩/cosh h and
                // ⟨γ,N⟩² − ⟨γ′,N⟩² = a² − b², so no large terms cancel.
                let (a, b) = (x.vec().inner(&plane.pole), v.inner(&plane.pole));
                let horizontal = (1.0 + a * a - b * b).max(0.0).sqrt() / plane.height.cosh();
                (plane.height, horizontal.min(1.0))
            }
            None => (0.0, 1.0),
        };
        samples.push(RaySample {
            t,
            point,
            height,
            horizontal_speed,
        });
    }
    Ok(RayTrace {
        samples,
        downward_start,
    })
}

/// Second central difference of the height along the geodesic tangent to
/// `v`, without checking that `v` is horizontal.
pub fn end_second_difference(end: &EndOverDomain, x: &HPoint, v: &MinkowskiVec, eps: f64) -> Result<f64> {
    check_unit_tangent(x, v, Tolerances::default().tangent)?;
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(GeomError::Degenerate(format!("probe step {eps} outside (0, 0.1]")));
    }
    let h0 = end_height(end, x);
    if h0 <= 0.0 {
        return Err(GeomError::InsideHull);
    }
    let hp = end_height(end, &geodesic_point_unchecked(x, v, eps));
    let hm = end_height(end, &geodesic_point_unchecked(x, v, -eps));
    Ok((hp - 2.0 * h0 + hm) / (eps * eps))
}

/// The Hessian of the height in a horizontal direction `xi`, by a second
/// central difference with step `eps`.
pub fn end_hessian_probe(end: &EndOverDomain, x: &HPoint, xi: &MinkowskiVec, eps: f64) -> Result<f64> {
    check_unit_tangent(x, xi, Tolerances::default().tangent)?;
    let slope = end_height_gradient(end, x)?.inner(xi);
    if slope.abs() > 1e-8 {
        return Err(GeomError::BadTangent(slope));
    }
    end_second_difference(end, x, xi, eps)
}

/// True when the three probe points of [`end_second_difference`] do not all
/// project to the same edge or face of the hull, so the height need not be
/// twice differentiable there.
pub fn end_probe_straddles_ridge(end: &EndOverDomain, x: &HPoint, v: &MinkowskiVec, eps: f64) -> bool {
    let active = |p: &HPoint| end_supporting_plane(end, p).map(|s| s.active);
    let a0 = active(x);
    a0 != active(&geodesic_point_unchecked(x, v, eps)) || a0 != active(&geodesic_point_unchecked(x, v, -eps))
}

/// Whether `x` lies in the open horoball centred at `π_∞(x)` whose asymptotic
/// curvature is the Kulkarni-Pinkall form there.
pub fn end_horoball_check(end: &EndOverDomain, x: &HPoint) -> Result<bool> {
    let (_, y) = end_project(end, x)?;
    let omega = kp_form(&end.domain, y)?;
    let ball = horoball_make(y, omega)?;
    Ok(ball.level(x) > 0.0)
}
