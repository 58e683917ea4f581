mod common;

use common::*;
use hyperend::lorentz::{IdealPoint, MinkowskiVec};
use hyperend::surfaces::flow::principal_flow;
use hyperend::surfaces::{
    gauss_kp_metric, gauss_spherical_metric, kp_metric_ratio, shape_flow, FlowMethod, ShapeState,
};
use hyperend::*;
use nalgebra::{Matrix2, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Equidistant(f64),
    Outward,
    Inward,
    Tube(f64),
}

/// A random member of one of the explicit families, moved by a random
/// isometry half of the time.
fn surface<R: Rng>(g: &mut R) -> (ExplicitSurface, Kind) {
    let (s, kind) = match g.random_range(0..4) {
        0 | 1 => {
            let r = g.random_range(0.1..2.0);
            let (_, _, _, d) = circle_disk(g);
            (ExplicitSurface::plane_equidistant(d, r).unwrap(), Kind::Equidistant(r))
        }
        2 => {
            let b = horoball_make(ideal(g), g.random_range(-2.0f64..2.0).exp()).unwrap();
            if g.random_bool(0.8) {
                (ExplicitSurface::horosphere(b, HoroOrientation::Outward), Kind::Outward)
            } else {
                (ExplicitSurface::horosphere(b, HoroOrientation::Inward), Kind::Inward)
            }
        }
        _ => {
            let r = g.random_range(0.1..2.0);
            let ends = separated_points(g, 2, 0.2);
            (ExplicitSurface::cylinder(ends[0], ends[1], r).unwrap(), Kind::Tube(r))
        }
    };
    let s = if g.random_bool(0.5) { s.image(&mobius(g)) } else { s };
    (s, kind)
}

/// A parameter point where the surface's forms are defined.
fn param<R: Rng>(g: &mut R, s: &ExplicitSurface, kind: Kind) -> Option<[f64; 2]> {
    for _ in 0..50 {
        let u = match kind {
            Kind::Tube(_) => [g.random_range(-2.0..2.0), g.random_range(0.0..std::f64::consts::TAU)],
            _ => {
                let z = complex(g, 3.0);
                [z.re, z.im]
            }
        };
        if let Ok(f) = surface_forms(s, u) {
            // stay off the chart boundary, where the forms blow up
            if f.i.abs().max() < 1e4 && f.i.determinant() > 1e-6 {
                return Some(u);
            }
        }
    }
    None
}

fn samples<R: Rng>(g: &mut R, n: usize) -> Vec<(ExplicitSurface, Kind, [f64; 2])> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (s, kind) = surface(g);
        if let Some(u) = param(g, &s, kind) {
            out.push((s, kind, u));
        }
    }
    out
}

fn mat_close(a: &Matrix2<f64>, b: &Matrix2<f64>, tol: f64) -> bool {
    (a - b).abs().max() <= tol * (1.0 + a.abs().max().max(b.abs().max()))
}

/// Generalized eigenvalues of `g` relative to the positive definite `h`.
fn relative_eigs(g: &Matrix2<f64>, h: &Matrix2<f64>) -> [f64; 2] {
    let l = h.cholesky().unwrap().l().try_inverse().unwrap();
    let m = l * g * l.transpose();
    let e = SymmetricEigen::new((m + m.transpose()) * 0.5).eigenvalues;
    [e[0].min(e[1]), e[0].max(e[1])]
}

fn sorted_eigs(a: &Matrix2<f64>) -> [f64; 2] {
    let tr = a.trace();
    let disc = (tr * tr / 4.0 - a.determinant()).max(0.0).sqrt();
    [tr / 2.0 - disc, tr / 2.0 + disc]
}

#[test]
fn form_identities_and_principal_curvatures() {
    let mut g = rng(61);
    for (s, kind, u) in samples(&mut g, 500) {
        let f = surface_forms(&s, u).unwrap();
        assert!(mat_close(&f.ii, &(f.i * f.a), 1e-9));
        assert!(mat_close(&f.iii, &(f.i * f.a * f.a), 1e-9), "{kind:?} {u:?}");
        assert!(mat_close(&f.ii, &f.ii.transpose(), 1e-9));
        assert!((f.k - f.a.determinant()).abs() < 1e-12);
        let [k0, k1] = f.principal_curvatures();
        let expect = match kind {
            Kind::Equidistant(r) => [r.tanh(), r.tanh()],
            Kind::Outward => [1.0, 1.0],
            Kind::Inward => [-1.0, -1.0],
            Kind::Tube(r) => [r.tanh(), 1.0 / r.tanh()],
        };
        assert!(
            (k0 - expect[0]).abs() < 1e-7 && (k1 - expect[1]).abs() < 1e-7,
            "{kind:?}: {k0} {k1}"
        );
    }
}

/// Central difference of the point and normal in direction `i`.
fn partials(s: &ExplicitSurface, u: [f64; 2], i: usize, h: f64) -> (MinkowskiVec, MinkowskiVec) {
    let mut up = u;
    let mut dn = u;
    up[i] += h;
    dn[i] -= h;
    let (ep, np) = s.point(up).unwrap();
    let (em, nm) = s.point(dn).unwrap();
    ((ep.vec() - em.vec()) * (0.5 / h), (np - nm) * (0.5 / h))
}

#[test]
fn forms_match_finite_differences() {
    let mut g = rng(62);
    for (s, kind, u) in samples(&mut g, 300) {
        let f = surface_forms(&s, u).unwrap();
        let h = 1e-5;
        let d = [partials(&s, u, 0, h), partials(&s, u, 1, h)];
        let fd = |a: usize, b: usize| {
            Matrix2::from_fn(|i, j| {
                let x = if a == 0 { d[i].0 } else { d[i].1 };
                let y = if b == 0 { d[j].0 } else { d[j].1 };
                x.inner(&y)
            })
        };
        assert!(mat_close(&fd(0, 0), &f.i, 1e-5), "{kind:?} I");
        assert!(mat_close(&fd(1, 0), &f.ii, 1e-5), "{kind:?} II");
        assert!(mat_close(&fd(1, 1), &f.iii, 1e-5), "{kind:?} III");
        // the normal is a unit vector orthogonal to the surface
        let (p, n) = s.point(u).unwrap();
        assert!((n.norm_sq() - 1.0).abs() < 1e-9 * n.max_abs().powi(2));
        assert!(p.vec().inner(&n).abs() < 1e-9 * n.max_abs() * p.vec().max_abs());
    }
}

#[test]
fn normal_offsets_match_the_offset_surface() {
    let mut g = rng(63);
    for (s, kind, u) in samples(&mut g, 300) {
        let t = g.random_range(0.0..2.0);
        let (p, it) = surface_normal_offset(&s, t, u).unwrap();
        let moved = s.offset_by(t);
        let (q, _) = moved.point(u).unwrap();
        assert!(vec_close(&p.vec(), &q.vec(), 1e-8), "{kind:?}");
        let direct = surface_forms(&moved, u).unwrap();
        assert!(mat_close(&it, &direct.i, 1e-8), "{kind:?}: {it} vs {}", direct.i);
        // −⟨e, e_t⟩ = cosh t
        let e = s.point(u).unwrap().0.vec();
        assert!((-e.inner(&q.vec()) - t.cosh()).abs() < 1e-12 * e.max_abs() * q.vec().max_abs());
        // the Gauss map does not change
        let (g0, g1) = (surface_gauss_map(&s, u).unwrap(), surface_gauss_map(&moved, u).unwrap());
        assert!(g0.chordal_distance(&g1) < 1e-8);
    }
    // closed families
    let d = disk_from_circle(c(0.0, 0.0), 1.0, Orientation::Interior).unwrap();
    let a = ExplicitSurface::plane_equidistant(d, 0.4).unwrap().offset_by(0.3);
    let b = ExplicitSurface::plane_equidistant(d, 0.7).unwrap();
    let ball = horoball_make(IdealPoint::Infinity, 1.0).unwrap();
    let h = ExplicitSurface::horosphere(ball, HoroOrientation::Outward);
    for u in [[0.1, 0.2], [-0.5, 0.3], [0.0, -0.8]] {
        assert!(mat_close(
            &surface_forms(&a, u).unwrap().i,
            &surface_forms(&b, u).unwrap().i,
            1e-12
        ));
        let t = 0.8;
        let (_, it) = surface_normal_offset(&h, t, u).unwrap();
        assert!(mat_close(
            &it,
            &(surface_forms(&h, u).unwrap().i * (2.0 * t).exp()),
            1e-12
        ));
    }
}

#[test]
fn offsets_follow_the_shape_flow() {
    let mut g = rng(64);
    for (s, kind, u) in samples(&mut g, 300) {
        if kind == Kind::Inward {
            continue;
        }
        let [k0, k1] = surface_forms(&s, u).unwrap().principal_curvatures();
        let t = g.random_range(0.0..3.0);
        let moved = sorted_eigs(&surface_forms(&s.offset_by(t), u).unwrap().a);
        let flowed = shape_flow(&ShapeState::diagonal(k0, k1), t, FlowMethod::ClosedForm).unwrap();
        let expect = flowed.state.principal_curvatures();
        for i in 0..2 {
            assert!((moved[i] - expect[i]).abs() < 1e-7, "{kind:?}: {moved:?} vs {expect:?}");
        }
    }
}

#[test]
fn quasicompleteness_sandwich() {
    let mut g = rng(65);
    for (s, _, u) in samples(&mut g, 300) {
        let f = surface_forms(&s, u).unwrap();
        if !f.is_isc() {
            continue;
        }
        let base = f.i + f.iii;
        for t in [0.1, 0.5, 1.0, 2.0, 3.0] {
            let (_, it) = surface_normal_offset(&s, t, u).unwrap();
            let [lo, hi] = relative_eigs(&it, &base);
            assert!(lo >= t.sinh().powi(2) * (1.0 - 1e-9));
            assert!(hi <= 2.0 * t.cosh().powi(2) * (1.0 + 1e-9));
        }
    }
}

#[test]
fn gauss_map_is_conformal_for_the_horospherical_metric() {
    let mut g = rng(66);
    let mut done = 0;
    for (s, kind, u) in samples(&mut g, 400) {
        if kind == Kind::Inward {
            continue;
        }
        let defect = conformality_defect(&s, u).unwrap();
        assert!(defect.abs() <= 1e-7, "{kind:?}: {defect}");
        done += 1;
    }
    assert!(done >= 200);
}

#[test]
fn kp_metric_is_below_the_horospherical_metric() {
    let mut g = rng(67);
    let mut done = 0;
    for (s, kind, u) in samples(&mut g, 400) {
        if kind == Kind::Inward {
            continue;
        }
        match kp_metric_ratio(&s, u) {
            Ok(ratio) => {
                assert!(ratio <= 1.0 + 1e-9, "{kind:?}: {ratio}");
                // both families sit at ratio e^{-2r}: I + 2II + III = e^{2r}·(KP metric)
                if let Kind::Equidistant(r) | Kind::Tube(r) = kind {
                    assert!((ratio - (-2.0 * r).exp()).abs() < 1e-8, "{kind:?}: {ratio}");
                }
                done += 1;
            }
            Err(GeomError::ChartBoundary) => continue,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(done >= 200);
}

#[test]
fn equidistant_horospherical_metric_is_scaled_poincare() {
    let mut g = rng(68);
    for _ in 0..200 {
        let (center, radius, _, d) = circle_disk(&mut g);
        let r = g.random_range(0.1..2.0);
        let s = ExplicitSurface::plane_equidistant(d, r).unwrap();
        let z = if d.contains(IdealPoint::Finite(center)) == Membership::Interior {
            point_inside(&mut g, center, radius, 0.9)
        } else {
            center
                + Complex64::from_polar(
                    radius * g.random_range(1.1..3.0),
                    g.random_range(0.0..std::f64::consts::TAU),
                )
        };
        let h = surface_horospherical_metric(&s, [z.re, z.im]).unwrap();
        let w = disk_area_form(&d, IdealPoint::Finite(z)).unwrap();
        assert!(mat_close(&h, &(Matrix2::identity() * ((2.0 * r).exp() * w)), 1e-9));
        // the pullbacks through the Gauss map (the identity here)
        let sph = gauss_spherical_metric(&s, [z.re, z.im]).unwrap();
        let expect = 4.0 / (1.0 + z.norm_sqr()).powi(2);
        assert!(mat_close(&sph, &(Matrix2::identity() * expect), 1e-9));
        let kp = gauss_kp_metric(&s, [z.re, z.im]).unwrap();
        assert!(mat_close(&kp, &(Matrix2::identity() * w), 1e-9));
    }
}

#[test]
fn gauss_map_and_points_are_equivariant() {
    let mut g = rng(69);
    for (s, kind, u) in samples(&mut g, 300) {
        let m = mobius(&mut g);
        let moved = s.image(&m);
        let (g0, g1) = (surface_gauss_map(&s, u).unwrap(), surface_gauss_map(&moved, u).unwrap());
        assert!(m.apply(g0).chordal_distance(&g1) < 1e-8, "{kind:?}");
        let (p, _) = s.point(u).unwrap();
        let (q, _) = moved.point(u).unwrap();
        let lp = lorentz::HPoint::normalize(m.lift().apply(&p.vec())).unwrap();
        assert!(vec_close(&lp.vec(), &q.vec(), 1e-8));
        let (f0, f1) = (surface_forms(&s, u).unwrap(), surface_forms(&moved, u).unwrap());
        assert!(mat_close(&f0.i, &f1.i, 1e-8) && mat_close(&f0.ii, &f1.ii, 1e-8));
    }
}

/// A random positive definite state with eigenvalues away from 1 and det < 1.
fn random_state<R: Rng>(g: &mut R) -> ShapeState {
    loop {
        let pick = |g: &mut R| {
            if g.random_bool(0.5) {
                g.random_range(0.05..0.95)
            } else {
                g.random_range(1.05..5.0)
            }
        };
        let (k0, k1) = (pick(g), pick(g));
        if k0 * k1 >= 1.0 {
            continue;
        }
        let th: f64 = g.random_range(0.0..std::f64::consts::PI);
        let r = Matrix2::new(th.cos(), -th.sin(), th.sin(), th.cos());
        let a = r * Matrix2::new(k0, 0.0, 0.0, k1) * r.transpose();
        return ShapeState::new((a + a.transpose()) * 0.5).unwrap();
    }
}

#[test]
fn flow_rk4_matches_closed_form() {
    let mut g = rng(70);
    for _ in 0..100 {
        let a = random_state(&mut g);
        for t in [0.0, 0.3, 1.0, 2.5, 5.0] {
            let exact = shape_flow(&a, t, FlowMethod::ClosedForm).unwrap();
            let rk = shape_flow(&a, t, FlowMethod::Rk4).unwrap();
            assert!((exact.state.matrix() - rk.state.matrix()).abs().max() <= 1e-8);
            assert!((exact.k - rk.k).abs() <= 1e-8);
        }
    }
}

#[test]
fn curvature_is_strictly_trapped() {
    let mut g = rng(71);
    for _ in 0..100 {
        let a = random_state(&mut g);
        let k = a.curvature();
        let mut last = k;
        for i in 1..=50 {
            let t = 0.1 * i as f64;
            let kt = shape_flow(&a, t, FlowMethod::ClosedForm).unwrap().k;
            assert!(kt > k && kt < 1.0, "K_{t} = {kt}, k = {k}");
            assert!(kt > last);
            last = kt;
        }
    }
    // tanh r · Id moves to tanh(r + t) · Id
    for r in [0.1f64, 0.5, 1.0] {
        let a = ShapeState::diagonal(r.tanh(), r.tanh());
        let kt = shape_flow(&a, 0.7, FlowMethod::ClosedForm).unwrap().k;
        assert!((kt - (r + 0.7f64).tanh().powi(2)).abs() < 1e-14);
    }
}

#[test]
fn tube_family_keeps_unit_curvature() {
    for r in [0.1f64, 0.4, 1.0, 2.0] {
        let a = ShapeState::diagonal(r.tanh(), 1.0 / r.tanh());
        for i in 0..=50 {
            let t = 0.1 * i as f64;
            for m in [FlowMethod::ClosedForm, FlowMethod::Rk4] {
                assert!((shape_flow(&a, t, m).unwrap().k - 1.0).abs() <= 1e-9);
            }
        }
    }
    assert!(matches!(principal_flow(-1.0, 1.0), Err(GeomError::SingularBranch(_))));
    assert!(shape_flow(&ShapeState::diagonal(-2.0, 0.5), 1.0, FlowMethod::Rk4).is_err());
}

#[test]
fn surface_functional_values() {
    let mut g = rng(72);
    for _ in 0..50 {
        let m = mobius(&mut g);
        let u = [g.random_range(-0.5..0.5), g.random_range(-0.5..0.5)];
        let ball = horoball_make(IdealPoint::Infinity, g.random_range(0.5..2.0)).unwrap();
        let horo = ExplicitSurface::horosphere(ball, HoroOrientation::Outward).image(&m);
        if let Ok(s) = surface_schwarzian(&horo, u, 6) {
            assert!(s.max_abs() <= 1e-10, "horosphere {}", s.max_abs());
        }
        let tube = ExplicitSurface::cylinder(
            IdealPoint::finite(0.0, 0.0),
            IdealPoint::Infinity,
            g.random_range(0.1..2.0),
        )
        .unwrap()
        .image(&m);
        if let Ok(s) = surface_schwarzian(&tube, u, 6) {
            assert!((s.coeffs[0] + 0.5).norm() <= 1e-10 && s.coeffs[1..].iter().all(|c| c.norm() <= 1e-10));
        }
        let d = disk_from_circle(c(0.0, 0.0), 1.0, Orientation::Interior).unwrap();
        let eq = ExplicitSurface::plane_equidistant(d, 0.5).unwrap().image(&m);
        if let Ok(s) = surface_schwarzian(&eq, u, 6) {
            assert!(s.max_abs() <= 1e-10);
        }
    }
}

/// Polar grid of `n × n` points inside the disk of radius `rmax`.
fn polar_grid(n: usize, rmax: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rho = rmax * i as f64 / (n - 1) as f64;
            let th = std::f64::consts::TAU * j as f64 / n as f64;
            out.push([rho * th.cos(), rho * th.sin()]);
        }
    }
    out
}

#[test]
fn apriori_bounds_on_equidistants() {
    let d = disk_from_circle(c(0.0, 0.0), 1.0, Orientation::Interior).unwrap();
    let grid = polar_grid(10, 0.9);
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let s = ExplicitSurface::plane_equidistant(d, r).unwrap();
        let rep = surface_apriori_check(&s, &grid, r).unwrap();
        assert_eq!(rep.samples.len(), 100);
        assert!(rep.curvature_hypothesis);
        assert!(rep.horoball_bound_holds, "r = {r}: {}", rep.min_horoball_level);
        assert!(rep.distance_bound_holds);
        // equality at the full disk
        for x in &rep.samples {
            assert!((x.test_distance.unwrap() - r).abs() <= 1e-8);
        }
        // the same surface moved by an isometry
        let m = mobius(&mut rng(73));
        let moved = s.image(&m);
        let rep = surface_apriori_check(&moved, &grid, r).unwrap();
        assert!(rep.horoball_bound_holds && rep.distance_bound_holds);
    }
}

#[test]
fn translated_surface_is_detected() {
    let d = disk_from_circle(c(0.0, 0.0), 1.0, Orientation::Interior).unwrap();
    let grid = polar_grid(10, 0.9);
    for delta in [1e-6, 1e-3, 0.1] {
        let s = ExplicitSurface::plane_equidistant(d, 0.5).unwrap().offset_by(delta);
        let rep = surface_apriori_check(&s, &grid, 0.5).unwrap();
        assert!(!rep.distance_bound_holds);
        assert!((rep.max_distance_excess - delta).abs() < 1e-9);
    }
    // a surface without a Gauss image is rejected
    let ball = horoball_make(IdealPoint::Infinity, 1.0).unwrap();
    let inward = ExplicitSurface::horosphere(ball, HoroOrientation::Inward);
    assert!(surface_apriori_check(&inward, &grid, 0.5).is_err());
}
