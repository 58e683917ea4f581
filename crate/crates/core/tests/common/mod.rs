//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use hyperend::lorentz::{ideal_lift, HPoint, IdealPoint, MinkowskiVec, MobiusMap};
use hyperend::{disk_from_circle, DiskRelation, Orientation, OrientedDisk};
use nalgebra::{Matrix4, SVD};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

/// A point of the sphere, infinite one time in ten.
pub fn ideal<R: Rng>(rng: &mut R) -> IdealPoint {
    if rng.random_bool(0.1) {
        IdealPoint::Infinity
    } else {
        IdealPoint::Finite(complex(rng, 2.0))
    }
}

/// `n` points pairwise at chordal distance at least `sep`.
pub fn separated_points<R: Rng>(rng: &mut R, n: usize, sep: f64) -> Vec<IdealPoint> {
    let mut out: Vec<IdealPoint> = Vec::with_capacity(n);
    while out.len() < n {
        let p = ideal(rng);
        if out.iter().all(|q| q.chordal_distance(&p) >= sep) {
            out.push(p);
        }
    }
    out
}

pub fn hpoint<R: Rng>(rng: &mut R) -> HPoint {
    let h = rng.random_range(-2.0f64..2.0).exp();
    HPoint::from_uhs(complex(rng, 2.0), h).unwrap()
}

/// A Möbius map with entries of moderate size.
pub fn mobius<R: Rng>(rng: &mut R) -> MobiusMap {
    loop {
        let (a, b, cc, d) = (
            complex(rng, 2.0),
            complex(rng, 2.0),
            complex(rng, 2.0),
            complex(rng, 2.0),
        );
        if (a * d - b * cc).norm() > 0.3 {
            return MobiusMap::new(a, b, cc, d).unwrap();
        }
    }
}

/// A random unit tangent vector at `x`.
pub fn unit_tangent<R: Rng>(rng: &mut R, x: &HPoint) -> MinkowskiVec {
    loop {
        let w = MinkowskiVec::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let t = x.tangent_part(&w);
        let n = t.norm_sq();
        if n > 1e-4 {
            return t * (1.0 / n.sqrt());
        }
    }
}

/// A random circle-bounded disk, with its centre, radius and orientation.
pub fn circle_disk<R: Rng>(rng: &mut R) -> (Complex64, f64, Orientation, OrientedDisk) {
    let center = complex(rng, 2.0);
    let radius = rng.random_range(-1.5f64..1.0).exp();
    let orientation = if rng.random_bool(0.5) {
        Orientation::Interior
    } else {
        Orientation::Exterior
    };
    (
        center,
        radius,
        orientation,
        disk_from_circle(center, radius, orientation).unwrap(),
    )
}

/// A point well inside the disk `{|z − center| < radius}`.
pub fn point_inside<R: Rng>(rng: &mut R, center: Complex64, radius: f64, frac: f64) -> Complex64 {
    let r = radius * frac * rng.random::<f64>().sqrt();
    center + Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Lift normalized to fourth component 1.
pub fn unit_lift(p: IdealPoint) -> MinkowskiVec {
    let l = ideal_lift(p);
    l * (1.0 / l[3])
}

/// Unit spacelike vector orthogonal to three vectors, from the null space of
/// the lowered 3×4 system (independent of the cofactor formula in the crate).
pub fn orthogonal_unit(a: &MinkowskiVec, b: &MinkowskiVec, cc: &MinkowskiVec) -> Option<MinkowskiVec> {
    let lower = |v: &MinkowskiVec| [v[0], v[1], v[2], -v[3]];
    let rows = [lower(a), lower(b), lower(cc), [0.0; 4]];
    let m = Matrix4::from_fn(|i, j| rows[i][j]);
    let svd = SVD::new(m, false, true);
    let vt = svd.v_t?;
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))?;
    let n = MinkowskiVec::new(vt[(k, 0)], vt[(k, 1)], vt[(k, 2)], vt[(k, 3)]);
    let q = n.norm_sq();
    (q > 1e-20).then(|| n * (1.0 / q.sqrt()))
}

/// Pole of `{|z − c| < ρ}` (or its exterior) straight from the circle
/// equation `⟨ℓ(z), N⟩ = (|z − c|² − ρ²)/ρ`.
pub fn circle_pole(center: Complex64, radius: f64, interior: bool) -> MinkowskiVec {
    let s = if interior { 1.0 / radius } else { -1.0 / radius };
    let q = center.norm_sqr() - radius * radius;
    MinkowskiVec::new(-center.re, -center.im, (q - 1.0) / 2.0, -(q + 1.0) / 2.0) * s
}

/// Brute-force Kulkarni-Pinkall density: the largest `−⟨ℓ(x), N⟩` over
/// unit poles avoiding `P`, enumerated over disks through two or three
/// points of `P`. Returns the density and the optimal pole.
pub fn kp_brute_force(points: &[IdealPoint], x: IdealPoint) -> (f64, MinkowskiVec) {
    let lx = ideal_lift(x);
    let ls: Vec<_> = points.iter().map(|&p| unit_lift(p)).collect();
    let feasible = |n: &MinkowskiVec| ls.iter().all(|l| l.inner(n) >= -1e-10);
    let mut best = (0.0f64, MinkowskiVec::zero());
    let mut consider = |n: MinkowskiVec| {
        let n = if lx.inner(&n) > 0.0 { -n } else { n };
        let a = -lx.inner(&n);
        if a > best.0 && feasible(&n) {
            best = (a, n);
        }
    };
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            let (p, q) = (ls[i], ls[j]);
            let pq = p.inner(&q);
            // Projection of ℓ(x) orthogonal to span(p, q).
            let v = lx - p * (lx.inner(&q) / pq) - q * (lx.inner(&p) / pq);
            let nv = v.norm_sq();
            if nv > 1e-24 {
                consider(v * (1.0 / nv.sqrt()));
            }
            for r in ls.iter().skip(j + 1) {
                if let Some(n) = orthogonal_unit(&p, &q, r) {
                    consider(n);
                }
            }
        }
    }
    (4.0 / (best.0 * best.0), best.1)
}

/// Distance from `x` to the convex hull of `P`, by golden-section search over
/// every ideal triangle (and edge) in the Klein model.
pub fn hull_distance_klein(points: &[IdealPoint], x: &HPoint) -> f64 {
    let k = x.to_klein();
    let verts: Vec<[f64; 3]> = points.iter().map(|p| p.sphere_point()).collect();
    let dist = |y: [f64; 3]| -> f64 {
        let dot = k[0] * y[0] + k[1] * y[1] + k[2] * y[2];
        let nk = 1.0 - (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        let ny = 1.0 - (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        if ny <= 0.0 {
            return f64::INFINITY;
        }
        ((1.0 - dot) / (nk * ny).sqrt()).max(1.0).acosh()
    };
    let lerp = |a: [f64; 3], b: [f64; 3], t: f64| {
        [
            a[0] + t * (b[0] - a[0]),
            a[1] + t * (b[1] - a[1]),
            a[2] + t * (b[2] - a[2]),
        ]
    };
    let segment_min = |a: [f64; 3], b: [f64; 3]| golden_min(|t| dist(lerp(a, b, t)));
    let mut best = f64::INFINITY;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            best = best.min(segment_min(verts[i], verts[j]));
            for r in j + 1..verts.len() {
                let (p, q, s) = (verts[i], verts[j], verts[r]);
                best = best.min(golden_min(|a| segment_min(p, lerp(q, s, a))));
            }
        }
    }
    best
}

/// Minimum of a quasiconvex function on `[0, 1]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..70 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Sampled-pole oracle for the height.
///
/// Every unit direction `u` at `x` carries one pole per distance `s`, the
/// plane through `γ_u(s)` orthogonal to the ray, `N = x sinh s + u cosh s`.
/// It is admissible iff `tanh s ≤ ⟨ℓp,u⟩ / −⟨ℓp,x⟩` for all punctures, so each
/// sampled direction yields the farthest admissible pole along it exactly.
/// The best directions are then refined by an adaptive random search.
pub fn height_sampling_oracle<R: Rng>(rng: &mut R, points: &[IdealPoint], x: &HPoint, samples: usize) -> f64 {
    let ls: Vec<_> = points.iter().map(|&p| unit_lift(p)).collect();
    let xv = x.vec();
    let pieces = |u: &MinkowskiVec| ls.iter().map(|l| l.inner(u) / -l.inner(&xv)).collect::<Vec<f64>>();
    let reach = |u: &MinkowskiVec| pieces(u).into_iter().fold(f64::INFINITY, f64::min);
    let direction = |w: MinkowskiVec| {
        let t = x.tangent_part(&w);
        let q = t.norm_sq();
        (q > 1e-24).then(|| t * (1.0 / q.sqrt()))
    };
    let gauss4 = |rng: &mut R| {
        let mut g = || -> f64 {
            let (a, b): (f64, f64) = (rng.random::<f64>().max(1e-300), rng.random());
            (-2.0 * a.ln()).sqrt() * (std::f64::consts::TAU * b).cos()
        };
        MinkowskiVec::new(g(), g(), g(), g())
    };
    let mut pool: Vec<(f64, MinkowskiVec)> = Vec::with_capacity(samples);
    while pool.len() < samples {
        if let Some(u) = direction(gauss4(rng)) {
            pool.push((reach(&u), u));
        }
    }
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));
    pool.truncate(8);
    let mut best = f64::NEG_INFINITY;
    for (mut s, mut u) in pool {
        // restarts keep a collapsed step size from stalling on a ridge
        for _ in 0..6 {
            let mut sigma = 0.05;
            for _ in 0..1500 {
                let Some(cand) = direction(u + gauss4(rng) * sigma) else {
                    continue;
                };
                let sc = reach(&cand);
                if sc > s {
                    s = sc;
                    u = cand;
                    sigma *= 1.5;
                } else {
                    sigma = (sigma * 0.95).max(1e-13);
                }
            }
        }
        let (s2, _) = polish_maximin(&pieces, &direction, u, s);
        best = best.max(s2);
    }
    if best <= 0.0 {
        0.0
    } else {
        best.min(1.0).atanh()
    }
}

/// Trust-region polish of `min_i f_i(u)` over unit directions: linearize every
/// piece by central differences in a chart around `u`, maximize the
/// piecewise-linear model on a box, accept if the true value improves.
fn polish_maximin(
    pieces: &dyn Fn(&MinkowskiVec) -> Vec<f64>,
    direction: &dyn Fn(MinkowskiVec) -> Option<MinkowskiVec>,
    mut u: MinkowskiVec,
    mut value: f64,
) -> (f64, MinkowskiVec) {
    let reach = |v: &MinkowskiVec| pieces(v).into_iter().fold(f64::INFINITY, f64::min);
    let mut radius = 1e-2;
    for _ in 0..400 {
        if radius < 1e-13 {
            break;
        }
        // orthonormal chart of the direction sphere at u
        let mut basis = Vec::new();
        for k in 0..4 {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            let Some(mut w) = direction(MinkowskiVec::new(e[0], e[1], e[2], e[3])) else {
                continue;
            };
            w = w - u * w.inner(&u);
            for b in &basis {
                w = w - *b * w.inner(b);
            }
            let q = w.norm_sq();
            if q > 1e-6 {
                basis.push(w * (1.0 / q.sqrt()));
            }
            if basis.len() == 2 {
                break;
            }
        }
        let at = |a: f64, b: f64| direction(u + basis[0] * a + basis[1] * b);
        let f0 = pieces(&u);
        let h = 1e-7;
        let grads: Vec<[f64; 2]> = {
            let (pa, ma) = (pieces(&at(h, 0.0).unwrap()), pieces(&at(-h, 0.0).unwrap()));
            let (pb, mb) = (pieces(&at(0.0, h).unwrap()), pieces(&at(0.0, -h).unwrap()));
            (0..f0.len())
                .map(|i| [(pa[i] - ma[i]) / (2.0 * h), (pb[i] - mb[i]) / (2.0 * h)])
                .collect()
        };
        let model = |d: [f64; 2]| {
            (0..f0.len())
                .map(|i| f0[i] + grads[i][0] * d[0] + grads[i][1] * d[1])
                .fold(f64::INFINITY, f64::min)
        };
        let mut cands: Vec<[f64; 2]> = vec![
            [radius, radius],
            [radius, -radius],
            [-radius, radius],
            [-radius, -radius],
        ];
        let n = f0.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let (gx, gy, r) = (grads[i][0] - grads[j][0], grads[i][1] - grads[j][1], f0[j] - f0[i]);
                for s in [radius, -radius] {
                    if gy.abs() > 1e-300 {
                        cands.push([s, (r - gx * s) / gy]);
                    }
                    if gx.abs() > 1e-300 {
                        cands.push([(r - gy * s) / gx, s]);
                    }
                }
                for k in (j + 1)..n {
                    let (hx, hy, r2) = (grads[i][0] - grads[k][0], grads[i][1] - grads[k][1], f0[k] - f0[i]);
                    let det = gx * hy - gy * hx;
                    if det.abs() > 1e-300 {
                        cands.push([(r * hy - gy * r2) / det, (gx * r2 - r * hx) / det]);
                    }
                }
            }
        }
        let step = cands
            .into_iter()
            .filter(|d| d[0].abs() <= radius * (1.0 + 1e-12) && d[1].abs() <= radius * (1.0 + 1e-12))
            .max_by(|a, b| model(*a).total_cmp(&model(*b)))
            .unwrap();
        match at(step[0], step[1]) {
            Some(next) if reach(&next) > value => {
                value = reach(&next);
                u = next;
                radius *= 2.0;
            }
            _ => radius *= 0.25,
        }
    }
    (value, u)
}

/// Euclidean membership in an oriented circle disk.
pub fn euclid_in(center: Complex64, radius: f64, interior: bool, z: Option<Complex64>) -> bool {
    match z {
        Some(z) => ((z - center).norm() < radius) == interior,
        None => !interior,
    }
}

/// Relation of two oriented circle disks from plane geometry alone: crossing
/// is read off the boundary samples, the other relations from which of the
/// four membership patterns occur near the circles, at the centres and at ∞.
pub fn euclidean_relation(c0: (Complex64, f64, bool), c1: (Complex64, f64, bool)) -> DiskRelation {
    let ring = |(c, r, _): (Complex64, f64, bool), s: f64| -> Vec<Complex64> {
        (0..64)
            .map(|k| c + Complex64::from_polar(r * s, k as f64 * std::f64::consts::TAU / 64.0))
            .collect()
    };
    let inside_c1: Vec<bool> = ring(c0, 1.0).iter().map(|z| (z - c1.0).norm() < c1.1).collect();
    if inside_c1.iter().any(|&b| b) && inside_c1.iter().any(|&b| !b) {
        return DiskRelation::Overlap;
    }
    let mut probes: Vec<Option<Complex64>> = vec![None, Some(c0.0), Some(c1.0)];
    for circle in [c0, c1] {
        for s in [1.0 - 1e-6, 1.0 + 1e-6] {
            probes.extend(ring(circle, s).into_iter().map(Some));
        }
    }
    let (mut both, mut neither, mut only0, mut only1) = (false, false, false, false);
    for z in probes {
        match (euclid_in(c0.0, c0.1, c0.2, z), euclid_in(c1.0, c1.1, c1.2, z)) {
            (true, true) => both = true,
            (false, false) => neither = true,
            (true, false) => only0 = true,
            (false, true) => only1 = true,
        }
    }
    if !both {
        DiskRelation::Disjoint
    } else if !neither {
        DiskRelation::Covering
    } else {
        assert!(!(only0 && only1), "non-crossing circles must leave one pattern empty");
        DiskRelation::Nested
    }
}

pub fn complex_strategy(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(a, b)| c(a, b))
}

pub fn ideal_strategy() -> impl Strategy<Value = IdealPoint> {
    prop_oneof![
        9 => complex_strategy(3.0).prop_map(IdealPoint::Finite),
        1 => Just(IdealPoint::Infinity),
    ]
}

pub fn hpoint_strategy() -> impl Strategy<Value = HPoint> {
    (complex_strategy(2.0), -2.0f64..2.0).prop_map(|(z, lh)| HPoint::from_uhs(z, lh.exp()).unwrap())
}

pub fn mobius_strategy() -> impl Strategy<Value = MobiusMap> {
    (
        complex_strategy(2.0),
        complex_strategy(2.0),
        complex_strategy(2.0),
        complex_strategy(2.0),
    )
        .prop_filter("nearly singular", |(a, b, cc, d)| (a * d - b * cc).norm() > 0.3)
        .prop_map(|(a, b, cc, d)| MobiusMap::new(a, b, cc, d).unwrap())
}

/// Relative closeness of two Minkowski vectors.
pub fn vec_close(a: &MinkowskiVec, b: &MinkowskiVec, tol: f64) -> bool {
    (*a - *b).max_abs() <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}
