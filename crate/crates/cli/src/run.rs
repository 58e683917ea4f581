use std::f64::consts::TAU;

use hyperend::ends::{end_height_gradient, end_probe_straddles_ridge};
use hyperend::kp::{kp_solve, DEFAULT_SEED};
use hyperend::schwarzian::{HolomorphicField, Normalization, SolveOptions};
use hyperend::surfaces::FlowMethod;
use hyperend::{
    disk_from_circle, end_height, end_hessian_probe, end_horoball_check, end_project, end_trace_geodesic, ideal_lift,
    kp_classify, model_convert, schwarzian_jet, schwarzian_solve, shape_flow, surface_apriori_check, EndOverDomain,
    ExplicitSurface, Expr, FiniteComplementDomain, HPoint, IdealPoint, MinkowskiVec, Model, ModelPoint, Orientation,
    ShapeState,
};
use nalgebra::Matrix2;

use crate::request::*;
use crate::response::{self as out, Output};
use crate::wire::{complex, ideal_set, pair, uhs, Disk, Ideal, Point};
use crate::Failure;

type Run = Result<Output, Failure>;

pub fn dispatch(cmd: &Command, opts: &Options) -> Run {
    match cmd {
        Command::Kp(r) => kp(r, opts),
        Command::Maxdisk(r) => maxdisk(r, opts),
        Command::Height(r) => height(r),
        Command::Project(r) => project(r),
        Command::Trace(r) => trace(r),
        Command::Hessian(r) => hessian(r, opts),
        Command::HoroballCheck(r) => horoball_check(r),
        Command::Schwarzian(r) => schwarzian(r),
        Command::SolveSchwarzian(r) => solve(r, opts),
        Command::Flow(r) => flow(r, opts),
        Command::Apriori(r) => apriori(r, opts),
        Command::Models(r) => models(r),
    }
}

fn domain(points: &[Ideal]) -> Result<FiniteComplementDomain, Failure> {
    FiniteComplementDomain::new(ideal_set(points)?).map_err(Failure::invalid)
}

fn end(points: &[Ideal]) -> Result<EndOverDomain, Failure> {
    EndOverDomain::new(domain(points)?).map_err(Failure::invalid)
}

fn points(ps: &[Point]) -> Result<Vec<HPoint>, Failure> {
    ps.iter().map(|p| p.to_core()).collect()
}

fn kp(r: &KpRequest, opts: &Options) -> Run {
    let dom = domain(&r.complement)?;
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    let values = r
        .queries
        .iter()
        .map(|q| Ok(kp_solve(&dom, q.to_core()?, seed)?.value))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Output::Kp(out::KpResult {
        domain_type: kp_classify(&dom).name().into(),
        values,
    }))
}

fn maxdisk(r: &MaxDiskRequest, opts: &Options) -> Run {
    let dom = domain(&r.complement)?;
    let sol = kp_solve(&dom, r.at.to_core()?, opts.seed.unwrap_or(DEFAULT_SEED))?;
    let disk = sol
        .max_disk
        .ok_or_else(|| Failure::numeric(format!("{} domain has no maximal disk", kp_classify(&dom).name())))?;
    Ok(Output::Maxdisk(out::MaxDiskResult {
        value: sol.value,
        disk: Disk::from(&disk),
        support: sol.support.into_iter().map(Ideal::from).collect(),
    }))
}

fn height(r: &PointsRequest) -> Run {
    let e = end(&r.complement)?;
    let heights = points(&r.points)?.iter().map(|x| end_height(&e, x)).collect();
    Ok(Output::Height(out::HeightResult { heights }))
}

fn project(r: &PointsRequest) -> Run {
    let e = end(&r.complement)?;
    let projections = points(&r.points)?
        .iter()
        .map(|x| {
            let (foot, z) = end_project(&e, x)?;
            Ok(out::Projection {
                foot: uhs(&foot),
                ideal: z.into(),
            })
        })
        .collect::<Result<_, Failure>>()?;
    Ok(Output::Project(out::ProjectResult { projections }))
}

/// Unit tangent at `x` of the geodesic ray towards `z`.
fn direction_towards(x: &HPoint, z: IdealPoint) -> MinkowskiVec {
    let l = ideal_lift(z);
    l * (-1.0 / x.vec().inner(&l)) - x.vec()
}

fn trace(r: &TraceRequest) -> Run {
    let e = end(&r.complement)?;
    let x = r.from.to_core()?;
    if !(r.t_max > 0.0 && r.dt > 0.0 && r.t_max.is_finite()) {
        return Err(Failure::validation("t_max and dt must be positive"));
    }
    if r.t_max / r.dt > 1e6 {
        return Err(Failure::validation("more than a million samples requested"));
    }
    let v = direction_towards(&x, r.towards.to_core()?);
    let ray = end_trace_geodesic(&e, &x, &v, r.t_max, r.dt)?;
    Ok(Output::Trace(out::TraceResult {
        downward_start: ray.downward_start,
        samples: ray
            .samples
            .iter()
            .map(|s| out::TraceSample {
                t: s.t,
                height: s.height,
                horizontal_speed: s.horizontal_speed,
                uhs: uhs(&s.point),
            })
            .collect(),
    }))
}

/// An orthonormal basis of the tangent vectors at `x` orthogonal to `g`.
fn horizontal_basis(x: &HPoint, g: &MinkowskiVec) -> [MinkowskiVec; 2] {
    let mut basis: Vec<MinkowskiVec> = Vec::with_capacity(2);
    for i in 0..4 {
        let mut e = [0.0; 4];
        e[i] = 1.0;
        let mut w = x.tangent_part(&MinkowskiVec::from_array(e));
        for b in basis.iter().chain(std::iter::once(g)) {
            w = w - *b * w.inner(b);
        }
        let n = w.inner(&w);
        if n > 1e-2 {
            basis.push(w * (1.0 / n.sqrt()));
            if basis.len() == 2 {
                break;
            }
        }
    }
    [basis[0], basis[1]]
}

fn hessian(r: &HessianRequest, opts: &Options) -> Run {
    let e = end(&r.complement)?;
    let x = r.at.to_core()?;
    let h = end_height(&e, &x);
    if h <= 0.0 {
        return Err(Failure::numeric("point lies in the convex hull"));
    }
    let g = end_height_gradient(&e, &x)?;
    let [b1, b2] = horizontal_basis(&x, &g);
    let dir = |a: f64| b1 * a.cos() + b2 * a.sin();
    let xi = dir(r.angle);
    let probe = end_hessian_probe(&e, &x, &xi, r.eps)?;
    let ring = opts.samples.unwrap_or(64);
    let mut directional_min: Option<f64> = None;
    for k in 0..ring {
        let v = dir(TAU * k as f64 / ring as f64);
        if end_probe_straddles_ridge(&e, &x, &v, r.eps) {
            continue;
        }
        let p = end_hessian_probe(&e, &x, &v, r.eps)?;
        directional_min = Some(directional_min.map_or(p, |m| m.min(p)));
    }
    Ok(Output::Hessian(out::HessianResult {
        height: h,
        probe,
        lower: h.tanh(),
        upper: 1.0 / h.tanh(),
        straddles_ridge: end_probe_straddles_ridge(&e, &x, &xi, r.eps),
        directional_min,
    }))
}

fn horoball_check(r: &PointsRequest) -> Run {
    let e = end(&r.complement)?;
    let contained = points(&r.points)?
        .iter()
        .map(|x| end_horoball_check(&e, x))
        .collect::<Result<_, _>>()?;
    Ok(Output::HoroballCheck(out::HoroballResult { contained }))
}

fn schwarzian(r: &SchwarzianRequest) -> Run {
    if r.order > 40 {
        return Err(Failure::validation("order must be at most 40"));
    }
    let map = Expr::parse(&r.map)?;
    let jet = map.jet(complex(r.at), r.order + 3)?;
    let s = schwarzian_jet(&jet)?;
    if !s.is_finite() {
        return Err(Failure::numeric("Schwarzian is not finite at the basepoint"));
    }
    Ok(Output::Schwarzian(out::SchwarzianResult {
        value: pair(s.value()),
        coefficients: s.coeffs.iter().copied().map(pair).collect(),
    }))
}

fn solve(r: &SolveRequest, opts: &Options) -> Run {
    let field = Expr::parse(&r.field)?;
    let path: Vec<_> = r.path.iter().copied().map(complex).collect();
    let z0 = *path.first().ok_or_else(|| Failure::validation("path is empty"))?;
    let n = r.normalization.unwrap_or(NormalizationSpec {
        phi: [0.0, 0.0],
        dphi: [1.0, 0.0],
        d2phi: [0.0, 0.0],
    });
    let norm = Normalization {
        z0,
        phi: complex(n.phi),
        dphi: complex(n.dphi),
        d2phi: complex(n.d2phi),
    };
    let options = SolveOptions {
        tol: opts.tol.unwrap_or(SolveOptions::default().tol),
        ..SolveOptions::default()
    };
    let sol = schwarzian_solve(&field, &path, norm, options)?;
    Ok(Output::SolveSchwarzian(out::SolveResult {
        end: sol.end().phi().into(),
        chart_flips: sol.chart_flips().to_vec(),
        wronskian_drift: sol.wronskian_drift(),
        samples: sol
            .samples()
            .iter()
            .map(|s| out::SolveSample {
                t: s.t,
                z: pair(s.z),
                phi: s.phi().into(),
            })
            .collect(),
    }))
}

fn flow(r: &FlowRequest, opts: &Options) -> Run {
    let [[a, b], [c, d]] = r.a0;
    let state = ShapeState::new(Matrix2::new(a, b, c, d)).map_err(Failure::invalid)?;
    if !(r.t >= 0.0 && r.t.is_finite()) {
        return Err(Failure::validation("t must be finite and non-negative"));
    }
    let method = match r.method {
        Method::ClosedForm => FlowMethod::ClosedForm,
        Method::Rk4 => FlowMethod::Rk4,
    };
    let at = |t: f64| shape_flow(&state, t, method);
    let res = at(r.t)?;
    let m = res.state.matrix();
    let trajectory = match opts.samples {
        None => None,
        Some(n) => {
            let n = n.max(2);
            Some(
                (0..n)
                    .map(|i| {
                        let t = r.t * i as f64 / (n - 1) as f64;
                        let s = at(t)?;
                        Ok(out::FlowSample {
                            t,
                            k: s.k,
                            principal: s.state.principal_curvatures(),
                        })
                    })
                    .collect::<Result<_, Failure>>()?,
            )
        }
    };
    Ok(Output::Flow(out::FlowResult {
        k: res.k,
        principal: res.state.principal_curvatures(),
        matrix: [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]],
        trajectory,
    }))
}

/// `rings × spokes` points `at(f, θ)` with `f` in `[0, 1]` and `θ` in `[0, 2π)`.
fn lattice(count: usize, at: impl Fn(f64, f64) -> [f64; 2]) -> Vec<[f64; 2]> {
    let rings = count.clamp(1, 10);
    let spokes = (count / rings).max(1);
    let mut out = Vec::with_capacity(rings * spokes);
    for i in 0..rings {
        let f = if rings == 1 { 0.0 } else { i as f64 / (rings - 1) as f64 };
        for j in 0..spokes {
            out.push(at(f, TAU * j as f64 / spokes as f64));
        }
    }
    out
}

fn polar(center: [f64; 2], count: usize, rho: impl Fn(f64) -> f64) -> Vec<[f64; 2]> {
    lattice(count, |f, th| {
        let r = rho(f);
        [center[0] + r * th.cos(), center[1] + r * th.sin()]
    })
}

fn apriori(r: &AprioriRequest, opts: &Options) -> Run {
    let count = opts.samples.unwrap_or(100);
    let (surface, own_r, grid) = match &r.surface {
        SurfaceSpec::Equidistant {
            center,
            radius,
            side,
            r: dist,
        } => {
            let orientation = match side {
                Side::Interior => Orientation::Interior,
                Side::Exterior => Orientation::Exterior,
            };
            let disk = disk_from_circle(complex(*center), *radius, orientation).map_err(Failure::invalid)?;
            let s = ExplicitSurface::plane_equidistant(disk, *dist).map_err(Failure::invalid)?;
            let grid = match side {
                Side::Interior => polar(*center, count, |f| 0.9 * radius * f),
                Side::Exterior => polar(*center, count, |f| radius * (1.1 + 2.0 * f)),
            };
            (s, *dist, grid)
        }
        SurfaceSpec::Cylinder { p, q, r: dist } => {
            let s = ExplicitSurface::cylinder(p.to_core()?, q.to_core()?, *dist).map_err(Failure::invalid)?;
            let grid = lattice(count, |f, th| [2.0 * f - 1.0, th]);
            (s, *dist, grid)
        }
    };
    let bound = r.r.unwrap_or(own_r);
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(Failure::validation("r must be positive"));
    }
    let surface = if r.offset != 0.0 {
        surface.offset_by(r.offset)
    } else {
        surface
    };
    let params = r.params.clone().unwrap_or(grid);
    if params.is_empty() {
        return Err(Failure::validation("params is empty"));
    }
    let rep = surface_apriori_check(&surface, &params, bound)?;
    Ok(Output::Apriori(out::AprioriResult {
        r: rep.r,
        curvature_hypothesis: rep.curvature_hypothesis,
        distance_bound_holds: rep.distance_bound_holds,
        horoball_bound_holds: rep.horoball_bound_holds,
        max_distance_excess: Some(rep.max_distance_excess).filter(|x| x.is_finite()),
        min_horoball_level: rep.min_horoball_level,
        samples: rep
            .samples
            .iter()
            .map(|s| out::AprioriSample {
                param: s.param,
                gauss: s.gauss.into(),
                curvature: s.curvature,
                test_distance: s.test_distance,
                horoball_level: s.horoball_level,
            })
            .collect(),
    }))
}

fn models(r: &ModelsRequest) -> Run {
    let x = r.point.to_core()?;
    let p = ModelPoint::from(x);
    let conv = |m| model_convert(&p, m).map_err(Failure::from);
    let hyperboloid = x.vec().to_array();
    let ModelPoint::Klein(klein) = conv(Model::KleinBall)? else {
        unreachable!()
    };
    let ModelPoint::UpperHalfSpace { z, h } = conv(Model::UpperHalfSpace)? else {
        unreachable!()
    };
    Ok(Output::Models(out::ModelsResult {
        hyperboloid,
        klein,
        uhs: [z.re, z.im, h],
    }))
}
