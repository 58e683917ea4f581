//! Adaptive Dormand-Prince integration of `u″ + ½ f u = 0` along polylines.

use num_complex::Complex64;

use super::jet::Jet;
use super::HolomorphicField;
use crate::error::{GeomError, Result};
use crate::lorentz::IdealPoint;

type State = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value, first and second derivative of `φ` at `z0`; fixes the Möbius
/// freedom of the solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Normalization {
    pub z0: Complex64,
    pub phi: Complex64,
    pub dphi: Complex64,
    pub d2phi: Complex64,
}

impl Normalization {
    /// The normalization that makes `φ` agree with the jet `target` at its base.
    pub fn matching(target: &Jet) -> Normalization {
        Normalization {
            z0: target.base,
            phi: target.value(),
            dphi: target.derivative_at(1),
            d2phi: target.derivative_at(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Local error tolerance per unit magnitude of the state.
    pub tol: f64,
    pub max_steps: usize,
    pub min_step: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            max_steps: 1_000_000,
            min_step: 1e-14,
        }
    }
}

/// State of the integration at polyline parameter `t` (segment index plus
/// fraction along it).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSample {
    pub t: f64,
    pub z: Complex64,
    /// `(u₁, u₁′, u₂, u₂′)`.
    pub state: State,
    /// Whether `1/φ` is the tracked chart.
    pub inverted: bool,
}

impl PathSample {
    /// `φ`, or `1/φ` when `inverted`.
    pub fn chart_value(&self) -> Complex64 {
        let [u1, _, u2, _] = self.state;
        if self.inverted {
            u2 / u1
        } else {
            u1 / u2
        }
    }

    pub fn phi(&self) -> IdealPoint {
        let [u1, _, u2, _] = self.state;
        if u2 == ZERO {
            IdealPoint::Infinity
        } else {
            IdealPoint::Finite(u1 / u2)
        }
    }

    /// `φ′ = −W/u₂²` with `W = u₁u₂′ − u₂u₁′`.
    pub fn dphi(&self) -> Complex64 {
        let [u1, d1, u2, d2] = self.state;
        (u2 * d1 - u1 * d2) / (u2 * u2)
    }

    fn wronskian(&self) -> Complex64 {
        let [u1, d1, u2, d2] = self.state;
        u1 * d2 - u2 * d1
    }
}

/// The developing map `φ` along a polyline.
pub struct SchwarzianSolution<F> {
    field: F,
    path: Vec<Complex64>,
    samples: Vec<PathSample>,
    chart_flips: Vec<f64>,
    wronskian_drift: f64,
    options: SolveOptions,
}

/// Integrates `u″ + ½ f u = 0` along `path`, which must start at `norm.z0`,
/// and returns `φ = u₁/u₂` with the prescribed 2-jet at `z0`.
pub fn schwarzian_solve<F: HolomorphicField>(
    field: F,
    path: &[Complex64],
    norm: Normalization,
    options: SolveOptions,
) -> Result<SchwarzianSolution<F>> {
    if path.is_empty() || (path[0] - norm.z0).norm() > 1e-12 * (1.0 + norm.z0.norm()) {
        return Err(GeomError::Degenerate(
            "path must start at the normalization point".into(),
        ));
    }
    if norm.dphi.norm() <= 1e-12 {
        return Err(GeomError::CriticalPoint);
    }
    let d2 = -norm.d2phi / (norm.dphi * 2.0);
    let start = PathSample {
        t: 0.0,
        z: norm.z0,
        state: [norm.phi, norm.dphi + norm.phi * d2, Complex64::new(1.0, 0.0), d2],
        inverted: false,
    };
    let w0 = start.wronskian();
    let mut sol = SchwarzianSolution {
        field,
        path: path.to_vec(),
        samples: vec![start],
        chart_flips: Vec::new(),
        wronskian_drift: 0.0,
        options,
    };
    for seg in 0..path.len().saturating_sub(1) {
        let from = *sol.samples.last().unwrap();
        let mut fresh = Vec::new();
        integrate_segment(
            &sol.field,
            path[seg],
            path[seg + 1],
            seg,
            from,
            1.0,
            &options,
            &mut fresh,
            &mut sol.chart_flips,
        )?;
        for s in fresh {
            let drift = ((s.wronskian() - w0) / w0).norm();
            sol.wronskian_drift = sol.wronskian_drift.max(drift);
            sol.samples.push(s);
        }
    }
    Ok(sol)
}

impl<F: HolomorphicField> SchwarzianSolution<F> {
    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }

    pub fn end(&self) -> &PathSample {
        self.samples.last().unwrap()
    }

    pub fn path(&self) -> &[Complex64] {
        &self.path
    }

    /// Polyline parameters where `φ` entered `|φ| > 1e6`, located by
    /// interpolating `1/φ` across the step (linear near a simple pole).
    pub fn chart_flips(&self) -> &[f64] {
        &self.chart_flips
    }

    /// Largest relative change of the Wronskian, which is constant for exact
    /// solutions.
    pub fn wronskian_drift(&self) -> f64 {
        self.wronskian_drift
    }

    /// State at polyline parameter `t ∈ [0, segments]`.
    pub fn eval(&self, t: f64) -> Result<PathSample> {
        let segments = self.path.len() - 1;
        if !(t >= 0.0 && t <= segments as f64) {
            return Err(GeomError::Degenerate(format!("parameter {t} outside the path")));
        }
        let idx = self.samples.partition_point(|s| s.t <= t) - 1;
        let from = self.samples[idx];
        if from.t == t {
            return Ok(from);
        }
        let seg = (from.t.floor() as usize).min(segments - 1);
        let seg = if from.t - seg as f64 >= 1.0 { seg + 1 } else { seg };
        let stop = t - seg as f64;
        let mut out = Vec::new();
        let mut flips = Vec::new();
        integrate_segment(
            &self.field,
            self.path[seg],
            self.path[seg + 1],
            seg,
            from,
            stop,
            &self.options,
            &mut out,
            &mut flips,
        )?;
        Ok(*out.last().unwrap_or(&from))
    }

    /// Jet of the tracked chart value (`φ` or `1/φ`) at polyline parameter
    /// `t`, from the Taylor recursion of the linear equation.
    pub fn jet_at(&self, t: f64, order: usize) -> Result<Jet> {
        let s = self.eval(t)?;
        let f = self.field.jet(s.z, order)?;
        let u1 = solution_jet(&f, s.state[0], s.state[1], order);
        let u2 = solution_jet(&f, s.state[2], s.state[3], order);
        Ok(if s.inverted { u2 / u1 } else { u1 / u2 })
    }
}

/// Taylor coefficients of the solution of `u″ = −½ f u` with `u(z) = u0`,
/// `u′(z) = u1`: `(k+2)(k+1) u_{k+2} = −½ Σ f_j u_{k−j}`.
fn solution_jet(f: &Jet, u0: Complex64, u1: Complex64, order: usize) -> Jet {
    let mut c = vec![ZERO; order + 1];
    c[0] = u0;
    if order >= 1 {
        c[1] = u1;
    }
    for k in 0..order.saturating_sub(1) {
        let s: Complex64 = (0..=k).map(|j| f.coeffs[j] * c[k - j]).sum();
        c[k + 2] = -s * 0.5 / ((k + 2) as f64 * (k + 1) as f64);
    }
    Jet::new(f.base, c)
}

fn rhs<F: HolomorphicField>(field: &F, z: Complex64, dir: Complex64, y: &State) -> Result<State> {
    let f = field.value(z)? * 0.5;
    Ok([dir * y[1], -dir * f * y[0], dir * y[3], -dir * f * y[2]])
}

fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += k[i] * (c * h);
        }
    }
    out
}

/// Closest approach to 0 of the segment `[wa, wb]`, as `(fraction, distance)`.
fn closest_to_origin(wa: Complex64, wb: Complex64) -> (f64, f64) {
    let d = wb - wa;
    let tau = if d.norm_sqr() == 0.0 {
        0.0
    } else {
        (-(wa.conj() * d).re / d.norm_sqr()).clamp(0.0, 1.0)
    };
    (tau, (wa + d * tau).norm())
}

fn update_chart(sample: &mut PathSample) {
    let [u1, _, u2, _] = sample.state;
    if !sample.inverted && u1.norm() > 1e6 * u2.norm() {
        sample.inverted = true;
    } else if sample.inverted && u1.norm() < 1e3 * u2.norm() {
        sample.inverted = false;
    }
}

/// Integrates along `a + s(b − a)` from the fraction `from.t − seg` up to
/// `stop`, pushing every accepted step.
#[allow(clippy::too_many_arguments)]
fn integrate_segment<F: HolomorphicField>(
    field: &F,
    a: Complex64,
    b: Complex64,
    seg: usize,
    from: PathSample,
    stop: f64,
    opts: &SolveOptions,
    out: &mut Vec<PathSample>,
    flips: &mut Vec<f64>,
) -> Result<()> {
    const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A2: [f64; 1] = [1.0 / 5.0];
    const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
    const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
    const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
    const A6: [f64; 5] = [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ];
    const B: [f64; 6] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ];
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];

    let dir = b - a;
    if dir.norm() == 0.0 {
        return Ok(());
    }
    let mut s = (from.t - seg as f64).clamp(0.0, 1.0);
    let mut y = from.state;
    let mut inverted = from.inverted;
    let mut h = (0.05 / dir.norm()).min(stop - s).max(opts.min_step);
    let mut steps = 0usize;
    let z_at = |s: f64| a + dir * s;
    while stop - s > 1e-15 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(GeomError::StepSizeUnderflow(h));
        }
        h = h.min(stop - s);
        let k1 = rhs(field, z_at(s), dir, &y)?;
        let k2 = rhs(field, z_at(s + C[0] * h), dir, &axpy(&y, &[(A2[0], &k1)], h))?;
        let k3 = rhs(
            field,
            z_at(s + C[1] * h),
            dir,
            &axpy(&y, &[(A3[0], &k1), (A3[1], &k2)], h),
        )?;
        let k4 = rhs(
            field,
            z_at(s + C[2] * h),
            dir,
            &axpy(&y, &[(A4[0], &k1), (A4[1], &k2), (A4[2], &k3)], h),
        )?;
        let k5 = rhs(
            field,
            z_at(s + C[3] * h),
            dir,
            &axpy(&y, &[(A5[0], &k1), (A5[1], &k2), (A5[2], &k3), (A5[3], &k4)], h),
        )?;
        let k6 = rhs(
            field,
            z_at(s + C[4] * h),
            dir,
            &axpy(
                &y,
                &[(A6[0], &k1), (A6[1], &k2), (A6[2], &k3), (A6[3], &k4), (A6[4], &k5)],
                h,
            ),
        )?;
        let next = axpy(
            &y,
            &[(B[0], &k1), (B[2], &k3), (B[3], &k4), (B[4], &k5), (B[5], &k6)],
            h,
        );
        let k7 = rhs(field, z_at(s + h), dir, &next)?;
        let mut err: f64 = 0.0;
        for i in 0..4 {
            let e = (k1[i] * E[0] + k3[i] * E[2] + k4[i] * E[3] + k5[i] * E[4] + k6[i] * E[5] + k7[i] * E[6]) * h;
            let scale = opts.tol * y[i].norm().max(next[i].norm()).max(1.0);
            err = err.max(e.norm() / scale);
        }
        if !err.is_finite() {
            return Err(GeomError::StepSizeUnderflow(h));
        }
        if err <= 1.0 {
            if !inverted && y[0].norm() > y[2].norm() && next[0].norm() > next[2].norm() {
                let (tau, dist) = closest_to_origin(y[2] / y[0], next[2] / next[0]);
                if dist < 1e-6 {
                    flips.push(seg as f64 + s + tau * h);
                }
            }
            s += h;
            y = next;
            let mut sample = PathSample {
                t: seg as f64 + s,
                z: z_at(s),
                state: y,
                inverted,
            };
            update_chart(&mut sample);
            inverted = sample.inverted;
            out.push(sample);
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < opts.min_step && stop - s > 1e-15 {
            return Err(GeomError::StepSizeUnderflow(h));
        }
    }
    if let Some(last) = out.last_mut() {
        last.t = seg as f64 + stop;
        last.z = z_at(stop);
    }
    Ok(())
}
