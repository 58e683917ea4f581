//! Browser bindings: a Kulkarni-Pinkall heatmap with maximal disks, the
//! principal-curvature flow of parallel surfaces, and Schwarzian developing
//! maps along a drawn path.
//!
//! Every export takes and returns flat `f64` buffers. Points at infinity are
//! encoded as `NaN` pairs.

use hyperend::kp::kp_solve;
use hyperend::schwarzian::{Normalization, SolveOptions};
use hyperend::surfaces::{shape_flow, FlowMethod, ShapeState};
use hyperend::{schwarzian_solve, EuclideanDisk, Expr, FiniteComplementDomain, IdealPoint};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

const SEED: u64 = 1;

fn pairs(flat: &[f64]) -> Result<Vec<Complex64>, String> {
    if !flat.len().is_multiple_of(2) {
        return Err("coordinate buffer has odd length".into());
    }
    Ok(flat.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

fn domain(flat: &[f64]) -> Result<FiniteComplementDomain, String> {
    let pts = pairs(flat)?.into_iter().map(IdealPoint::Finite).collect();
    FiniteComplementDomain::new(pts).map_err(|e| e.to_string())
}

/// Row-major grid of the form's density over `[x0, x1] × [y0, y1]`, first row
/// at `y1`. Cells on excluded points are `NaN`.
pub fn heatmap(
    points: &[f64],
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    cols: usize,
    rows: usize,
) -> Result<Vec<f64>, String> {
    if cols == 0 || rows == 0 || cols * rows > 4_000_000 {
        return Err("grid size out of range".into());
    }
    let dom = domain(points)?;
    let mut out = Vec::with_capacity(cols * rows);
    for j in 0..rows {
        let y = y1 - (y1 - y0) * (j as f64 + 0.5) / rows as f64;
        for i in 0..cols {
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / cols as f64;
            out.push(kp_solve(&dom, IdealPoint::finite(x, y), SEED).map_or(f64::NAN, |s| s.value));
        }
    }
    Ok(out)
}

/// The maximal disk at `(x, y)` as `[density, kind, a, b, c]`: kind 0 is the
/// disk `|z − (a + bi)| < c`, kind 1 its exterior, kind 2 the half-plane
/// `Re(conj(a + bi) z) > c`.
pub fn maximal_disk(points: &[f64], x: f64, y: f64) -> Result<Vec<f64>, String> {
    let dom = domain(points)?;
    let sol = kp_solve(&dom, IdealPoint::finite(x, y), SEED).map_err(|e| e.to_string())?;
    let disk = sol.max_disk.ok_or("the domain carries no maximal disks")?;
    let (kind, a, c) = match disk.euclidean() {
        EuclideanDisk::Disk { center, radius } => (0.0, center, radius),
        EuclideanDisk::Exterior { center, radius } => (1.0, center, radius),
        EuclideanDisk::HalfPlane { normal, offset } => (2.0, normal, offset),
    };
    Ok(vec![sol.value, kind, a.re, a.im, c])
}

/// Principal curvatures of the parallel surfaces of a surface with principal
/// curvatures `k0, k1`, as rows `[t, κ0(t), κ1(t), K(t)]` at `n` times in
/// `[0, t_max]`.
pub fn flow(k0: f64, k1: f64, t_max: f64, n: usize) -> Result<Vec<f64>, String> {
    if t_max.is_nan() || t_max < 0.0 || !(2..=100_000).contains(&n) {
        return Err("need t_max ≥ 0 and 2 ≤ n ≤ 100000".into());
    }
    let a0 = ShapeState::diagonal(k0, k1);
    let mut out = Vec::with_capacity(4 * n);
    for i in 0..n {
        let t = t_max * i as f64 / (n - 1) as f64;
        let r = shape_flow(&a0, t, FlowMethod::ClosedForm).map_err(|e| e.to_string())?;
        let [a, b] = r.state.principal_curvatures();
        out.extend([t, a, b, r.k]);
    }
    Ok(out)
}

/// Solves `S(φ) = field` along the polyline `path` with `φ(z0) = 0`,
/// `φ′(z0) = 1`, `φ″(z0) = 0`; rows `[t, Re z, Im z, Re φ, Im φ]`.
pub fn developing_map(field: &str, path: &[f64]) -> Result<Vec<f64>, String> {
    let field = Expr::parse(field).map_err(|e| e.to_string())?;
    let path = pairs(path)?;
    let z0 = *path.first().ok_or("path is empty")?;
    let norm = Normalization {
        z0,
        phi: Complex64::new(0.0, 0.0),
        dphi: Complex64::new(1.0, 0.0),
        d2phi: Complex64::new(0.0, 0.0),
    };
    let sol = schwarzian_solve(&field, &path, norm, SolveOptions::default()).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(5 * sol.samples().len());
    for s in sol.samples() {
        let phi = s.phi().as_finite().unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        out.extend([s.t, s.z.re, s.z.im, phi.re, phi.im]);
    }
    Ok(out)
}

#[wasm_bindgen(js_name = kpHeatmap)]
#[allow(clippy::too_many_arguments)]
pub fn kp_heatmap(
    points: &[f64],
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    cols: usize,
    rows: usize,
) -> Result<Vec<f64>, JsError> {
    heatmap(points, x0, x1, y0, y1, cols, rows).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = maximalDisk)]
pub fn maximal_disk_js(points: &[f64], x: f64, y: f64) -> Result<Vec<f64>, JsError> {
    maximal_disk(points, x, y).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = flowCurves)]
pub fn flow_curves(k0: f64, k1: f64, t_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    flow(k0, k1, t_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = developingMap)]
pub fn developing_map_js(field: &str, path: &[f64]) -> Result<Vec<f64>, JsError> {
    developing_map(field, path).map_err(|e| JsError::new(&e))
}
