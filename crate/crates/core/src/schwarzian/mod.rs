//! The Schwarzian derivative `S(φ) = (φ″/φ′)′ − ½(φ″/φ′)²` on jets, and its
//! inversion through `u″ + ½ f u = 0`, `φ = u₁/u₂`.

pub mod expr;
pub mod jet;
mod solve;

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::lorentz::MobiusMap;

pub use expr::Expr;
pub use jet::Jet;
pub use solve::{schwarzian_solve, Normalization, PathSample, SchwarzianSolution, SolveOptions};

/// Default truncation order of jets.
pub const DEFAULT_ORDER: usize = 8;

/// A holomorphic function that can be expanded at any point of its domain.
pub trait HolomorphicField {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet>;

    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.jet(z, 0)?.value())
    }
}

impl<T: HolomorphicField + ?Sized> HolomorphicField for &T {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        (**self).jet(z, order)
    }

    fn value(&self, z: Complex64) -> Result<Complex64> {
        (**self).value(z)
    }
}

/// A field given by a function on jets, e.g. `|z| z.exp()`.
#[derive(Clone, Copy)]
pub struct JetFn<F>(pub F);

impl<F: Fn(&Jet) -> Jet> HolomorphicField for JetFn<F> {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        let j = (self.0)(&Jet::variable(z, order));
        if !j.is_finite() {
            return Err(GeomError::Degenerate(format!("field is singular at {z}")));
        }
        Ok(j)
    }
}

/// Schwarzian derivative of a jet of order `N ≥ 3`, as a jet of order `N − 3`.
pub fn schwarzian_jet(phi: &Jet) -> Result<Jet> {
    if phi.order() < 3 {
        return Err(GeomError::Degenerate(format!(
            "jet of order {} is too short",
            phi.order()
        )));
    }
    if phi.coeffs[1].norm() <= 1e-12 {
        return Err(GeomError::CriticalPoint);
    }
    let d1 = phi.derivative();
    let r = d1.derivative() / d1;
    let half = Complex64::new(0.5, 0.0);
    Ok(r.derivative() - (r.clone() * r).scale(half).truncate(phi.order() - 3))
}

/// `m ∘ φ` as a jet.
pub fn mobius_compose(m: &MobiusMap, phi: &Jet) -> Result<Jet> {
    let w = phi.value();
    let den = m.c * w + m.d;
    if den.norm() <= 1e-12 * ((m.c * w).norm() + m.d.norm()) {
        return Err(GeomError::MobiusPole);
    }
    Ok(phi.scale(m.a).add_scalar(m.b) / phi.scale(m.c).add_scalar(m.d))
}

/// Largest coefficient of `S(m ∘ φ) − S(φ)`.
pub fn mobius_invariance_check(phi: &Jet, m: &MobiusMap) -> Result<f64> {
    let s0 = schwarzian_jet(phi)?;
    let s1 = schwarzian_jet(&mobius_compose(m, phi)?)?;
    Ok((s1 - s0).max_abs())
}
