//! The tube-formula flow `Ȧ = Id − A²` of shape operators under normal
//! offsets.

use nalgebra::{Matrix2, SymmetricEigen};

use crate::error::{GeomError, Result};

/// A symmetric shape operator, expressed in an orthonormal frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeState {
    a: Matrix2<f64>,
}

impl ShapeState {
    pub fn new(a: Matrix2<f64>) -> Result<ShapeState> {
        let asym = (a[(0, 1)] - a[(1, 0)]).abs();
        if asym > 1e-12 * (1.0 + a.abs().max()) || !a.iter().all(|x| x.is_finite()) {
            return Err(GeomError::Degenerate("shape operator must be symmetric".into()));
        }
        Ok(ShapeState { a })
    }

    pub fn diagonal(k0: f64, k1: f64) -> ShapeState {
        ShapeState {
            a: Matrix2::new(k0, 0.0, 0.0, k1),
        }
    }

    #[inline]
    pub fn matrix(&self) -> Matrix2<f64> {
        self.a
    }

    #[inline]
    pub fn curvature(&self) -> f64 {
        self.a.determinant()
    }

    /// Eigenvalues in increasing order.
    pub fn principal_curvatures(&self) -> [f64; 2] {
        let e = SymmetricEigen::new(self.a).eigenvalues;
        [e[0].min(e[1]), e[0].max(e[1])]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowMethod {
    ClosedForm,
    Rk4,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowResult {
    pub state: ShapeState,
    pub k: f64,
}

/// `κ(t)` for the scalar equation `κ̇ = 1 − κ²`.
pub fn principal_flow(k0: f64, t: f64) -> Result<f64> {
    if k0 <= -1.0 {
        return Err(GeomError::SingularBranch(k0));
    }
    Ok(if k0 < 1.0 {
        (t + k0.atanh()).tanh()
    } else if k0 == 1.0 {
        1.0
    } else {
        1.0 / (t + (1.0 / k0).atanh()).tanh()
    })
}

/// Shape operator of the offset at distance `t ≥ 0`.
pub fn shape_flow(a0: &ShapeState, t: f64, method: FlowMethod) -> Result<FlowResult> {
    if !(t >= 0.0) {
        return Err(GeomError::Degenerate(format!("flow time {t} must be non-negative")));
    }
    let eig = SymmetricEigen::new(a0.a);
    for &k in eig.eigenvalues.iter() {
        if k <= -1.0 {
            return Err(GeomError::SingularBranch(k));
        }
    }
    let a = match method {
        FlowMethod::ClosedForm => {
            let k = eig.eigenvalues.map(|k| principal_flow(k, t).expect("checked branch"));
            eig.eigenvectors * Matrix2::from_diagonal(&k) * eig.eigenvectors.transpose()
        }
        FlowMethod::Rk4 => {
            let steps = ((t / 1e-3).ceil() as usize).max(1);
            let h = t / steps as f64;
            let f = |a: &Matrix2<f64>| Matrix2::identity() - a * a;
            let mut a = a0.a;
            for _ in 0..steps {
                let k1 = f(&a);
                let k2 = f(&(a + k1 * (h / 2.0)));
                let k3 = f(&(a + k2 * (h / 2.0)));
                let k4 = f(&(a + k3 * h));
                a += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
            }
            a
        }
    };
    let a = (a + a.transpose()) * 0.5;
    Ok(FlowResult {
        state: ShapeState { a },
        k: a.determinant(),
    })
}
