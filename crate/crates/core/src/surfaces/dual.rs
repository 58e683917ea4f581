//! Forward-mode dual numbers in two parameters.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::lorentz::MinkowskiVec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dual {
    pub v: f64,
    pub d: [f64; 2],
}

impl Dual {
    pub fn constant(v: f64) -> Dual {
        Dual { v, d: [0.0, 0.0] }
    }

    /// The `i`-th coordinate function with value `v`.
    pub fn param(v: f64, i: usize) -> Dual {
        let mut d = [0.0, 0.0];
        d[i] = 1.0;
        Dual { v, d }
    }

    fn chain(self, v: f64, dv: f64) -> Dual {
        Dual {
            v,
            d: [self.d[0] * dv, self.d[1] * dv],
        }
    }

    pub fn cosh(self) -> Dual {
        self.chain(self.v.cosh(), self.v.sinh())
    }

    pub fn sinh(self) -> Dual {
        self.chain(self.v.sinh(), self.v.cosh())
    }

    pub fn cos(self) -> Dual {
        self.chain(self.v.cos(), -self.v.sin())
    }

    pub fn sin(self) -> Dual {
        self.chain(self.v.sin(), self.v.cos())
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: [self.d[0] + o.d[0], self.d[1] + o.d[1]],
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        self + (-o)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual {
            v: -self.v,
            d: [-self.d[0], -self.d[1]],
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: [self.d[0] * o.v + self.v * o.d[0], self.d[1] * o.v + self.v * o.d[1]],
        }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, s: f64) -> Dual {
        Dual {
            v: self.v * s,
            d: [self.d[0] * s, self.d[1] * s],
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let q = self.v / o.v;
        Dual {
            v: q,
            d: [(self.d[0] - q * o.d[0]) / o.v, (self.d[1] - q * o.d[1]) / o.v],
        }
    }
}

/// A Minkowski vector with first derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DVec(pub [Dual; 4]);

impl DVec {
    pub fn constant(v: &MinkowskiVec) -> DVec {
        DVec([0, 1, 2, 3].map(|i| Dual::constant(v[i])))
    }

    pub fn value(&self) -> MinkowskiVec {
        MinkowskiVec::new(self.0[0].v, self.0[1].v, self.0[2].v, self.0[3].v)
    }

    pub fn partial(&self, i: usize) -> MinkowskiVec {
        MinkowskiVec::new(self.0[0].d[i], self.0[1].d[i], self.0[2].d[i], self.0[3].d[i])
    }

    pub fn inner(&self, o: &DVec) -> Dual {
        let a = &self.0;
        let b = &o.0;
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
    }

    pub fn scale(&self, s: Dual) -> DVec {
        DVec(self.0.map(|c| c * s))
    }

    pub fn add(&self, o: &DVec) -> DVec {
        DVec([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &DVec) -> DVec {
        DVec([0, 1, 2, 3].map(|i| self.0[i] - o.0[i]))
    }

    /// `M·self` for a constant matrix.
    pub fn transform(&self, m: &nalgebra::Matrix4<f64>) -> DVec {
        DVec([0, 1, 2, 3].map(|r| (0..4).fold(Dual::constant(0.0), |acc, c| acc + self.0[c] * m[(r, c)])))
    }
}

/// The null lift `(2u, 2v, 1 − u² − v², 1 + u² + v²)` of `z = u + iv`.
pub(crate) fn dual_lift(u: Dual, v: Dual) -> DVec {
    let r2 = u * u + v * v;
    let one = Dual::constant(1.0);
    DVec([u * 2.0, v * 2.0, one - r2, one + r2])
}
