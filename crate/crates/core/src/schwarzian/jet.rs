//! Truncated Taylor series at a complex basepoint.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// `Σ_k coeffs[k]·(z − base)^k`, exact up to `order = coeffs.len() − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub base: Complex64,
    pub coeffs: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Jet {
    pub fn new(base: Complex64, coeffs: Vec<Complex64>) -> Jet {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { base, coeffs }
    }

    pub fn constant(base: Complex64, c: Complex64, order: usize) -> Jet {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = c;
        Jet { base, coeffs }
    }

    /// The coordinate function `z` at `base`.
    pub fn variable(base: Complex64, order: usize) -> Jet {
        let mut j = Jet::constant(base, base, order);
        if order >= 1 {
            j.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the basepoint.
    pub fn derivative_at(&self, k: usize) -> Complex64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeffs[k] * fact
    }

    pub fn truncate(&self, order: usize) -> Jet {
        Jet::new(self.base, self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// Evaluates the truncated series at `base + t`.
    pub fn eval_offset(&self, t: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Jet {
        if self.order() == 0 {
            return Jet::constant(self.base, ZERO, 0);
        }
        let coeffs = (1..self.coeffs.len()).map(|k| self.coeffs[k] * k as f64).collect();
        Jet::new(self.base, coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet::new(self.base, self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add_scalar(&self, s: Complex64) -> Jet {
        let mut j = self.clone();
        j.coeffs[0] += s;
        j
    }

    fn check_base(&self, other: &Jet) {
        debug_assert!(
            (self.base - other.base).norm() <= 1e-12 * (1.0 + self.base.norm()),
            "jets at different basepoints"
        );
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(self.base, Complex64::new(1.0, 0.0), self.order()) / self.clone()
    }

    pub fn exp(&self) -> Jet {
        let n = self.order();
        let mut e = vec![ZERO; n + 1];
        e[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * (j as f64) * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet::new(self.base, e)
    }

    pub fn cosh(&self) -> Jet {
        (self.exp() + (-self.clone()).exp()).scale(Complex64::new(0.5, 0.0))
    }

    pub fn sinh(&self) -> Jet {
        (self.exp() - (-self.clone()).exp()).scale(Complex64::new(0.5, 0.0))
    }

    pub fn cos(&self) -> Jet {
        self.scale(Complex64::i()).cosh()
    }

    pub fn sin(&self) -> Jet {
        self.scale(Complex64::i()).sinh().scale(-Complex64::i())
    }

    pub fn powi(&self, n: i32) -> Jet {
        let mut acc = Jet::constant(self.base, Complex64::new(1.0, 0.0), self.order());
        let mut sq = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `outer ∘ self`, where `outer` is a jet based at `self.value()`.
    pub fn compose_into(&self, outer: &Jet) -> Jet {
        let n = self.order().min(outer.order());
        let mut t = self.truncate(n);
        t.coeffs[0] = ZERO;
        let mut acc = Jet::constant(self.base, outer.coeffs[n], n);
        for k in (0..n).rev() {
            acc = (acc * t.clone()).add_scalar(outer.coeffs[k]);
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        self.check_base(&rhs);
        let n = self.order().min(rhs.order());
        Jet::new(self.base, (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect())
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(self.base, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        self.check_base(&rhs);
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        Jet::new(self.base, coeffs)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        self.check_base(&rhs);
        let n = self.order().min(rhs.order());
        let mut q = vec![ZERO; n + 1];
        for k in 0..=n {
            let s: Complex64 = (1..=k).map(|j| rhs.coeffs[j] * q[k - j]).sum();
            q[k] = (self.coeffs[k] - s) / rhs.coeffs[0];
        }
        Jet::new(self.base, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .all(|(x, y)| (x - y).norm() <= tol * (1.0 + y.norm()))
    }

    #[test]
    fn exp_series() {
        let z = Jet::variable(c(0.0, 0.0), 6);
        let e = z.exp();
        let mut fact = 1.0;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((e.coeffs[k] - 1.0 / fact).norm() < 1e-15);
        }
    }

    #[test]
    fn field_identities() {
        let base = c(0.3, -0.7);
        let z = Jet::variable(base, 8);
        let one = Jet::constant(base, c(1.0, 0.0), 8);
        let identity = z.cosh() * z.cosh() - z.sinh() * z.sinh();
        assert!(close(&identity, &one, 1e-13));
        let s2c2 = z.sin() * z.sin() + z.cos() * z.cos();
        assert!(close(&s2c2, &one, 1e-13));
        let q = (z.clone() * z.exp()) / z.exp();
        assert!(close(&q, &z, 1e-13));
        assert!(close(&(z.powi(-2) * z.powi(2)), &one, 1e-13));
    }

    #[test]
    fn derivative_and_composition() {
        let base = c(0.5, 0.2);
        let z = Jet::variable(base, 7);
        // d/dz e^{z²} = 2z e^{z²}
        let g = z.powi(2).exp();
        let dg = g.derivative();
        assert!(close(&dg, &(z.scale(c(2.0, 0.0)) * g.truncate(6)), 1e-13));
        // exp ∘ (z²) through compose_into
        let inner = z.powi(2);
        let outer = Jet::variable(inner.value(), 7).exp();
        assert!(close(&inner.compose_into(&outer), &g, 1e-13));
        let t = c(0.01, 0.02);
        assert!((g.eval_offset(t) - (base + t).powi(2).exp()).norm() < 1e-12);
    }
}
