//! Lorentzian linear algebra in R^{3,1}.
//!
//! Points of hyperbolic space are future unit timelike vectors, oriented
//! planes (equivalently disks in the Riemann sphere) are unit spacelike
//! vectors, and ideal points are future null rays. The null lift of a finite
//! `z = a + ib` is fixed once and for all as
//!
//! ```text
//! ℓ(z) = (2a, 2b, 1 − |z|², 1 + |z|²),    ℓ(∞) = (0, 0, −1, 1)
//! ```
//!
//! and every sign convention downstream follows from it. `ℓ(∞)` is also the
//! lift of `w = 0` in the chart `w = 1/z`, so area densities at infinity are
//! always reported in that chart.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{GeomError, Result};

/// Default tolerance for clamping and classification.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Tolerances used by the classification routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Clamp band for `arccosh`/`arcsin` style arguments.
    pub clamp: f64,
    /// Width of the boundary band in membership tests.
    pub boundary: f64,
    /// Allowed defect of `⟨x,v⟩ = 0, ⟨v,v⟩ = 1` for unit tangents.
    pub tangent: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            clamp: DEFAULT_TOL,
            boundary: 1e-10,
            tangent: 1e-10,
        }
    }
}

/// A vector of R^{3,1} with inner product `x1y1 + x2y2 + x3y3 − x4y4`.
#[derive(Clone, Copy, PartialEq)]
pub struct MinkowskiVec(pub Vector4<f64>);

impl MinkowskiVec {
    #[inline]
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        MinkowskiVec(Vector4::new(x1, x2, x3, x4))
    }

    #[inline]
    pub fn zero() -> Self {
        MinkowskiVec(Vector4::zeros())
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        MinkowskiVec::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    #[inline]
    pub fn inner(&self, other: &MinkowskiVec) -> f64 {
        minkowski_inner(self, other)
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Largest absolute coordinate, used to scale tolerances.
    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Minkowski-orthogonal complement of three vectors: the vector `n` with
    /// `⟨n, a⟩ = ⟨n, b⟩ = ⟨n, c⟩ = 0`, unnormalized.
    pub fn orthogonal_to(a: &MinkowskiVec, b: &MinkowskiVec, c: &MinkowskiVec) -> MinkowskiVec {
        // Euclidean generalized cross product of J·a, J·b, J·c with J = diag(1,1,1,−1).
        let rows = [a.lowered(), b.lowered(), c.lowered()];
        let mut out = [0.0; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..4).filter(|&j| j != k).collect();
            let m = nalgebra::Matrix3::from_fn(|r, s| rows[r][cols[s]]);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *slot = sign * m.determinant();
        }
        MinkowskiVec::from_array(out)
    }

    #[inline]
    fn lowered(&self) -> [f64; 4] {
        [self.0[0], self.0[1], self.0[2], -self.0[3]]
    }
}

impl fmt::Debug for MinkowskiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.12}, {:.12}, {:.12}, {:.12})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl Index<usize> for MinkowskiVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for MinkowskiVec {
    type Output = MinkowskiVec;
    fn add(self, rhs: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec(self.0 + rhs.0)
    }
}

impl AddAssign for MinkowskiVec {
    fn add_assign(&mut self, rhs: MinkowskiVec) {
        self.0 += rhs.0;
    }
}

impl Sub for MinkowskiVec {
    type Output = MinkowskiVec;
    fn sub(self, rhs: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec(self.0 - rhs.0)
    }
}

impl Neg for MinkowskiVec {
    type Output = MinkowskiVec;
    fn neg(self) -> MinkowskiVec {
        MinkowskiVec(-self.0)
    }
}

impl Mul<f64> for MinkowskiVec {
    type Output = MinkowskiVec;
    fn mul(self, rhs: f64) -> MinkowskiVec {
        MinkowskiVec(self.0 * rhs)
    }
}

impl Mul<MinkowskiVec> for f64 {
    type Output = MinkowskiVec;
    fn mul(self, rhs: MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec(rhs.0 * self)
    }
}

/// `u1v1 + u2v2 + u3v3 − u4v4`.
#[inline]
pub fn minkowski_inner(u: &MinkowskiVec, v: &MinkowskiVec) -> f64 {
    u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// A point of hyperbolic 3-space on the future sheet of the hyperboloid.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct HPoint(MinkowskiVec);

impl HPoint {
    /// Validates `⟨v,v⟩ = −1` (relative to the size of `v`) and `x4 > 0`.
    pub fn new(v: MinkowskiVec) -> Result<HPoint> {
        let scale = v.max_abs().max(1.0);
        if v[3] <= 0.0 || (v.norm_sq() + 1.0).abs() > DEFAULT_TOL * scale * scale {
            return Err(GeomError::OutsideModel("hyperboloid"));
        }
        Ok(HPoint(v))
    }

    /// Rescales a future timelike vector onto the hyperboloid.
    pub fn normalize(v: MinkowskiVec) -> Result<HPoint> {
        let n = v.norm_sq();
        if n >= 0.0 || v[3] <= 0.0 {
            return Err(GeomError::OutsideModel("hyperboloid"));
        }
        Ok(HPoint(v * (1.0 / (-n).sqrt())))
    }

    /// The point `(0, 0, 0, 1)`.
    pub fn basepoint() -> HPoint {
        HPoint(MinkowskiVec::new(0.0, 0.0, 0.0, 1.0))
    }

    #[inline]
    pub fn vec(&self) -> MinkowskiVec {
        self.0
    }

    /// Upper half-space point `(z, h)`, anchored so that `(0, 1)` is the
    /// basepoint and the boundary point `z` is the ideal point `z`.
    pub fn from_uhs(z: Complex64, h: f64) -> Result<HPoint> {
        if !(h > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(GeomError::OutsideModel("upper half-space"));
        }
        let s = z.norm_sqr() + h * h;
        Ok(HPoint(MinkowskiVec::new(
            z.re / h,
            z.im / h,
            (1.0 - s) / (2.0 * h),
            (1.0 + s) / (2.0 * h),
        )))
    }

    /// Inverse of [`HPoint::from_uhs`].
    pub fn to_uhs(&self) -> (Complex64, f64) {
        let v = self.0;
        let h = 1.0 / (v[3] + v[2]);
        (Complex64::new(v[0] * h, v[1] * h), h)
    }

    pub fn from_klein(k: [f64; 3]) -> Result<HPoint> {
        let r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if r2 >= 1.0 {
            return Err(GeomError::OutsideModel("Klein ball"));
        }
        let w = 1.0 / (1.0 - r2).sqrt();
        Ok(HPoint(MinkowskiVec::new(k[0] * w, k[1] * w, k[2] * w, w)))
    }

    pub fn to_klein(&self) -> [f64; 3] {
        let v = self.0;
        [v[0] / v[3], v[1] / v[3], v[2] / v[3]]
    }

    pub fn distance(&self, other: &HPoint) -> f64 {
        hyperbolic_distance(self, other)
    }

    /// Projects an ambient vector onto the tangent space at this point.
    pub fn tangent_part(&self, w: &MinkowskiVec) -> MinkowskiVec {
        *w + self.0 * w.inner(&self.0)
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum IdealPoint {
    Finite(Complex64),
    Infinity,
}

impl IdealPoint {
    #[inline]
    pub fn finite(re: f64, im: f64) -> IdealPoint {
        IdealPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, IdealPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            IdealPoint::Finite(z) => Some(*z),
            IdealPoint::Infinity => None,
        }
    }

    /// Point of the unit sphere under stereographic projection, `ℓ(z)_{1..3}/ℓ(z)_4`.
    pub fn sphere_point(&self) -> [f64; 3] {
        let l = ideal_lift(*self);
        [l[0] / l[3], l[1] / l[3], l[2] / l[3]]
    }

    /// Chordal distance on the unit sphere.
    pub fn chordal_distance(&self, other: &IdealPoint) -> f64 {
        let a = self.sphere_point();
        let b = other.sphere_point();
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

impl From<Complex64> for IdealPoint {
    fn from(z: Complex64) -> IdealPoint {
        IdealPoint::Finite(z)
    }
}

/// Null lift of an ideal point.
pub fn ideal_lift(z: IdealPoint) -> MinkowskiVec {
    match z {
        IdealPoint::Finite(z) => {
            let r2 = z.norm_sqr();
            MinkowskiVec::new(2.0 * z.re, 2.0 * z.im, 1.0 - r2, 1.0 + r2)
        }
        IdealPoint::Infinity => MinkowskiVec::new(0.0, 0.0, -1.0, 1.0),
    }
}

/// Recovers the ideal point of a future null (or nearly null) direction.
/// Any positive rescaling of a lift is accepted.
pub fn ideal_point_of_null(v: &MinkowskiVec) -> Result<IdealPoint> {
    let scale = v.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return Err(GeomError::Degenerate("zero vector has no ideal point".into()));
    }
    let denom = v[3] + v[2];
    if denom.abs() <= DEFAULT_TOL * scale {
        return Ok(IdealPoint::Infinity);
    }
    Ok(IdealPoint::Finite(Complex64::new(v[0], v[1]) / denom))
}

/// `arccosh(−⟨x,y⟩)`, with the argument clamped to `[1, ∞)`.
pub fn hyperbolic_distance(x: &HPoint, y: &HPoint) -> f64 {
    let c = -x.0.inner(&y.0);
    // Near the diagonal use the chord, which keeps full relative precision.
    let d = x.0 - y.0;
    let chord = d.norm_sq();
    if c < 1.5 && chord >= 0.0 {
        return 2.0 * (chord.sqrt() / 2.0).asinh();
    }
    c.max(1.0).acosh()
}

/// Validates that `v` is a unit tangent vector at `x`.
pub fn check_unit_tangent(x: &HPoint, v: &MinkowskiVec, tol: f64) -> Result<()> {
    let scale = x.0.max_abs().max(v.max_abs()).max(1.0);
    let defect = x.0.inner(v).abs().max((v.norm_sq() - 1.0).abs());
    if defect > tol * scale * scale {
        return Err(GeomError::BadTangent(defect));
    }
    Ok(())
}

/// `x cosh t + v sinh t` for a unit tangent `v` at `x`.
pub fn geodesic_point(x: &HPoint, v: &MinkowskiVec, t: f64) -> Result<HPoint> {
    check_unit_tangent(x, v, Tolerances::default().tangent)?;
    Ok(geodesic_point_unchecked(x, v, t))
}

#[inline]
pub(crate) fn geodesic_point_unchecked(x: &HPoint, v: &MinkowskiVec, t: f64) -> HPoint {
    HPoint(x.0 * t.cosh() + *v * t.sinh())
}

/// Ideal endpoint of the geodesic ray leaving `x` with unit velocity `v`.
pub fn horizon(x: &HPoint, v: &MinkowskiVec) -> Result<IdealPoint> {
    check_unit_tangent(x, v, Tolerances::default().tangent)?;
    ideal_point_of_null(&(x.0 + *v))
}

/// A Möbius transformation `z ↦ (az + b)/(cz + d)` normalized to `ad − bc = 1`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<MobiusMap> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if det.norm() <= 1e-14 * scale * scale || !det.is_finite() {
            return Err(GeomError::Degenerate("Möbius map with vanishing determinant".into()));
        }
        let k = det.sqrt().inv();
        Ok(MobiusMap {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> MobiusMap {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn translation(t: Complex64) -> MobiusMap {
        MobiusMap {
            b: t,
            ..MobiusMap::identity()
        }
    }

    /// `z ↦ λ z`, for `λ ≠ 0`.
    pub fn scaling(lambda: Complex64) -> Result<MobiusMap> {
        MobiusMap::new(
            lambda,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> MobiusMap {
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap {
            a: zero,
            b: i,
            c: i,
            d: zero,
        }
    }

    /// The map sending `z1 ↦ 0`, `z2 ↦ 1`, `z3 ↦ ∞`.
    pub fn from_three_points(z1: IdealPoint, z2: IdealPoint, z3: IdealPoint) -> Result<MobiusMap> {
        use IdealPoint::*;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match (z1, z2, z3) {
            (Infinity, Finite(z2), Finite(z3)) => MobiusMap::new(zero, z2 - z3, one, -z3),
            (Finite(z1), Infinity, Finite(z3)) => MobiusMap::new(one, -z1, one, -z3),
            (Finite(z1), Finite(z2), Infinity) => MobiusMap::new(one, -z1, zero, z2 - z1),
            (Finite(z1), Finite(z2), Finite(z3)) => MobiusMap::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)),
            _ => Err(GeomError::Degenerate("repeated point".into())),
        }
    }

    pub fn apply(&self, z: IdealPoint) -> IdealPoint {
        match z {
            IdealPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * z + self.b) / den)
                }
            }
            IdealPoint::Infinity if self.c == Complex64::new(0.0, 0.0) => IdealPoint::Infinity,
            IdealPoint::Infinity => IdealPoint::Finite(self.a / self.c),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `m′(z) = 1/(cz + d)²` for finite `z` with finite image.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let den = self.c * z + self.d;
        if den.norm() == 0.0 {
            return Err(GeomError::MobiusPole);
        }
        Ok((den * den).inv())
    }

    /// `|m′|` at `z` measured in the standard charts: `z` itself for finite
    /// points and `1/z` at infinity, on both source and target.
    pub fn conformal_factor(&self, z: IdealPoint) -> f64 {
        // L·ℓ(z) = ℓ(m z) / |m′(z)|
        let lifted = self.lift().apply(&ideal_lift(z));
        ideal_lift(self.apply(z))[3] / lifted[3]
    }

    /// The Lorentz transformation inducing this map on the ideal boundary.
    pub fn lift(&self) -> LorentzMatrix {
        let g = Matrix2::new(self.a, self.b, self.c, self.d);
        let gh = g.adjoint();
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            let h = hermitian_of(&MinkowskiVec::from_array(e));
            let img = g * h * gh;
            let v = vec_of_hermitian(&img);
            for r in 0..4 {
                m[(r, k)] = v[r];
            }
        }
        LorentzMatrix(m)
    }
}

// ℓ(z) ↔ ½·[[x4 − x3, x1 + i x2], [x1 − i x2, x4 + x3]] = (z,1)(z,1)*, up to scale.
fn hermitian_of(x: &MinkowskiVec) -> Matrix2<Complex64> {
    let half = 0.5;
    Matrix2::new(
        Complex64::new(half * (x[3] - x[2]), 0.0),
        Complex64::new(half * x[0], half * x[1]),
        Complex64::new(half * x[0], -half * x[1]),
        Complex64::new(half * (x[3] + x[2]), 0.0),
    )
}

fn vec_of_hermitian(h: &Matrix2<Complex64>) -> MinkowskiVec {
    let h11 = h[(0, 0)].re;
    let h22 = h[(1, 1)].re;
    let h12 = h[(0, 1)];
    MinkowskiVec::new(2.0 * h12.re, 2.0 * h12.im, h22 - h11, h22 + h11)
}

/// A 4×4 matrix preserving the Minkowski form.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> LorentzMatrix {
        LorentzMatrix(Matrix4::identity())
    }

    #[inline]
    pub fn apply(&self, v: &MinkowskiVec) -> MinkowskiVec {
        MinkowskiVec(self.0 * v.0)
    }

    pub fn apply_point(&self, x: &HPoint) -> HPoint {
        HPoint(self.apply(&x.0))
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * other.0)
    }

    /// Largest entry of `LᵀJL − J`.
    pub fn form_defect(&self) -> f64 {
        let j = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
        (self.0.transpose() * j * self.0 - j).amax()
    }

    /// Boost of rapidity `t` along the `x1` axis.
    pub fn boost_x1(t: f64) -> LorentzMatrix {
        let (s, c) = (t.sinh(), t.cosh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = c;
        m[(0, 3)] = s;
        m[(3, 0)] = s;
        m[(3, 3)] = c;
        LorentzMatrix(m)
    }
}

/// Models of hyperbolic space supported by [`model_convert`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    Hyperboloid,
    KleinBall,
    UpperHalfSpace,
}

/// A point expressed in one of the models.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ModelPoint {
    Hyperboloid(MinkowskiVec),
    Klein([f64; 3]),
    UpperHalfSpace { z: Complex64, h: f64 },
}

impl ModelPoint {
    pub fn model(&self) -> Model {
        match self {
            ModelPoint::Hyperboloid(_) => Model::Hyperboloid,
            ModelPoint::Klein(_) => Model::KleinBall,
            ModelPoint::UpperHalfSpace { .. } => Model::UpperHalfSpace,
        }
    }

    pub fn to_hpoint(&self) -> Result<HPoint> {
        match *self {
            ModelPoint::Hyperboloid(v) => HPoint::new(v),
            ModelPoint::Klein(k) => HPoint::from_klein(k),
            ModelPoint::UpperHalfSpace { z, h } => HPoint::from_uhs(z, h),
        }
    }
}

impl From<HPoint> for ModelPoint {
    fn from(x: HPoint) -> ModelPoint {
        ModelPoint::Hyperboloid(x.vec())
    }
}

/// Converts a point between models. The source model is the variant of `p`.
pub fn model_convert(p: &ModelPoint, to: Model) -> Result<ModelPoint> {
    let x = p.to_hpoint()?;
    Ok(match to {
        Model::Hyperboloid => ModelPoint::Hyperboloid(x.vec()),
        Model::KleinBall => ModelPoint::Klein(x.to_klein()),
        Model::UpperHalfSpace => {
            let (z, h) = x.to_uhs();
            ModelPoint::UpperHalfSpace { z, h }
        }
    })
}
