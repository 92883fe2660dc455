//! Fixed-shape complex and real linear algebra.
//!
//! Everything here is small and `Copy`: 3-vectors, 2×2 complex matrices and
//! 3×3 real matrices, all stored row-major. The single [`Tolerance`] record
//! defined here is threaded explicitly through every module that has to decide
//! whether a floating point value is "close enough".

use std::ops::{Add, Deref, Mul, Neg, Sub};

pub use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Slack used when validating inputs (`eps_unit`) and when checking identities
/// (`eps_eq`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T> {
    pub eps_unit: T,
    pub eps_eq: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(eps_unit: T, eps_eq: T) -> Result<Self> {
        if eps_eq > T::zero() && eps_eq <= eps_unit && eps_unit < T::one() {
            Ok(Self { eps_unit, eps_eq })
        } else {
            Err(Error::InvalidTolerance)
        }
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            eps_unit: T::default_eps_unit(),
            eps_eq: T::default_eps_eq(),
        }
    }
}

/// Entrywise closeness, measured as the largest absolute difference.
pub trait ApproxEq<T: Real> {
    fn max_abs_diff(&self, other: &Self) -> T;

    fn approx_eq(&self, other: &Self, tol: T) -> bool {
        // NaN never compares close
        self.max_abs_diff(other) <= tol
    }
}

impl<T: Real> ApproxEq<T> for Complex<T> {
    fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).norm()
    }
}

impl<T: Real> ApproxEq<T> for T {
    fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).abs()
    }
}

#[inline]
pub(crate) fn finite<T: Real>(c: Complex<T>) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

fn max_of<T: Real>(it: impl IntoIterator<Item = T>) -> T {
    it.into_iter().fold(T::zero(), |acc, x| {
        if x.is_nan() || acc.is_nan() {
            T::nan()
        } else {
            acc.max(x)
        }
    })
}

// ---------------------------------------------------------------------------
// Vec3

/// A real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Standard basis vector `e_i` for `i` in `0..3`.
    pub fn basis(i: usize) -> Self {
        let mut a = [T::zero(); 3];
        a[i] = T::one();
        Self::from_array(a)
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Right-handed cross product `self ∧ other`.
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn get(self, i: usize) -> T {
        self.to_array()[i]
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> ApproxEq<T> for Vec3<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        max_of([
            (self.x - o.x).abs(),
            (self.y - o.y).abs(),
            (self.z - o.z).abs(),
        ])
    }
}

impl<T: Real> Serialize for Vec3<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Vec3<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Self::from_array(<[T; 3]>::deserialize(d)?);
        if !v.is_finite() {
            return Err(D::Error::custom("non-finite vector component"));
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// UnitVec3

/// A point on the unit sphere S².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3<T>(Vec3<T>);

impl<T: Real> UnitVec3<T> {
    /// Accepts `v` when its norm is within `eps_unit` of 1 and renormalizes it.
    pub fn try_new(v: Vec3<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("axis"));
        }
        let norm = v.norm();
        if (norm - T::one()).abs() > tol.eps_unit {
            return Err(Error::NonUnitAxis {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self(v.scale(norm.recip())))
    }

    /// Scales any nonzero finite vector onto the sphere. Vectors with norm at
    /// most `eps_unit` are rejected.
    pub fn normalize(v: Vec3<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("axis"));
        }
        let norm = v.norm();
        if norm <= tol.eps_unit {
            return Err(Error::ZeroAxis);
        }
        Ok(Self(v.scale(norm.recip())))
    }

    /// Wraps a vector the caller has already normalized.
    pub(crate) fn new_unchecked(v: Vec3<T>) -> Self {
        Self(v)
    }

    pub fn e_x() -> Self {
        Self(Vec3::basis(0))
    }

    pub fn e_y() -> Self {
        Self(Vec3::basis(1))
    }

    pub fn e_z() -> Self {
        Self(Vec3::basis(2))
    }

    pub fn basis(i: usize) -> Self {
        Self(Vec3::basis(i))
    }

    pub fn vec(self) -> Vec3<T> {
        self.0
    }
}

impl<T: Real> Deref for UnitVec3<T> {
    type Target = Vec3<T>;
    fn deref(&self) -> &Vec3<T> {
        &self.0
    }
}

impl<T: Real> Neg for UnitVec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl<T: Real> ApproxEq<T> for UnitVec3<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        self.0.max_abs_diff(&o.0)
    }
}

impl<T: Real> Serialize for UnitVec3<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for UnitVec3<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec3::deserialize(d)?;
        Self::try_new(v, &Tolerance::default()).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Complex JSON encoding: {"re": .., "im": ..}

#[derive(Serialize, Deserialize)]
struct ComplexRepr<T> {
    re: T,
    im: T,
}

pub(crate) mod complex_json {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(
        c: &Complex<T>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ComplexRepr { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex<T>, D::Error> {
        let r = ComplexRepr::<T>::deserialize(d)?;
        if !(r.re.is_finite() && r.im.is_finite()) {
            return Err(D::Error::custom("non-finite complex component"));
        }
        Ok(Complex::new(r.re, r.im))
    }
}

/// Serde wrapper giving a bare [`Complex`] the repo-wide `{"re", "im"}` form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "")]
pub struct ComplexJson<T: Real>(#[serde(with = "complex_json")] pub Complex<T>);

// ---------------------------------------------------------------------------
// Mat2C

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2C<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn identity() -> Self {
        let (o, z) = (
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        );
        Self::new(o, z, z, o)
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        self.map(|e| e * k)
    }

    pub fn scale_real(&self, k: T) -> Self {
        self.map(|e| e * k)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|e| finite(*e))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Outer product `u v†`.
    pub fn outer(u: [Complex<T>; 2], v: [Complex<T>; 2]) -> Self {
        Self::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let m = &self.m;
        Self::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }

    fn zip(&self, o: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let (a, b) = (&self.m, &o.m);
        Self::new(
            f(a[0][0], b[0][0]),
            f(a[0][1], b[0][1]),
            f(a[1][0], b[1][0]),
            f(a[1][1], b[1][1]),
        )
    }
}

impl<T: Real> Mul for Mat2C<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for Mat2C<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.zip(&o, |x, y| x + y)
    }
}

impl<T: Real> Sub for Mat2C<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.zip(&o, |x, y| x - y)
    }
}

impl<T: Real> Neg for Mat2C<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|e| -e)
    }
}

impl<T: Real> ApproxEq<T> for Mat2C<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        max_of(
            self.m
                .iter()
                .flatten()
                .zip(o.m.iter().flatten())
                .map(|(x, y)| (*x - *y).norm()),
        )
    }
}

impl<T: Real> Serialize for Mat2C<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.m.map(|row| row.map(ComplexJson));
        rows.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Mat2C<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[ComplexJson<T>; 2]; 2]>::deserialize(d)?;
        Ok(Self {
            m: rows.map(|row| row.map(|c| c.0)),
        })
    }
}

// ---------------------------------------------------------------------------
// Mat3R

/// A 3×3 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3R<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> Mat3R<T> {
    pub fn from_rows(m: [[T; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn from_cols(c: [Vec3<T>; 3]) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (j, col) in c.iter().enumerate() {
            for (i, v) in col.to_array().into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        Self { m }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one(), T::one())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero();
        Self {
            m: [[a, z, z], [z, b, z], [z, z, c]],
        }
    }

    pub fn col(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn transpose(&self) -> Self {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i];
            }
        }
        Self { m }
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> T {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn apply(&self, v: Vec3<T>) -> Vec3<T> {
        let r = |i: usize| self.m[i][0] * v.x + self.m[i][1] * v.y + self.m[i][2] * v.z;
        Vec3::new(r(0), r(1), r(2))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|e| e.is_finite())
    }
}

impl<T: Real> Mul for Mat3R<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).fold(T::zero(), |acc, k| acc + self.m[i][k] * o.m[k][j]);
            }
        }
        Self { m }
    }
}

impl<T: Real> ApproxEq<T> for Mat3R<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        max_of(
            self.m
                .iter()
                .flatten()
                .zip(o.m.iter().flatten())
                .map(|(x, y)| (*x - *y).abs()),
        )
    }
}
