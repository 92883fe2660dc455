//! Proper rotations of 3-space.
//!
//! The rotation about the unit axis `n` by `θ` acts as
//!
//! ```text
//! R(n, θ)(x) = cosθ·x + (1 − cosθ)·⟨x, n⟩·n + sinθ·(x ∧ n)
//! ```
//!
//! This is the rotation induced by conjugation with `V(n, θ)` from
//! [`crate::su2`], so the two axis-angle parametrizations agree with no sign
//! change. The textbook form with `sinθ·(n ∧ x)` is the same map with `n`
//! replaced by `−n`.

use std::ops::Mul;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ApproxEq, Mat3R, Tolerance, UnitVec3, Vec3};
use crate::scalar::Real;
use crate::su2::AxisAngle;

/// A 3×3 real orthogonal matrix with determinant 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3Rot<T> {
    m: Mat3R<T>,
}

/// `M·Mᵀ = Id` and `det M = 1`, both within `tol`.
pub fn is_rotation<T: Real>(m: &Mat3R<T>, tol: T) -> bool {
    orthogonality_residual(m) <= tol && (m.det() - T::one()).abs() <= tol
}

fn orthogonality_residual<T: Real>(m: &Mat3R<T>) -> T {
    (*m * m.transpose()).max_abs_diff(&Mat3R::identity())
}

impl<T: Real> So3Rot<T> {
    pub fn from_matrix(m: Mat3R<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("rotation matrix"));
        }
        if !is_rotation(&m, tol.eps_unit) {
            return Err(Error::NotRotation {
                orthogonality: orthogonality_residual(&m).to_f64().unwrap_or(f64::NAN),
                det: m.det().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat3R<T>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: Mat3R::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat3R<T> {
        &self.m
    }

    pub fn apply(&self, x: Vec3<T>) -> Vec3<T> {
        self.m.apply(x)
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    /// Matrix product, re-orthonormalized by one Gram–Schmidt pass over the
    /// columns when `|R·Rᵀ − Id|` exceeds `eps_eq`.
    pub fn mul_with(&self, other: &Self, tol: &Tolerance<T>) -> Self {
        let m = self.m * other.m;
        if orthogonality_residual(&m) > tol.eps_eq {
            Self {
                m: gram_schmidt(&m),
            }
        } else {
            Self { m }
        }
    }

    /// Axis and angle with `θ ∈ [0, π]`.
    ///
    /// `θ = 0` reports the axis `(0, 0, 1)`. At `θ = π` the axis is only
    /// defined up to sign and the representative with its first nonzero
    /// component positive is returned.
    pub fn to_axis_angle(&self, tol: &Tolerance<T>) -> AxisAngle<T> {
        let m = &self.m.m;
        let half = T::lit(0.5);
        // antisymmetric part encodes sinθ·n
        let w = Vec3::new(m[1][2] - m[2][1], m[2][0] - m[0][2], m[0][1] - m[1][0]).scale(half);
        let cos = (self.m.trace() - T::one()) * half;
        let sin = w.norm();

        if sin <= tol.eps_eq {
            if cos > T::zero() {
                return AxisAngle::new(UnitVec3::e_z(), T::zero());
            }
            let mut n = axis_from_symmetric(&self.m, -T::one());
            let lead = n
                .to_array()
                .into_iter()
                .find(|c| c.abs() > tol.eps_eq)
                .unwrap_or(T::one());
            if lead < T::zero() {
                n = -n;
            }
            return AxisAngle::new(UnitVec3::new_unchecked(n), T::PI());
        }

        let theta = sin.atan2(cos);
        let n = if cos < T::zero() {
            // near π the symmetric part is better conditioned; w fixes the sign
            let n = axis_from_symmetric(&self.m, cos);
            if n.dot(w) < T::zero() {
                -n
            } else {
                n
            }
        } else {
            w.scale(sin.recip())
        };
        AxisAngle::new(UnitVec3::new_unchecked(n), theta)
    }
}

/// Unit axis from `(R + Rᵀ)/2 − cosθ·Id = (1 − cosθ)·n·nᵀ`, up to sign.
fn axis_from_symmetric<T: Real>(r: &Mat3R<T>, cos: T) -> Vec3<T> {
    let m = &r.m;
    let half = T::lit(0.5);
    let k = (T::one() - cos).recip();
    let mut outer = [[T::zero(); 3]; 3];
    for (i, row) in outer.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let sym = (m[i][j] + m[j][i]) * half;
            let diag = if i == j { cos } else { T::zero() };
            *e = (sym - diag) * k;
        }
    }
    let j = (0..3)
        .max_by(|&a, &b| {
            outer[a][a]
                .partial_cmp(&outer[b][b])
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let col = Vec3::new(outer[0][j], outer[1][j], outer[2][j]);
    col.scale(col.norm().recip())
}

fn gram_schmidt<T: Real>(m: &Mat3R<T>) -> Mat3R<T> {
    let c0 = m.col(0);
    let c0 = c0.scale(c0.norm().recip());
    let c1 = m.col(1);
    let c1 = c1 - c0.scale(c0.dot(c1));
    let c1 = c1.scale(c1.norm().recip());
    let c2 = c0.cross(c1);
    Mat3R::from_cols([c0, c1, c2])
}

impl<T: Real> Mul for So3Rot<T> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_with(&other, &Tolerance::default())
    }
}

impl<T: Real> ApproxEq<T> for So3Rot<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        self.m.max_abs_diff(&o.m)
    }
}

impl<T: Real> Serialize for So3Rot<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for So3Rot<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Mat3R::deserialize(d)?;
        Self::from_matrix(m, &Tolerance::default()).map_err(D::Error::custom)
    }
}

/// `cosθ·x + (1 − cosθ)·⟨x, n⟩·n + sinθ·(x ∧ n)`.
pub fn rodrigues_apply<T: Real>(n: UnitVec3<T>, theta: T, x: Vec3<T>) -> Vec3<T> {
    let (sin, cos) = theta.sin_cos();
    let n = n.vec();
    x.scale(cos) + n.scale((T::one() - cos) * x.dot(n)) + x.cross(n).scale(sin)
}

/// Rotation matrix whose columns are the images of the basis vectors.
pub fn from_axis_angle<T: Real>(n: UnitVec3<T>, theta: T) -> So3Rot<T> {
    let cols = [0, 1, 2].map(|j| rodrigues_apply(n, theta, Vec3::basis(j)));
    So3Rot {
        m: Mat3R::from_cols(cols),
    }
}
