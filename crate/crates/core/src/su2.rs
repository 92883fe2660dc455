//! Special unitary 2×2 operators.
//!
//! An element of SU(2) is stored as the complex pair `(a, b)` of its matrix
//! `(a b; −b* a*)`, with `|a|² + |b|² = 1`. The axis-angle parametrization uses
//! the `+i` sign convention throughout:
//!
//! ```text
//! V(n, θ) = exp(+i·(θ/2)·n⋄σ) = cos(θ/2)·Id + i·sin(θ/2)·n⋄σ
//! ```
//!
//! so `V(n, θ)` has period 4π in `θ` and `V(n, θ + 2π) = −V(n, θ)`.

use std::ops::{Mul, Neg};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, SpecialUnitaryFailure};
use crate::linalg::{
    complex_json, cx, finite, ApproxEq, Complex, Mat2C, Tolerance, UnitVec3, Vec3,
};
use crate::pauli::{dot_sigma, pauli_coords, PauliAxis, PauliCoords};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Op<T> {
    a: Complex<T>,
    b: Complex<T>,
}

/// Unit axis plus rotation angle.
///
/// The angle range depends on the producer: `[0, 2π)` for SU(2) extraction,
/// `[0, π]` for SO(3) extraction. `−Id` has no axis and no angle in `[0, 2π)`;
/// it is reported as axis `(0, 0, 1)`, `θ = 2π` with `is_minus_identity` set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AxisAngle<T: Real> {
    pub axis: UnitVec3<T>,
    pub theta: T,
    #[serde(default)]
    pub is_minus_identity: bool,
}

impl<T: Real> AxisAngle<T> {
    pub fn new(axis: UnitVec3<T>, theta: T) -> Self {
        Self {
            axis,
            theta,
            is_minus_identity: false,
        }
    }
}

impl<T: Real> Su2Op<T> {
    /// Builds `(a b; −b* a*)`, renormalizing onto S³ when `|a|² + |b|²` is
    /// within `eps_unit` of 1.
    pub fn new(a: Complex<T>, b: Complex<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !(finite(a) && finite(b)) {
            return Err(Error::NonFinite("SU(2) coefficients"));
        }
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !((norm - T::one()).abs() <= tol.eps_unit) {
            return Err(Error::NotSpecialUnitary(
                SpecialUnitaryFailure::NotUnitary {
                    residual: (norm * norm - T::one()).abs().to_f64().unwrap_or(f64::NAN),
                },
            ));
        }
        Ok(Self::from_parts_unchecked(a, b).renormalized())
    }

    pub(crate) fn from_parts_unchecked(a: Complex<T>, b: Complex<T>) -> Self {
        Self { a, b }
    }

    pub fn identity() -> Self {
        Self {
            a: cx(T::one(), T::zero()),
            b: cx(T::zero(), T::zero()),
        }
    }

    pub fn minus_identity() -> Self {
        -Self::identity()
    }

    pub fn a(&self) -> Complex<T> {
        self.a
    }

    pub fn b(&self) -> Complex<T> {
        self.b
    }

    /// `n_I·Id + i·(n_X·X + n_Y·Y + n_Z·Z)`.
    pub fn from_coords(c: PauliCoords<T>) -> Self {
        Self {
            a: cx(c.n_i, c.n_z),
            b: cx(c.n_y, c.n_x),
        }
    }

    pub fn coords(&self) -> PauliCoords<T> {
        pauli_coords(self)
    }

    pub fn to_matrix(&self) -> Mat2C<T> {
        Mat2C::new(self.a, self.b, -self.b.conj(), self.a.conj())
    }

    /// Accepts `M` when `M†M = Id` and `det M = 1` within `eps_unit`.
    pub fn from_matrix(m: &Mat2C<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        let residual = (m.dagger() * *m).max_abs_diff(&Mat2C::identity());
        if !(residual <= tol.eps_unit) {
            return Err(Error::NotSpecialUnitary(
                SpecialUnitaryFailure::NotUnitary {
                    residual: residual.to_f64().unwrap_or(f64::NAN),
                },
            ));
        }
        let det = m.det();
        if !(det.max_abs_diff(&Complex::new(T::one(), T::zero())) <= tol.eps_unit) {
            return Err(Error::NotSpecialUnitary(
                SpecialUnitaryFailure::Determinant {
                    re: det.re.to_f64().unwrap_or(f64::NAN),
                    im: det.im.to_f64().unwrap_or(f64::NAN),
                },
            ));
        }
        // average the two copies of each coefficient
        let half = T::lit(0.5);
        let a = (m.m[0][0] + m.m[1][1].conj()) * half;
        let b = (m.m[0][1] - m.m[1][0].conj()) * half;
        Ok(Self { a, b }.renormalized())
    }

    pub fn det(&self) -> Complex<T> {
        self.to_matrix().det()
    }

    /// `|a|² + |b|² − 1`.
    pub fn norm_drift(&self) -> T {
        self.a.norm_sqr() + self.b.norm_sqr() - T::one()
    }

    fn renormalized(self) -> Self {
        let k = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt().recip();
        Self {
            a: self.a * k,
            b: self.b * k,
        }
    }

    /// Group product `self · other`, projected back onto S³ when the norm has
    /// drifted by more than `eps_eq`.
    pub fn mul_with(&self, other: &Self, tol: &Tolerance<T>) -> Self {
        let a = self.a * other.a - self.b * other.b.conj();
        let b = self.a * other.b + self.b * other.a.conj();
        let p = Self { a, b };
        if p.norm_drift().abs() > tol.eps_eq {
            p.renormalized()
        } else {
            p
        }
    }

    /// `V† = V⁻¹`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// Axis and angle with `θ ∈ [0, 2π)`.
    ///
    /// When `sin(θ/2) ≤ eps_eq` the axis is undefined and reported as
    /// `(0, 0, 1)`: `+Id` gives `θ = 0`, `−Id` gives `θ = 2π` with
    /// `is_minus_identity` set.
    pub fn to_axis_angle(&self, tol: &Tolerance<T>) -> AxisAngle<T> {
        let c = self.coords();
        let v = c.vector();
        let s = v.norm();
        if s <= tol.eps_eq {
            return if c.n_i >= T::zero() {
                AxisAngle::new(UnitVec3::e_z(), T::zero())
            } else {
                AxisAngle {
                    axis: UnitVec3::e_z(),
                    theta: T::TAU(),
                    is_minus_identity: true,
                }
            };
        }
        let theta = T::lit(2.0) * s.atan2(c.n_i);
        AxisAngle::new(UnitVec3::new_unchecked(v.scale(s.recip())), theta)
    }

    pub fn approx_eq_up_to_sign(&self, other: &Self, tol: T) -> bool {
        self.approx_eq(other, tol) || self.approx_eq(&-*other, tol)
    }
}

impl<T: Real> Mul for Su2Op<T> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_with(&other, &Tolerance::default())
    }
}

impl<T: Real> Neg for Su2Op<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<T: Real> ApproxEq<T> for Su2Op<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        self.a.max_abs_diff(&o.a).max(self.b.max_abs_diff(&o.b))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct Su2Repr<T: Real> {
    #[serde(with = "complex_json")]
    a: Complex<T>,
    #[serde(with = "complex_json")]
    b: Complex<T>,
}

impl<T: Real> Serialize for Su2Op<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Su2Repr {
            a: self.a,
            b: self.b,
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Su2Op<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Su2Repr::<T>::deserialize(d)?;
        Self::new(r.a, r.b, &Tolerance::default()).map_err(D::Error::custom)
    }
}

/// `V(n, θ) = cos(θ/2)·Id + i·sin(θ/2)·n⋄σ`.
///
/// `θ` is reduced modulo 4π first (the period of SU(2)), so `θ` and `θ + 2π`
/// remain distinct elements `V` and `−V`. `θ` must be finite.
pub fn from_axis_angle<T: Real>(n: UnitVec3<T>, theta: T) -> Su2Op<T> {
    let period = T::lit(2.0) * T::TAU();
    let half = T::lit(0.5) * reduce(theta, period);
    let (sin, cos) = half.sin_cos();
    Su2Op {
        a: cx(cos, n.z * sin),
        b: cx(n.y * sin, n.x * sin),
    }
}

/// Like [`from_axis_angle`] for an axis that has not been validated yet.
pub fn from_axis_vector<T: Real>(n: Vec3<T>, theta: T, tol: &Tolerance<T>) -> Result<Su2Op<T>> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    Ok(from_axis_angle(UnitVec3::try_new(n, tol)?, theta))
}

fn reduce<T: Real>(theta: T, period: T) -> T {
    let r = theta % period;
    if r < T::zero() {
        r + period
    } else {
        r
    }
}

/// The named gates `R_X`, `R_Y`, `R_Z` in closed form.
///
/// ```text
/// R_X(θ) = (c  is; is  c)    R_Y(θ) = (c  s; −s  c)    R_Z(θ) = diag(e^{iθ/2}, e^{−iθ/2})
/// ```
/// with `c = cos(θ/2)`, `s = sin(θ/2)`. `PauliAxis::I` is rejected.
pub fn rotation_gate<T: Real>(axis: PauliAxis, theta: T) -> Result<Su2Op<T>> {
    let (s, c) = (T::lit(0.5) * theta).sin_cos();
    let z = T::zero();
    let (a, b) = match axis {
        PauliAxis::X => (cx(c, z), cx(z, s)),
        PauliAxis::Y => (cx(c, z), cx(s, z)),
        PauliAxis::Z => (cx(c, s), cx(z, z)),
        PauliAxis::I => {
            return Err(Error::OutOfRange {
                what: "rotation gate axis (identity)",
                value: 0.0,
            })
        }
    };
    Ok(Su2Op { a, b })
}

/// The axial symmetry `i·n⋄σ = V(n, π)`.
pub fn reflection<T: Real>(n: UnitVec3<T>) -> Su2Op<T> {
    Su2Op {
        a: cx(T::zero(), n.z),
        b: cx(n.y, n.x),
    }
}

/// Truncated power series `Σ_{k<terms} (i·θ/2·n⋄σ)^k / k!`.
///
/// Independent of the closed form in [`from_axis_angle`]. The angle is first
/// shifted by a multiple of the 4π period into `[−2π, 2π]`, which keeps 30
/// terms accurate to well below 1e-12.
pub fn exp_series<T: Real>(n: UnitVec3<T>, theta: T, terms: usize) -> Mat2C<T> {
    let period = T::lit(2.0) * T::TAU();
    let shifted = theta - period * (theta / period).round();
    let generator = dot_sigma(n.vec()).scale(cx(T::zero(), T::lit(0.5) * shifted));
    let mut term = Mat2C::identity();
    let mut sum = Mat2C::zero();
    for k in 0..terms {
        if k > 0 {
            term = (term * generator).scale_real(T::from_usize(k).unwrap().recip());
        }
        sum = sum + term;
    }
    sum
}
