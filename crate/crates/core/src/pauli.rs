//! Pauli matrices and the map `n ↦ n⋄σ = n_x·X + n_y·Y + n_z·Z`.
//!
//! `{Id, i·X, i·Y, i·Z}` is a real basis adapted to SU(2): every special
//! unitary operator is `n_I·Id + i·(n_X·X + n_Y·Y + n_Z·Z)` with
//! `(n_I, n_X, n_Y, n_Z)` on the unit 3-sphere ([`PauliCoords`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cx, ApproxEq, Mat2C, Tolerance, Vec3};
use crate::scalar::Real;
use crate::su2::Su2Op;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// Unit vector of a coordinate axis; `None` for the identity.
    pub fn direction<T: Real>(self) -> Option<Vec3<T>> {
        match self {
            PauliAxis::I => None,
            PauliAxis::X => Some(Vec3::basis(0)),
            PauliAxis::Y => Some(Vec3::basis(1)),
            PauliAxis::Z => Some(Vec3::basis(2)),
        }
    }
}

/// `Id`, `X = (0 1; 1 0)`, `Y = (0 −i; i 0)` or `Z = (1 0; 0 −1)`.
pub fn pauli<T: Real>(axis: PauliAxis) -> Mat2C<T> {
    let (z, o) = (T::zero(), T::one());
    match axis {
        PauliAxis::I => Mat2C::identity(),
        PauliAxis::X => Mat2C::new(cx(z, z), cx(o, z), cx(o, z), cx(z, z)),
        PauliAxis::Y => Mat2C::new(cx(z, z), cx(z, -o), cx(z, o), cx(z, z)),
        PauliAxis::Z => Mat2C::new(cx(o, z), cx(z, z), cx(z, z), cx(-o, z)),
    }
}

/// `n⋄σ = (n_z, n_x − i·n_y; n_x + i·n_y, −n_z)`.
///
/// Linear in `n`; no unit constraint. Also written `n∘σ`.
pub fn dot_sigma<T: Real>(n: Vec3<T>) -> Mat2C<T> {
    Mat2C::new(
        cx(n.z, T::zero()),
        cx(n.x, -n.y),
        cx(n.x, n.y),
        cx(-n.z, T::zero()),
    )
}

/// Inverse of [`dot_sigma`] on traceless Hermitian matrices.
pub fn extract_vector<T: Real>(m: &Mat2C<T>, tol: &Tolerance<T>) -> Result<Vec3<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix"));
    }
    let hermitian = m.max_abs_diff(&m.dagger());
    if !(hermitian <= tol.eps_eq) {
        return Err(Error::NotInPauliSpan(format!(
            "not Hermitian (|M - M†| = {:e})",
            hermitian
        )));
    }
    let trace = m.trace().norm();
    if !(trace <= tol.eps_eq) {
        return Err(Error::NotInPauliSpan(format!(
            "nonzero trace (|tr M| = {:e})",
            trace
        )));
    }
    Ok(extract_unchecked(m))
}

pub(crate) fn extract_unchecked<T: Real>(m: &Mat2C<T>) -> Vec3<T> {
    Vec3::new(m.m[1][0].re, m.m[1][0].im, m.m[0][0].re)
}

/// Coordinates of an SU(2) element in the basis `{Id, i·X, i·Y, i·Z}`.
///
/// In the quaternion-like naming `e, v, h, m` one has `e = n_I`, `m = n_X`,
/// `h = n_Y`, `v = n_Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliCoords<T> {
    pub n_i: T,
    pub n_x: T,
    pub n_y: T,
    pub n_z: T,
}

impl<T: Real> PauliCoords<T> {
    /// Validates the S³ constraint and renormalizes within `eps_unit`.
    pub fn new(n_i: T, n_x: T, n_y: T, n_z: T, tol: &Tolerance<T>) -> Result<Self> {
        let c = Self { n_i, n_x, n_y, n_z };
        let arr = c.to_array();
        if arr.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("Pauli coordinates"));
        }
        let norm = arr.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        if (norm - T::one()).abs() > tol.eps_unit {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let k = norm.recip();
        Ok(Self {
            n_i: n_i * k,
            n_x: n_x * k,
            n_y: n_y * k,
            n_z: n_z * k,
        })
    }

    pub fn to_array(self) -> [T; 4] {
        [self.n_i, self.n_x, self.n_y, self.n_z]
    }

    /// The vector part `(n_X, n_Y, n_Z)`.
    pub fn vector(self) -> Vec3<T> {
        Vec3::new(self.n_x, self.n_y, self.n_z)
    }

    /// `n_I·Id + i·(n_X·X + n_Y·Y + n_Z·Z)`.
    pub fn to_matrix(self) -> Mat2C<T> {
        let i = cx(T::zero(), T::one());
        Mat2C::identity().scale_real(self.n_i) + dot_sigma(self.vector()).scale(i)
    }
}

/// Pauli-basis coordinates of `v`.
pub fn pauli_coords<T: Real>(v: &Su2Op<T>) -> PauliCoords<T> {
    // a = n_I + i·n_Z, b = n_Y + i·n_X
    PauliCoords {
        n_i: v.a().re,
        n_x: v.b().im,
        n_y: v.b().re,
        n_z: v.a().im,
    }
}
