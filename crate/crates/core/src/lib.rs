//! Spin-1/2 rotations: Pauli algebra, SU(2), SO(3), and the double cover
//! between them, plus a small operator DSL and a randomized identity checker.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32` or `f64`). The
//! aliases below fix the scalar to `f64`, which is what the DSL, the
//! verification suite and the command-line tool use.

// `!(x <= tol)` is used on purpose so that NaN fails every bound.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod cover;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod scalar;
pub mod script;
pub mod so3;
pub mod su2;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ApproxEq, Complex};
pub use scalar::Real;

pub type Tolerance = linalg::Tolerance<f64>;
pub type Vec3 = linalg::Vec3<f64>;
pub type UnitVec3 = linalg::UnitVec3<f64>;
pub type Mat2C = linalg::Mat2C<f64>;
pub type Mat3R = linalg::Mat3R<f64>;
pub type Su2Op = su2::Su2Op<f64>;
pub type So3Rot = so3::So3Rot<f64>;
pub type AxisAngle = su2::AxisAngle<f64>;
pub type PauliCoords = pauli::PauliCoords<f64>;
pub type QubitState = bloch::QubitState<f64>;
pub type Spherical = bloch::Spherical<f64>;
