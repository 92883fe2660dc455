//! Pure qubit states on the Bloch sphere.
//!
//! A direction `n = (sinθ·cosφ, sinθ·sinφ, cosθ)` labels the +1 eigenvector
//! of `n⋄σ`:
//!
//! ```text
//! |↑_n⟩ = (cos θ/2, e^{iφ}·sin θ/2)        |↓_n⟩ = (e^{−iφ}·sin θ/2, −cos θ/2)
//! ```
//!
//! States are kept in a canonical global phase (first significant amplitude
//! real and non-negative) so that equal rays compare equal.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{complex_json, cx, finite, ApproxEq, Complex, Tolerance, UnitVec3, Vec3};
use crate::pauli::{pauli, PauliAxis};
use crate::scalar::Real;

/// Polar angle `theta ∈ [0, π]` and azimuth `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spherical<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> Spherical<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::OutOfRange {
                what: "polar angle",
                value: theta.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(phi >= T::zero() && phi < T::TAU()) {
            return Err(Error::OutOfRange {
                what: "azimuth",
                value: phi.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { theta, phi })
    }
}

/// `(sinθ·cosφ, sinθ·sinφ, cosθ)`.
pub fn unit_from_spherical<T: Real>(s: Spherical<T>) -> UnitVec3<T> {
    let (st, ct) = s.theta.sin_cos();
    let (sp, cp) = s.phi.sin_cos();
    UnitVec3::new_unchecked(Vec3::new(st * cp, st * sp, ct))
}

/// Inverse of [`unit_from_spherical`]; `phi = 0` at the poles.
pub fn spherical_from_unit<T: Real>(n: UnitVec3<T>, tol: &Tolerance<T>) -> Spherical<T> {
    let rho = n.x.hypot(n.y);
    let theta = rho.atan2(n.z);
    if theta.sin() <= tol.eps_eq {
        return Spherical {
            theta,
            phi: T::zero(),
        };
    }
    let mut phi = n.y.atan2(n.x);
    if phi < T::zero() {
        phi = phi + T::TAU();
    }
    // -0.0 + 2π rounds up to 2π
    if phi >= T::TAU() {
        phi = T::zero();
    }
    Spherical { theta, phi }
}

/// A normalized vector of C² in canonical global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T> {
    c0: Complex<T>,
    c1: Complex<T>,
}

impl<T: Real> QubitState<T> {
    /// Normalizes (within `eps_unit`) and canonicalizes the phase.
    pub fn new(c0: Complex<T>, c1: Complex<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !(finite(c0) && finite(c1)) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !((norm - T::one()).abs() <= tol.eps_unit) {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let k = norm.recip();
        Ok(Self::canonical(c0 * k, c1 * k, tol))
    }

    fn canonical(c0: Complex<T>, c1: Complex<T>, tol: &Tolerance<T>) -> Self {
        let (lead, first) = if c0.norm() > tol.eps_eq {
            (c0, true)
        } else {
            (c1, false)
        };
        let r = lead.norm();
        let rot = lead.conj() / r;
        let (mut c0, mut c1) = (c0 * rot, c1 * rot);
        if first {
            c0 = cx(r, T::zero());
        } else {
            c1 = cx(r, T::zero());
        }
        Self { c0, c1 }
    }

    /// `|0⟩ = (1, 0)`.
    pub fn zero() -> Self {
        Self {
            c0: cx(T::one(), T::zero()),
            c1: cx(T::zero(), T::zero()),
        }
    }

    /// `|1⟩ = (0, 1)`.
    pub fn one() -> Self {
        Self {
            c0: cx(T::zero(), T::zero()),
            c1: cx(T::one(), T::zero()),
        }
    }

    pub fn c0(&self) -> Complex<T> {
        self.c0
    }

    pub fn c1(&self) -> Complex<T> {
        self.c1
    }

    pub fn amplitudes(&self) -> [Complex<T>; 2] {
        [self.c0, self.c1]
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }
}

impl<T: Real> ApproxEq<T> for QubitState<T> {
    fn max_abs_diff(&self, o: &Self) -> T {
        self.c0.max_abs_diff(&o.c0).max(self.c1.max_abs_diff(&o.c1))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct StateRepr<T: Real> {
    #[serde(with = "complex_json")]
    c0: Complex<T>,
    #[serde(with = "complex_json")]
    c1: Complex<T>,
}

impl<T: Real> Serialize for QubitState<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateRepr {
            c0: self.c0,
            c1: self.c1,
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for QubitState<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = StateRepr::<T>::deserialize(d)?;
        Self::new(r.c0, r.c1, &Tolerance::default()).map_err(D::Error::custom)
    }
}

/// +1 eigenvector of `n⋄σ`.
pub fn eig_up<T: Real>(n: UnitVec3<T>, tol: &Tolerance<T>) -> QubitState<T> {
    let s = spherical_from_unit(n, tol);
    let (sh, ch) = (T::lit(0.5) * s.theta).sin_cos();
    let phase = Complex::from_polar(T::one(), s.phi);
    QubitState::canonical(cx(ch, T::zero()), phase * sh, tol)
}

/// −1 eigenvector of `n⋄σ`.
pub fn eig_down<T: Real>(n: UnitVec3<T>, tol: &Tolerance<T>) -> QubitState<T> {
    let s = spherical_from_unit(n, tol);
    let (sh, ch) = (T::lit(0.5) * s.theta).sin_cos();
    let phase = Complex::from_polar(T::one(), -s.phi);
    QubitState::canonical(phase * sh, cx(-ch, T::zero()), tol)
}

/// `⟨ψ|σ_axis|ψ⟩`; the identity gives 1.
pub fn expectation<T: Real>(psi: &QubitState<T>, axis: PauliAxis) -> T {
    let amps = psi.amplitudes();
    let applied = pauli::<T>(axis).apply(amps);
    (amps[0].conj() * applied[0] + amps[1].conj() * applied[1]).re
}

/// `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)`.
pub fn bloch_vector<T: Real>(psi: &QubitState<T>) -> UnitVec3<T> {
    UnitVec3::new_unchecked(Vec3::new(
        expectation(psi, PauliAxis::X),
        expectation(psi, PauliAxis::Y),
        expectation(psi, PauliAxis::Z),
    ))
}

/// `⟨↑_k|↑_n⟩`.
pub fn overlap_amplitude<T: Real>(
    k: UnitVec3<T>,
    n: UnitVec3<T>,
    tol: &Tolerance<T>,
) -> Complex<T> {
    eig_up(k, tol).inner(&eig_up(n, tol))
}

/// `|⟨↑_k|↑_n⟩|²`, the probability of reading +1 along `k` on the state
/// polarized along `n`. Equals `(1 + k·n)/2`.
pub fn overlap_prob<T: Real>(k: UnitVec3<T>, n: UnitVec3<T>, tol: &Tolerance<T>) -> T {
    overlap_amplitude(k, n, tol).norm_sqr()
}
