//! The double cover `Φ: SU(2) → SO(3)`, `Φ(V)(x) = V·(x⋄σ)·V†`.
//!
//! `Φ` is a surjective homomorphism with kernel `{Id, −Id}`: every rotation
//! has exactly the two preimages `±V`. Products of two axial symmetries
//! `i·(n⋄σ)` reach every element, which gives the reflection decomposition
//! below.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ApproxEq, Mat3R, Tolerance, UnitVec3, Vec3};
use crate::pauli::{dot_sigma, extract_unchecked};
use crate::scalar::Real;
use crate::so3::{self, rodrigues_apply, So3Rot};
use crate::su2::{self, reflection, AxisAngle, Su2Op};
use crate::verify::{random_su2, SampleRng};

/// Image of `v` under the cover map, computed column by column from the
/// conjugates `V·(e_j⋄σ)·V†`.
pub fn project<T: Real>(v: &Su2Op<T>) -> So3Rot<T> {
    let vm = v.to_matrix();
    let vd = vm.dagger();
    let cols = [0, 1, 2].map(|j| extract_unchecked(&(vm * dot_sigma(Vec3::basis(j)) * vd)));
    So3Rot::from_matrix_unchecked(Mat3R::from_cols(cols))
}

/// `V·(x⋄σ)·V†`, read back as a vector.
pub fn conjugate<T: Real>(v: &Su2Op<T>, x: Vec3<T>) -> Vec3<T> {
    let vm = v.to_matrix();
    extract_unchecked(&(vm * dot_sigma(x) * vm.dagger()))
}

/// Both preimages `(V, −V)` of `r`. `V` is the principal one, with
/// `n_I = cos(θ/2) ≥ 0`.
pub fn lift<T: Real>(r: &So3Rot<T>, tol: &Tolerance<T>) -> (Su2Op<T>, Su2Op<T>) {
    let aa = r.to_axis_angle(tol);
    let v = su2::from_axis_angle(aa.axis, aa.theta);
    (v, -v)
}

/// Two mirror axes; the symmetry about `first` is applied first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ReflectionPair<T: Real> {
    pub first: UnitVec3<T>,
    pub second: UnitVec3<T>,
}

impl<T: Real> ReflectionPair<T> {
    /// `i·(second⋄σ) · i·(first⋄σ)`.
    pub fn compose(&self) -> Su2Op<T> {
        reflection(self.second) * reflection(self.first)
    }
}

/// A reflection pair together with the sign relating its product to the
/// decomposed operator: `pair.compose() = sign·V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Decomposition<T: Real> {
    pub pair: ReflectionPair<T>,
    pub sign: i32,
}

/// `i·(m⋄σ) · i·(n⋄σ)` and its axis-angle.
///
/// The product equals `−(n·m)·Id + i·(n ∧ m)⋄σ`. The returned axis-angle is
/// extracted from the product itself.
pub fn compose_reflections<T: Real>(
    n: UnitVec3<T>,
    m: UnitVec3<T>,
    tol: &Tolerance<T>,
) -> Result<(Su2Op<T>, AxisAngle<T>)> {
    if n.cross(m.vec()).norm() <= tol.eps_unit {
        return Err(Error::ParallelMirrors);
    }
    let v = ReflectionPair {
        first: n,
        second: m,
    }
    .compose();
    let aa = v.to_axis_angle(tol);
    Ok((v, aa))
}

/// Writes `v` as a product of two axial symmetries.
///
/// With `u, θ` the axis and angle of `v`, the first mirror is the first
/// standard basis vector whose projection onto the plane `⟂ u` has length at
/// least 1/2, projected and normalized; the second is the first rotated by
/// `θ/2` about `u`.
pub fn decompose_to_reflections<T: Real>(
    v: &Su2Op<T>,
    tol: &Tolerance<T>,
) -> Result<Decomposition<T>> {
    if v.coords().vector().norm() <= tol.eps_unit {
        return Err(Error::CentralElement);
    }
    let aa = v.to_axis_angle(tol);
    let u = aa.axis.vec();
    let half = T::lit(0.5);
    let first = (0..3)
        .map(|i| {
            let e = Vec3::basis(i);
            e - u.scale(u.dot(e))
        })
        .find(|p| p.norm() >= half)
        .expect("some basis vector is far from any axis");
    let first = UnitVec3::new_unchecked(first.scale(first.norm().recip()));
    let second = UnitVec3::new_unchecked(rodrigues_apply(aa.axis, aa.theta * half, first.vec()));
    let pair = ReflectionPair { first, second };
    let p = pair.compose();
    let sign = if p.max_abs_diff(v) <= p.max_abs_diff(&-*v) {
        1
    } else {
        -1
    };
    Ok(Decomposition { pair, sign })
}

/// Outcome of a randomized identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub samples: u64,
    pub max_residual: f64,
    pub failures: u64,
    pub seed: u64,
}

impl CheckReport {
    pub fn empty(seed: u64) -> Self {
        Self {
            samples: 0,
            max_residual: 0.0,
            failures: 0,
            seed,
        }
    }

    /// Records one residual; NaN counts as a failure.
    pub fn record(&mut self, residual: f64, tol: f64) {
        self.samples += 1;
        if residual.is_nan() || self.max_residual.is_nan() {
            self.max_residual = f64::NAN;
        } else if residual > self.max_residual {
            self.max_residual = residual;
        }
        if !(residual <= tol) {
            self.failures += 1;
        }
    }

    pub fn merge(mut self, other: &Self) -> Self {
        self.samples += other.samples;
        self.failures += other.failures;
        if other.max_residual.is_nan() || other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub(crate) fn homomorphism_residual<T: Real>(v: &Su2Op<T>, w: &Su2Op<T>) -> f64 {
    let lhs = project(&(*v * *w));
    let rhs = *project(v).matrix() * *project(w).matrix();
    lhs.matrix().max_abs_diff(&rhs).to_f64().unwrap_or(f64::NAN)
}

/// `Φ(V·W) = Φ(V)·Φ(W)` on the given pairs.
pub fn check_homomorphism_pairs<T: Real>(pairs: &[(Su2Op<T>, Su2Op<T>)], tol: f64) -> CheckReport {
    let mut report = CheckReport::empty(0);
    for (v, w) in pairs {
        report.record(homomorphism_residual(v, w), tol);
    }
    report
}

/// Samples per independently seeded block of [`check_homomorphism`].
const BLOCK: u64 = 1024;

/// `Φ(V·W) = Φ(V)·Φ(W)` on Haar-random pairs.
///
/// Samples are split into fixed-size blocks, each drawn from its own stream
/// derived from `(seed, block)`, so the report does not depend on the
/// number of worker threads.
pub fn check_homomorphism(samples: u64, seed: u64, tol: f64) -> CheckReport {
    let blocks = samples.div_ceil(BLOCK);
    let merged = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = SampleRng::stream(seed, b);
            let count = BLOCK.min(samples - b * BLOCK);
            let mut report = CheckReport::empty(seed);
            for _ in 0..count {
                let v: Su2Op<f64> = random_su2(&mut rng);
                let w = random_su2(&mut rng);
                report.record(homomorphism_residual(&v, &w), tol);
            }
            report
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(CheckReport::empty(seed), |acc, r| acc.merge(r));
    CheckReport { seed, ..merged }
}

/// Rotation matrix of `V(n, θ)` through the axis-angle route, for
/// cross-checking [`project`].
pub fn project_via_axis_angle<T: Real>(v: &Su2Op<T>, tol: &Tolerance<T>) -> So3Rot<T> {
    let aa = v.to_axis_angle(tol);
    so3::from_axis_angle(aa.axis, aa.theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex;
    use crate::pauli::{pauli, PauliAxis};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn unit(x: f64, y: f64, z: f64) -> UnitVec3<f64> {
        UnitVec3::normalize(Vec3::new(x, y, z), &tol()).unwrap()
    }

    fn iz() -> Su2Op<f64> {
        Su2Op::from_matrix(
            &pauli::<f64>(PauliAxis::Z).scale(Complex::new(0.0, 1.0)),
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&Su2Op::<f64>::identity()), So3Rot::identity());
        assert_eq!(project(&Su2Op::<f64>::minus_identity()), So3Rot::identity());
        // oracle: conjugating X, Y, Z by i·Z with plain matrix products
        let z = pauli::<f64>(PauliAxis::Z).scale(Complex::new(0.0, 1.0));
        let cols: Vec<_> = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z]
            .iter()
            .map(|&a| z * pauli::<f64>(a) * z.dagger())
            .collect();
        assert_eq!(cols[0], -pauli::<f64>(PauliAxis::X));
        assert_eq!(cols[1], -pauli::<f64>(PauliAxis::Y));
        assert_eq!(cols[2], pauli::<f64>(PauliAxis::Z));
        assert!(project(&iz())
            .matrix()
            .approx_eq(&Mat3R::diag(-1.0, -1.0, 1.0), 0.0));
    }

    #[test]
    fn project_matches_axis_angle_route() {
        let v = su2::from_axis_angle(unit(0.2, -0.6, 0.4), 2.3);
        assert!(project(&v).approx_eq(&project_via_axis_angle(&v, &tol()), 1e-12));
        assert!(project(&v).approx_eq(&project(&-v), 1e-15));
    }

    #[test]
    fn lift_examples() {
        let (p, m) = lift(&So3Rot::<f64>::identity(), &tol());
        assert_eq!(p, Su2Op::identity());
        assert_eq!(m, Su2Op::minus_identity());

        let half_turn = So3Rot::from_matrix(Mat3R::diag(-1.0, -1.0, 1.0), &tol()).unwrap();
        let (p, m) = lift(&half_turn, &tol());
        assert!(p.approx_eq(&iz(), 1e-15));
        assert!(m.approx_eq(&-iz(), 1e-15));
        assert!(project(&p).approx_eq(&half_turn, 1e-15));
        assert!(project(&m).approx_eq(&half_turn, 1e-15));

        let r = so3::from_axis_angle(UnitVec3::e_x(), FRAC_PI_2);
        let (p, m) = lift(&r, &tol());
        let want = su2::from_axis_angle(UnitVec3::e_x(), FRAC_PI_2);
        assert!(p.approx_eq(&want, 1e-12));
        assert!(m.approx_eq(&-want, 1e-12));
        assert!(project(&p).approx_eq(&r, 1e-12));
        assert!(p.coords().n_i >= 0.0);
    }

    #[test]
    fn composing_parallel_mirrors_fails() {
        let n = unit(1.0, 2.0, 3.0);
        assert_eq!(
            compose_reflections(n, n, &tol()),
            Err(Error::ParallelMirrors)
        );
        assert_eq!(
            compose_reflections(n, -n, &tol()),
            Err(Error::ParallelMirrors)
        );
    }

    #[test]
    fn compose_quarter_turn() {
        let n = UnitVec3::e_x();
        let m = unit(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        let (v, aa) = compose_reflections(n, m, &tol()).unwrap();
        // oracle: plain matrix product of i·(m⋄σ) and i·(n⋄σ)
        let i = Complex::new(0.0, 1.0);
        let oracle = dot_sigma(m.vec()).scale(i) * dot_sigma(n.vec()).scale(i);
        assert!(v.to_matrix().approx_eq(&oracle, 1e-15));
        // a quarter turn about ±z: the SU(2) angle is 2π − π/2 about +z
        assert!(aa.axis.approx_eq(&UnitVec3::e_z(), 1e-15));
        assert!((aa.theta - 1.5 * PI).abs() <= 1e-12);
        let r = project(&v);
        let q = so3::from_axis_angle(-UnitVec3::e_z(), FRAC_PI_2);
        assert!(r.approx_eq(&q, 1e-12));
    }

    #[test]
    fn compose_orthogonal_mirrors_is_half_turn() {
        let n = unit(1.0, 1.0, 0.0);
        let m = unit(0.0, 0.0, 1.0);
        let (v, aa) = compose_reflections(n, m, &tol()).unwrap();
        assert!((aa.theta - PI).abs() <= 1e-12);
        let u = unit(1.0, -1.0, 0.0);
        assert!(aa.axis.approx_eq(&u, 1e-12) || aa.axis.approx_eq(&-u, 1e-12));
        assert!(project(&v).approx_eq(&so3::from_axis_angle(u, PI), 1e-12));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_to_reflections(&iz(), &tol()).unwrap();
        let (n, m) = (d.pair.first, d.pair.second);
        assert!(n.z.abs() <= 1e-15 && m.z.abs() <= 1e-15);
        assert!((n.dot(m.vec()).acos() - FRAC_PI_2).abs() <= 1e-12);
        let (w, _) = compose_reflections(n, m, &tol()).unwrap();
        assert!(w.approx_eq(&iz().scale_sign(d.sign), 1e-12));

        let v = su2::from_axis_angle(UnitVec3::e_x(), FRAC_PI_3);
        let d = decompose_to_reflections(&v, &tol()).unwrap();
        let (n, m) = (d.pair.first, d.pair.second);
        assert!(n.x.abs() <= 1e-15 && m.x.abs() <= 1e-15);
        assert!((n.dot(m.vec()).acos() - FRAC_PI_6).abs() <= 1e-12);
        assert!(d.pair.compose().approx_eq(&v.scale_sign(d.sign), 1e-12));

        assert_eq!(
            decompose_to_reflections(&Su2Op::<f64>::identity(), &tol()),
            Err(Error::CentralElement)
        );
        assert_eq!(
            decompose_to_reflections(&Su2Op::<f64>::minus_identity(), &tol()),
            Err(Error::CentralElement)
        );
    }

    #[test]
    fn homomorphism_examples() {
        let id = Su2Op::<f64>::identity();
        let r = check_homomorphism_pairs(&[(id, id)], 1e-12);
        assert_eq!((r.samples, r.max_residual, r.failures), (1, 0.0, 0));

        let v = su2::from_axis_angle(unit(0.3, 0.1, -0.8), 1.7);
        let r = check_homomorphism_pairs(&[(v, -v)], 1e-12);
        assert!(r.passed() && r.max_residual <= 1e-15);

        let r = check_homomorphism(10_000, 42, 1e-12);
        assert_eq!((r.samples, r.failures, r.seed), (10_000, 0, 42));
        assert_eq!(r, check_homomorphism(10_000, 42, 1e-12));
    }

    trait ScaleSign {
        fn scale_sign(&self, s: i32) -> Self;
    }

    impl ScaleSign for Su2Op<f64> {
        fn scale_sign(&self, s: i32) -> Self {
            if s < 0 {
                -*self
            } else {
                *self
            }
        }
    }
}
