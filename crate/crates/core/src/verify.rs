//! Seeded sampling and the randomized identity suite.
//!
//! The generator is xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Independent streams for blocks
//! and checks are obtained by applying the generator's 2^128-step `jump`
//! `index` times. Gaussian draws use the Marsaglia polar method on uniform
//! doubles, so sequences are reproducible on every platform.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{
    bloch_vector, eig_down, eig_up, overlap_prob, spherical_from_unit, unit_from_spherical,
    Spherical,
};
use crate::cover::{
    compose_reflections, conjugate, decompose_to_reflections, homomorphism_residual, lift, project,
    CheckReport,
};
use crate::linalg::{ApproxEq, Complex, Mat2C, Tolerance, UnitVec3, Vec3};
use crate::pauli::{dot_sigma, pauli, PauliAxis, PauliCoords};
use crate::scalar::Real;
use crate::so3::{self, rodrigues_apply};
use crate::su2::{self, exp_series, reflection, rotation_gate, Su2Op};

/// Deterministic generator used by every randomized check.
#[derive(Debug, Clone)]
pub struct SampleRng {
    inner: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    /// Stream `index` of `seed`; streams do not overlap.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut inner = Xoshiro256PlusPlus::seed_from_u64(seed);
        for _ in 0..index {
            inner.jump();
        }
        Self { inner, spare: None }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal draw (Marsaglia polar method).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * k);
                return u * k;
            }
        }
    }
}

/// Uniform point on S²: three normals, normalized; near-zero draws are redrawn.
pub fn random_unit_vec<T: Real>(rng: &mut SampleRng) -> UnitVec3<T> {
    loop {
        let v = Vec3::new(rng.normal(), rng.normal(), rng.normal());
        let norm = v.norm();
        if norm >= 1e-6 {
            let u = v.scale(norm.recip());
            return UnitVec3::new_unchecked(Vec3::new(T::lit(u.x), T::lit(u.y), T::lit(u.z)));
        }
    }
}

/// Haar-random element of SU(2), i.e. a uniform point of S³ read as Pauli
/// coordinates.
pub fn random_su2<T: Real>(rng: &mut SampleRng) -> Su2Op<T> {
    loop {
        let q = [rng.normal(), rng.normal(), rng.normal(), rng.normal()];
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm >= 1e-6 {
            let [i, x, y, z] = q.map(|c| T::lit(c / norm));
            return Su2Op::from_coords(PauliCoords {
                n_i: i,
                n_x: x,
                n_y: y,
                n_z: z,
            });
        }
    }
}

/// A [`CheckReport`] labelled with the identity it exercised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedReport {
    pub name: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub pass: bool,
    pub reports: Vec<NamedReport>,
    pub elapsed_s: f64,
}

type CheckFn = fn(&mut SampleRng, f64) -> f64;

/// One identity of the suite: name, statement, and a function drawing one
/// sample and returning its residual.
pub struct Check {
    pub name: &'static str,
    pub statement: &'static str,
    sample: CheckFn,
}

/// Every identity exercised by [`run_identity_suite`], in report order.
pub const CHECKS: &[Check] = &[
    Check {
        name: "pauli_product_table",
        statement:
            "X·Y = iZ, Y·X = −iZ, Y·Z = iX, Z·Y = −iX, Z·X = iY, X·Z = −iY, X² = Y² = Z² = Id",
        sample: pauli_product_table,
    },
    Check {
        name: "pauli_anticommutators",
        statement: "{X,Y} = {X,Z} = {Y,Z} = 0",
        sample: pauli_anticommutators,
    },
    Check {
        name: "lagrange_triple_product",
        statement: "u ∧ (v ∧ w) = ⟨u,w⟩v − ⟨u,v⟩w",
        sample: lagrange_triple_product,
    },
    Check {
        name: "sigma_product",
        statement: "(u⋄σ)(v⋄σ) = ⟨u,v⟩Id + i(u ∧ v)⋄σ",
        sample: sigma_product,
    },
    Check {
        name: "sigma_commutator",
        statement: "[u⋄σ, v⋄σ] = 2i(u ∧ v)⋄σ",
        sample: sigma_commutator,
    },
    Check {
        name: "sigma_sandwich",
        statement: "(n⋄σ)(x⋄σ)(n⋄σ) = 2⟨x,n⟩n⋄σ − ⟨n,n⟩x⋄σ",
        sample: sigma_sandwich,
    },
    Check {
        name: "sigma_involution",
        statement: "(n⋄σ)² = Id for unit n",
        sample: sigma_involution,
    },
    Check {
        name: "reflection_unitarity",
        statement: "[i·n⋄σ][i·n⋄σ]† = Id",
        sample: reflection_unitarity,
    },
    Check {
        name: "eigen_relations",
        statement: "(n⋄σ)|↑⟩ = |↑⟩, (n⋄σ)|↓⟩ = −|↓⟩",
        sample: eigen_relations,
    },
    Check {
        name: "eigen_orthogonality",
        statement: "⟨↑_n|↓_n⟩ = 0",
        sample: eigen_orthogonality,
    },
    Check {
        name: "spectral_decomposition",
        statement: "n⋄σ = |↑⟩⟨↑| − |↓⟩⟨↓|",
        sample: spectral_decomposition,
    },
    Check {
        name: "antipodal_swap",
        statement: "|↑_{−n}⟩ = |↓_n⟩ up to phase",
        sample: antipodal_swap,
    },
    Check {
        name: "expectation_map",
        statement: "⟨↑|σ|↑⟩ = n, ⟨↓|σ|↓⟩ = −n",
        sample: expectation_map,
    },
    Check {
        name: "overlap_law",
        statement: "|⟨↑_k|↑_n⟩|² = (1 + k·n)/2, and = cos²(θ/2) for k = z",
        sample: overlap_law,
    },
    Check {
        name: "spherical_antipode",
        statement: "U(π−θ, φ+π) = −U(θ, φ)",
        sample: spherical_antipode,
    },
    Check {
        name: "rodrigues_isometry",
        statement: "|R(n,θ)x| = |x|",
        sample: rodrigues_isometry,
    },
    Check {
        name: "rodrigues_fixed_axis",
        statement: "R(n,θ)(k·n) = k·n",
        sample: rodrigues_fixed_axis,
    },
    Check {
        name: "rodrigues_symmetry",
        statement: "R(−n,−θ) = R(n,θ)",
        sample: rodrigues_symmetry,
    },
    Check {
        name: "rotation_two_pi_minus_theta",
        statement: "R(n, 2π−θ) = R(n, −θ) = R(−n, θ)",
        sample: rotation_two_pi_minus_theta,
    },
    Check {
        name: "conjugation_equals_rodrigues",
        statement: "V(n,θ)(x⋄σ)V(n,θ)† = R(n,θ)(x)⋄σ",
        sample: conjugation_equals_rodrigues,
    },
    Check {
        name: "double_cover",
        statement: "Φ(V) = Φ(−V)",
        sample: double_cover,
    },
    Check {
        name: "homomorphism",
        statement: "Φ(VW) = Φ(V)Φ(W)",
        sample: homomorphism,
    },
    Check {
        name: "lift_roundtrip",
        statement: "lift(R) = (V, −V) with Φ(V) = R",
        sample: lift_roundtrip,
    },
    Check {
        name: "reflection_angle_doubling",
        statement: "i(m⋄σ)·i(n⋄σ) rotates by 2·arccos(n·m) about m ∧ n",
        sample: reflection_angle_doubling,
    },
    Check {
        name: "decompose_recompose",
        statement: "reflection pair of V recomposes to ±V",
        sample: decompose_recompose,
    },
    Check {
        name: "series_exponential",
        statement: "Σ_{k<30} (iθ/2·n⋄σ)^k/k! = cos(θ/2)Id + i·sin(θ/2)n⋄σ",
        sample: series_exponential,
    },
    Check {
        name: "su2_periodicity",
        statement: "V(−n, 4π−θ) = V(n, θ)",
        sample: su2_periodicity,
    },
    Check {
        name: "su2_determinant",
        statement: "det V(n,θ) = 1",
        sample: su2_determinant,
    },
    Check {
        name: "gate_consistency",
        statement: "R_A(θ) = V(e_A, θ) for A = X, Y, Z",
        sample: gate_consistency,
    },
    Check {
        name: "su2_axis_angle_roundtrip",
        statement: "V(n,θ) ↦ (n,θ) for θ ∈ [0.01, 2π−0.01]",
        sample: su2_axis_angle_roundtrip,
    },
    Check {
        name: "so3_axis_angle_roundtrip",
        statement: "R(n,θ) ↦ (n,θ) for θ ∈ [0.01, π−0.01]",
        sample: so3_axis_angle_roundtrip,
    },
    Check {
        name: "so3_half_turn_branch",
        statement: "R(n,π) ↦ (±n, π), leading component positive",
        sample: so3_half_turn_branch,
    },
];

/// Runs every check in [`CHECKS`] with `samples` draws each.
///
/// Check `i` draws from stream `i` of `seed`; residual values are therefore
/// identical from run to run.
pub fn run_identity_suite(samples: u64, seed: u64, tol: f64) -> SuiteResult {
    let start = Instant::now();
    let reports: Vec<NamedReport> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let mut rng = SampleRng::stream(seed, i as u64);
            let mut report = CheckReport::empty(seed);
            for _ in 0..samples {
                let r = (check.sample)(&mut rng, tol);
                report.record(r, tol);
            }
            NamedReport {
                name: check.name.to_string(),
                report,
            }
        })
        .collect();
    SuiteResult {
        pass: reports.iter().all(|r| r.report.passed()),
        reports,
        elapsed_s: start.elapsed().as_secs_f64(),
    }
}

// ---------------------------------------------------------------------------
// individual checks, all in f64

type U = UnitVec3<f64>;

fn tol64() -> Tolerance<f64> {
    Tolerance::default()
}

fn i() -> Complex<f64> {
    Complex::new(0.0, 1.0)
}

fn p(a: PauliAxis) -> Mat2C<f64> {
    pauli(a)
}

fn gaussian_vec(rng: &mut SampleRng) -> Vec3<f64> {
    Vec3::new(rng.normal(), rng.normal(), rng.normal())
}

fn unit(rng: &mut SampleRng) -> U {
    random_unit_vec(rng)
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, x| {
        if x.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(x)
        }
    })
}

fn pauli_product_table(_: &mut SampleRng, _: f64) -> f64 {
    use PauliAxis::*;
    let table = [
        (X, Y, p(Z).scale(i())),
        (Y, X, p(Z).scale(-i())),
        (Y, Z, p(X).scale(i())),
        (Z, Y, p(X).scale(-i())),
        (Z, X, p(Y).scale(i())),
        (X, Z, p(Y).scale(-i())),
        (X, X, Mat2C::identity()),
        (Y, Y, Mat2C::identity()),
        (Z, Z, Mat2C::identity()),
    ];
    max(table
        .iter()
        .map(|(a, b, want)| (p(*a) * p(*b)).max_abs_diff(want)))
}

fn pauli_anticommutators(_: &mut SampleRng, _: f64) -> f64 {
    use PauliAxis::*;
    max([(X, Y), (X, Z), (Y, Z)]
        .iter()
        .map(|&(a, b)| (p(a) * p(b) + p(b) * p(a)).max_abs_diff(&Mat2C::zero())))
}

fn lagrange_triple_product(rng: &mut SampleRng, _: f64) -> f64 {
    let (u, v, w) = (unit(rng).vec(), unit(rng).vec(), unit(rng).vec());
    u.cross(v.cross(w))
        .max_abs_diff(&(v.scale(u.dot(w)) - w.scale(u.dot(v))))
}

fn sigma_product(rng: &mut SampleRng, _: f64) -> f64 {
    let (u, v) = (unit(rng).vec(), unit(rng).vec());
    let lhs = dot_sigma(u) * dot_sigma(v);
    let rhs = Mat2C::identity().scale_real(u.dot(v)) + dot_sigma(u.cross(v)).scale(i());
    lhs.max_abs_diff(&rhs)
}

fn sigma_commutator(rng: &mut SampleRng, _: f64) -> f64 {
    let (u, v) = (unit(rng).vec(), unit(rng).vec());
    let lhs = dot_sigma(u) * dot_sigma(v) - dot_sigma(v) * dot_sigma(u);
    lhs.max_abs_diff(&dot_sigma(u.cross(v)).scale(i() * 2.0))
}

fn sigma_sandwich(rng: &mut SampleRng, _: f64) -> f64 {
    // general (non-unit) vectors
    let (n, x) = (gaussian_vec(rng), gaussian_vec(rng));
    let lhs = dot_sigma(n) * dot_sigma(x) * dot_sigma(n);
    let rhs = dot_sigma(n).scale_real(2.0 * x.dot(n)) - dot_sigma(x).scale_real(n.dot(n));
    // relative to the size of the terms
    lhs.max_abs_diff(&rhs) / (1.0 + n.norm_squared() * x.norm())
}

fn sigma_involution(rng: &mut SampleRng, _: f64) -> f64 {
    let s = dot_sigma(unit(rng).vec());
    (s * s).max_abs_diff(&Mat2C::identity())
}

fn reflection_unitarity(rng: &mut SampleRng, _: f64) -> f64 {
    let u = dot_sigma(unit(rng).vec()).scale(i());
    (u * u.dagger()).max_abs_diff(&Mat2C::identity())
}

fn eigen_relations(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let t = tol64();
    let m = dot_sigma(n.vec());
    let (up, down) = (eig_up(n, &t), eig_down(n, &t));
    let mu = m.apply(up.amplitudes());
    let md = m.apply(down.amplitudes());
    max((0..2).flat_map(|k| {
        [
            mu[k].max_abs_diff(&up.amplitudes()[k]),
            md[k].max_abs_diff(&-down.amplitudes()[k]),
        ]
    }))
}

fn eigen_orthogonality(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let t = tol64();
    eig_up(n, &t).inner(&eig_down(n, &t)).norm()
}

fn spectral_decomposition(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let t = tol64();
    let (up, down) = (eig_up(n, &t).amplitudes(), eig_down(n, &t).amplitudes());
    let rhs = Mat2C::outer(up, up) - Mat2C::outer(down, down);
    dot_sigma(n.vec()).max_abs_diff(&rhs)
}

fn antipodal_swap(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let t = tol64();
    eig_up(-n, &t).max_abs_diff(&eig_down(n, &t))
}

fn expectation_map(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let t = tol64();
    bloch_vector(&eig_up(n, &t))
        .max_abs_diff(&n)
        .max(bloch_vector(&eig_down(n, &t)).max_abs_diff(&-n))
}

fn overlap_law(rng: &mut SampleRng, _: f64) -> f64 {
    let (k, n) = (unit(rng), unit(rng));
    let t = tol64();
    let general = (overlap_prob(k, n, &t) - 0.5 * (1.0 + k.dot(n.vec()))).abs();
    let theta = spherical_from_unit(n, &t).theta;
    let polar = (overlap_prob(U::e_z(), n, &t) - (theta / 2.0).cos().powi(2)).abs();
    general.max(polar)
}

fn spherical_antipode(rng: &mut SampleRng, _: f64) -> f64 {
    let theta = rng.uniform_in(0.0, PI);
    let phi = rng.uniform_in(0.0, TAU);
    let mut phi2 = (phi + PI) % TAU;
    if phi2 >= TAU {
        phi2 = 0.0;
    }
    let a = unit_from_spherical(Spherical { theta, phi });
    let b = unit_from_spherical(Spherical {
        theta: PI - theta,
        phi: phi2,
    });
    b.max_abs_diff(&-a)
}

fn rodrigues_isometry(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-TAU, TAU);
    let x = gaussian_vec(rng);
    (rodrigues_apply(n, theta, x).norm() - x.norm()).abs()
}

fn rodrigues_fixed_axis(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-TAU, TAU);
    let kn = n.vec().scale(rng.uniform_in(-10.0, 10.0));
    rodrigues_apply(n, theta, kn).max_abs_diff(&kn)
}

fn rodrigues_symmetry(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-TAU, TAU);
    let x = gaussian_vec(rng);
    rodrigues_apply(-n, -theta, x).max_abs_diff(&rodrigues_apply(n, theta, x))
}

fn rotation_two_pi_minus_theta(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(0.0, TAU);
    let a = so3::from_axis_angle(n, TAU - theta);
    a.max_abs_diff(&so3::from_axis_angle(n, -theta))
        .max(a.max_abs_diff(&so3::from_axis_angle(-n, theta)))
}

fn conjugation_equals_rodrigues(rng: &mut SampleRng, _: f64) -> f64 {
    let v: Su2Op<f64> = random_su2(rng);
    let x = unit(rng).vec();
    let aa = v.to_axis_angle(&tol64());
    conjugate(&v, x).max_abs_diff(&rodrigues_apply(aa.axis, aa.theta, x))
}

fn double_cover(rng: &mut SampleRng, _: f64) -> f64 {
    let v: Su2Op<f64> = random_su2(rng);
    project(&v).max_abs_diff(&project(&-v))
}

fn homomorphism(rng: &mut SampleRng, _: f64) -> f64 {
    let v: Su2Op<f64> = random_su2(rng);
    let w = random_su2(rng);
    homomorphism_residual(&v, &w)
}

fn lift_roundtrip(rng: &mut SampleRng, _: f64) -> f64 {
    let v: Su2Op<f64> = random_su2(rng);
    let r = project(&v);
    let (a, b) = lift(&r, &tol64());
    let pair = a.max_abs_diff(&-b);
    let sheets = a.max_abs_diff(&v).min(a.max_abs_diff(&-v));
    let roundtrip = project(&a)
        .max_abs_diff(&r)
        .max(project(&b).max_abs_diff(&r));
    let principal = if a.coords().n_i >= 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    max([pair, sheets, roundtrip, principal])
}

fn reflection_angle_doubling(rng: &mut SampleRng, _: f64) -> f64 {
    let t = tol64();
    let (n, m, normal) = loop {
        let (n, m) = (unit(rng), unit(rng));
        let c = m.cross(n.vec());
        if c.norm() > 1e-6 {
            break (n, m, c.scale(1.0 / c.norm()));
        }
    };
    let (_, aa) = compose_reflections(n, m, &t).expect("mirrors are not parallel");
    // the extracted form is (n ∧ m, 2π − θ); about m ∧ n the angle reads θ
    let angle = TAU - aa.theta;
    let expected = 2.0 * n.dot(m.vec()).clamp(-1.0, 1.0).acos();
    (angle - expected)
        .abs()
        .max(aa.axis.max_abs_diff(&U::new_unchecked(-normal)))
}

fn decompose_recompose(rng: &mut SampleRng, _: f64) -> f64 {
    let t = tol64();
    let v: Su2Op<f64> = random_su2(rng);
    match decompose_to_reflections(&v, &t) {
        Ok(d) => {
            let w = d.pair.compose();
            let target = if d.sign < 0 { -v } else { v };
            w.max_abs_diff(&target)
        }
        // measure-zero event for Haar samples
        Err(_) => f64::INFINITY,
    }
}

fn series_exponential(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-4.0 * PI, 4.0 * PI);
    exp_series(n, theta, 30).max_abs_diff(&su2::from_axis_angle(n, theta).to_matrix())
}

fn su2_periodicity(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-4.0 * PI, 4.0 * PI);
    su2::from_axis_angle(-n, 4.0 * PI - theta).max_abs_diff(&su2::from_axis_angle(n, theta))
}

fn su2_determinant(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(-4.0 * PI, 4.0 * PI);
    let v = su2::from_axis_angle(n, theta);
    let refl = reflection(n);
    v.det()
        .max_abs_diff(&Complex::new(1.0, 0.0))
        .max(refl.det().max_abs_diff(&Complex::new(1.0, 0.0)))
}

fn gate_consistency(rng: &mut SampleRng, _: f64) -> f64 {
    let theta = rng.uniform_in(-4.0 * PI, 4.0 * PI);
    max([PauliAxis::X, PauliAxis::Y, PauliAxis::Z].iter().map(|&a| {
        let dir = U::new_unchecked(a.direction().expect("coordinate axis"));
        rotation_gate(a, theta)
            .expect("coordinate axis")
            .max_abs_diff(&su2::from_axis_angle(dir, theta))
    }))
}

fn su2_axis_angle_roundtrip(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(0.01, TAU - 0.01);
    let aa = su2::from_axis_angle(n, theta).to_axis_angle(&tol64());
    (aa.theta - theta).abs().max(aa.axis.max_abs_diff(&n))
}

fn so3_axis_angle_roundtrip(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let theta = rng.uniform_in(0.01, PI - 0.01);
    let aa = so3::from_axis_angle(n, theta).to_axis_angle(&tol64());
    (aa.theta - theta).abs().max(aa.axis.max_abs_diff(&n))
}

fn so3_half_turn_branch(rng: &mut SampleRng, _: f64) -> f64 {
    let n = unit(rng);
    let aa = so3::from_axis_angle(n, PI).to_axis_angle(&tol64());
    let canonical = if n.x > 0.0 || (n.x == 0.0 && (n.y > 0.0 || (n.y == 0.0 && n.z > 0.0))) {
        n
    } else {
        -n
    };
    (aa.theta - PI).abs().max(aa.axis.max_abs_diff(&canonical))
}
