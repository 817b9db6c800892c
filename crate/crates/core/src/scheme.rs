//! AQS scheme definition and execution.
//!
//! A scheme combines a keyed random rotation `R_j` with the keyed quantum
//! encryption `E_k = sigma_k W`; signing applies `E_k R_j` to the message and
//! verification inverts it, accepting equality up to global phase. The
//! statistical verdict repeats swap tests over message copies.

use core::str::FromStr;

use num_complex::Complex64 as C64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::mat2::{self, Mat2};
use crate::qubit::{states_equal_up_to_phase, PhaseMatch, QubitState};
use crate::random::uniform;
use crate::unitary::{from_pauli_coeffs, sigma, PauliCoeffs, Unitary2};

/// The keyed pre-rotation family applied before encryption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotationFamily {
    /// `R_0 = sigma_x`, `R_1 = sigma_z`.
    BiasedZ2,
    /// `R_j = sigma_j` for `j` in Z4; itself a quantum encryption.
    UnbiasedZ4,
}

impl RotationFamily {
    /// Number of rotation keys.
    pub fn len(&self) -> usize {
        match self {
            Self::BiasedZ2 => 2,
            Self::UnbiasedZ4 => 4,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The rotation operator for index `j`.
    pub fn rotation(&self, j: usize) -> Result<Unitary2> {
        match (self, j) {
            (Self::BiasedZ2, 0) => Ok(sigma(1)),
            (Self::BiasedZ2, 1) => Ok(sigma(3)),
            (Self::UnbiasedZ4, 0..=3) => Ok(sigma(j)),
            _ => Err(Error::InvalidKey {
                j,
                k: 0,
                rotations: self.len(),
            }),
        }
    }
}

/// A shared signing key: rotation index `j` and encryption index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyPair {
    pub j: usize,
    pub k: usize,
}

/// Rotation family plus assistant unitary; the encryption family is
/// `{sigma_k * assistant}` over `k` in Z4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    rotations: RotationFamily,
    assistant: Unitary2,
}

impl SchemeConfig {
    pub fn new(rotations: RotationFamily, assistant: Unitary2) -> Self {
        Self {
            rotations,
            assistant,
        }
    }

    pub fn rotations(&self) -> RotationFamily {
        self.rotations
    }

    pub fn assistant(&self) -> &Unitary2 {
        &self.assistant
    }

    fn check_key(&self, key: KeyPair) -> Result<()> {
        if key.j >= self.rotations.len() || key.k > 3 {
            return Err(Error::InvalidKey {
                j: key.j,
                k: key.k,
                rotations: self.rotations.len(),
            });
        }
        Ok(())
    }

    /// `E_k = sigma_k * assistant`.
    pub fn encryption(&self, k: usize) -> Result<Unitary2> {
        if k > 3 {
            return Err(Error::PauliIndex(k));
        }
        Ok(sigma(k) * self.assistant)
    }

    /// The full signing operator `sigma_k * W * R_j`.
    pub fn signing_op(&self, key: KeyPair) -> Result<Unitary2> {
        self.check_key(key)?;
        Ok(sigma(key.k) * self.assistant * self.rotations.rotation(key.j)?)
    }

    /// All key pairs of the scheme, in `(j, k)` lexicographic order.
    pub fn keys(&self) -> impl Iterator<Item = KeyPair> {
        let nj = self.rotations.len();
        (0..nj).flat_map(|j| (0..4).map(move |k| KeyPair { j, k }))
    }
}

/// Named assistant operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `(1/sqrt 2) [[1, e^{i pi/4}], [e^{-i pi/4}, -1]]`.
    Wa,
    /// `(i/sqrt 3)(sigma_1 - sigma_2 + sigma_3)`; the assistant farthest
    /// from the identity in coefficient distance.
    T,
    Identity,
}

impl Preset {
    pub fn unitary(self) -> Unitary2 {
        match self {
            Self::Wa => {
                let s = core::f64::consts::FRAC_1_SQRT_2;
                let q = core::f64::consts::FRAC_PI_4;
                Unitary2::new(
                    C64::new(s, 0.0),
                    C64::from_polar(s, q),
                    C64::from_polar(s, -q),
                    C64::new(-s, 0.0),
                )
                .expect("preset is unitary")
            }
            Self::T => {
                let r = 1.0 / 3f64.sqrt();
                from_pauli_coeffs(&PauliCoeffs::new(0.0, r, r, r).expect("unit coefficients"))
            }
            Self::Identity => Unitary2::identity(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Wa => "wa",
            Self::T => "t",
            Self::Identity => "identity",
        }
    }
}

impl FromStr for Preset {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "wa" => Ok(Self::Wa),
            "t" => Ok(Self::T),
            "identity" => Ok(Self::Identity),
            _ => Err(()),
        }
    }
}

/// Signs a message: `|S> = sigma_k W R_j |M>`.
pub fn sign(scheme: &SchemeConfig, key: KeyPair, m: QubitState) -> Result<QubitState> {
    Ok(scheme.signing_op(key)?.apply(&m))
}

/// Exact validity check: recovers `R_j^† W^† sigma_k^† |S>` and compares to
/// the transmitted message up to global phase. The reported angle is the
/// phase of the message relative to the recovered state.
pub fn verify_exact(
    scheme: &SchemeConfig,
    key: KeyPair,
    m: QubitState,
    s: QubitState,
    tol: f64,
) -> Result<PhaseMatch> {
    let recovered = scheme.signing_op(key)?.adjoint().apply(&s);
    Ok(states_equal_up_to_phase(&m, &recovered, tol))
}

/// One swap test between `x` and `y`: passes with probability
/// `(1 + |<x|y>|^2) / 2`.
pub fn swap_test(x: &QubitState, y: &QubitState, rng: &mut impl RngCore) -> bool {
    let p = (1.0 + x.overlap_sq(y)) / 2.0;
    uniform(rng) < p
}

/// Statistical validity check: `n_copies` swap tests between the message and
/// the recovered state, accepting only a unanimous pass.
///
/// For a fixed attack with single-test detection probability `P`, the
/// false-accept probability is `(1 - P)^n`.
pub fn verify_sampled(
    scheme: &SchemeConfig,
    key: KeyPair,
    m: QubitState,
    s: QubitState,
    n_copies: usize,
    rng: &mut impl RngCore,
) -> Result<bool> {
    if n_copies == 0 {
        return Err(Error::NoCopies);
    }
    let recovered = scheme.signing_op(key)?.adjoint().apply(&s);
    for _ in 0..n_copies {
        if !swap_test(&m, &recovered, rng) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A single-qubit density matrix: Hermitian, trace one, positive
/// semidefinite (all within admission tolerances).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validates row-major entries `[r00, r01, r10, r11]`.
    pub fn new(entries: [C64; 4]) -> Result<Self> {
        if !mat2::is_finite(&entries) {
            return Err(Error::NonFinite("density matrix entry"));
        }
        let herm = (entries[0] - entries[0].conj())
            .norm()
            .max((entries[3] - entries[3].conj()).norm())
            .max((entries[1] - entries[2].conj()).norm());
        if herm > 1e-10 {
            return Err(Error::InvalidDensity("not Hermitian"));
        }
        let trace = entries[0].re + entries[3].re;
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity("trace differs from one"));
        }
        // Hermitian 2x2: eigenvalues (tr +- sqrt(tr^2 - 4 det)) / 2 are real.
        let det = entries[0].re * entries[3].re - entries[1].norm_sqr();
        let gap = (trace * trace - 4.0 * det).max(0.0).sqrt();
        if (trace - gap) / 2.0 < -1e-10 {
            return Err(Error::InvalidDensity("negative eigenvalue"));
        }
        Ok(Self { m: entries })
    }

    /// `|psi><psi|`.
    pub fn pure(state: &QubitState) -> Self {
        let (a0, a1) = (state.amp0(), state.amp1());
        Self {
            m: [
                a0 * a0.conj(),
                a0 * a1.conj(),
                a1 * a0.conj(),
                a1 * a1.conj(),
            ],
        }
    }

    /// `I/2`.
    pub fn maximally_mixed() -> Self {
        Self {
            m: mat2::scale(&mat2::IDENTITY, C64::new(0.5, 0.0)),
        }
    }

    /// Convex combination `p * a + (1 - p) * b`.
    pub fn mix(p: f64, a: &Self, b: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidDensity("mixing weight outside [0, 1]"));
        }
        Ok(Self {
            m: mat2::add(
                &mat2::scale(&a.m, C64::new(p, 0.0)),
                &mat2::scale(&b.m, C64::new(1.0 - p, 0.0)),
            ),
        })
    }

    /// Draws a test state: a Haar-random pure state, a uniform-weight blend
    /// of two random pure states, or the maximally mixed state.
    pub fn sample(rng: &mut impl RngCore) -> Self {
        match (uniform(rng) * 10.0) as u32 {
            0..=4 => Self::pure(&QubitState::random(rng)),
            5..=8 => {
                let a = Self::pure(&QubitState::random(rng));
                let b = Self::pure(&QubitState::random(rng));
                Self::mix(uniform(rng), &a, &b).expect("weight in range")
            }
            _ => Self::maximally_mixed(),
        }
    }

    pub fn entries(&self) -> [C64; 4] {
        self.m
    }
}

/// Deviation of the key-averaged encryption from the depolarizing channel:
/// the largest entry of `(1/4) sum_k sigma_k W rho W^† sigma_k - I/2`.
///
/// Zero (to rounding) for every unitary assistant and every state; the
/// Pauli average of any density matrix is maximally mixed.
pub fn encryption_completeness(assistant: &Unitary2, rho: &DensityMatrix) -> f64 {
    let w_rho_wd = mat2::mul(
        &mat2::mul(assistant.mat(), &rho.entries()),
        &assistant.adjoint().entries(),
    );
    let mut acc = [C64::new(0.0, 0.0); 4];
    for k in 0..4 {
        let s = sigma(k);
        let term = mat2::mul(&mat2::mul(s.mat(), &w_rho_wd), s.adjoint().mat());
        acc = mat2::add(&acc, &term);
    }
    let averaged = mat2::scale(&acc, C64::new(0.25, 0.0));
    mat2::max_abs_diff(&averaged, &DensityMatrix::maximally_mixed().m)
}
