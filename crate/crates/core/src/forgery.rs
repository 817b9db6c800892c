//! Forgeable message analysis.
//!
//! A message `|M0>` is *forgeable* under attack `Q` when every key's
//! decryption of the attacked signature lands on one common state: there is a
//! unitary `U` with
//!
//! ```text
//! R_j^† W^† sigma_k^† Q sigma_k W R_j |M0>  ~  U |M0>    for all (j, k),
//! ```
//!
//! `~` meaning equality up to global phase. The receiver can then pass off
//! `(U|M0>, Q|S>)` as a validly signed pair. This module checks the condition
//! for given `(M0, Q)`, synthesizes certified witnesses for arbitrary
//! assistants on the biased-rotation scheme (one always exists there), finds
//! *uniform* forgeries where a single `(Q, U)` works for every message, and
//! classifies the assistants whose schemes leave all messages forgeable
//! under a Pauli attack.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::qubit::{states_equal_up_to_phase, QubitState};
use crate::scheme::{KeyPair, RotationFamily, SchemeConfig};
use crate::tol;
use crate::unitary::{eig_unitary, sigma, to_pauli_coeffs, unitaries_equal_up_to_phase, Unitary2};

/// The three quadratic forms of the assistant's canonical coefficients that
/// govern forgeability under `Q = sigma_1`:
/// `alpha = w0^2 + w1^2 - 1/2`, `beta = w0 w2 + w1 w3`,
/// `gamma = w0 w3 - w1 w2`.
///
/// They satisfy `alpha^2 + beta^2 + gamma^2 = 1/4` exactly; indeed
/// `W^† sigma_1 W = 2(alpha sigma_1 + gamma sigma_2 + beta sigma_3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Computes the `(alpha, beta, gamma)` triple of an assistant.
pub fn abc(assistant: &Unitary2) -> AbcTriple {
    let [w0, w1, w2, w3] = to_pauli_coeffs(assistant).as_array();
    AbcTriple {
        alpha: w0 * w0 + w1 * w1 - 0.5,
        beta: w0 * w2 + w1 * w3,
        gamma: w0 * w3 - w1 * w2,
    }
}

/// A certified forgeable message together with its attack data.
///
/// For every key `(j, k)` of the scheme it was built for,
/// `R_j^† W^† sigma_k^† Q sigma_k W R_j |M0> = e^{i theta_jk} U |M0>` holds
/// within the certification tolerance, with `theta_jk` stored in `phases`.
/// The attack is never phase-equivalent to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ForgeryWitness {
    /// The forgeable message `|M0>`.
    pub message: QubitState,
    /// The signature attack `Q`.
    pub attack: Unitary2,
    /// The message replacement `U`.
    pub replacement: Unitary2,
    /// A second valid replacement, when the construction provides one.
    pub alternate: Option<Unitary2>,
    /// Residual phase `theta_jk` per key.
    pub phases: BTreeMap<KeyPair, f64>,
}

/// Per-key certification data for a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCheck {
    pub phases: BTreeMap<KeyPair, f64>,
    pub residuals: BTreeMap<KeyPair, f64>,
    pub max_residual: f64,
}

/// The key-conjugated attacks `R_j^† W^† sigma_k^† Q sigma_k W R_j` for
/// every key of the scheme.
pub fn key_conjugations(scheme: &SchemeConfig, attack: &Unitary2) -> Vec<(KeyPair, Unitary2)> {
    let w = *scheme.assistant();
    scheme
        .keys()
        .map(|key| {
            let r = scheme
                .rotations()
                .rotation(key.j)
                .expect("keys() yields valid indices");
            let enc = sigma(key.k) * w * r;
            (key, enc.adjoint() * *attack * enc)
        })
        .collect()
}

fn check_against(
    scheme: &SchemeConfig,
    m: &QubitState,
    attack: &Unitary2,
    replacement: &Unitary2,
) -> WitnessCheck {
    let target = replacement.apply(m);
    let mut phases = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    let mut max_residual = 0.0f64;
    for (key, op) in key_conjugations(scheme, attack) {
        let got = op.apply(m);
        // Align on the larger target amplitude; a unit target always has one.
        let (ta, ga) = if target.amp0().norm_sqr() >= target.amp1().norm_sqr() {
            (target.amp0(), got.amp0())
        } else {
            (target.amp1(), got.amp1())
        };
        let theta = (ga * ta.conj()).arg();
        let phase = C64::from_polar(1.0, theta);
        let residual = (got.amp0() - phase * target.amp0())
            .norm()
            .max((got.amp1() - phase * target.amp1()).norm());
        phases.insert(key, theta);
        residuals.insert(key, residual);
        max_residual = max_residual.max(residual);
    }
    WitnessCheck {
        phases,
        residuals,
        max_residual,
    }
}

/// Re-certifies a witness against a scheme, reporting per-key phases and
/// residuals.
pub fn verify_witness(scheme: &SchemeConfig, witness: &ForgeryWitness) -> WitnessCheck {
    check_against(
        scheme,
        &witness.message,
        &witness.attack,
        &witness.replacement,
    )
}

/// Tests whether `m` is forgeable under `attack` in the given scheme.
///
/// All key-conjugated images of `m` must agree up to phase within `tol`. On
/// success the returned replacement maps `m` to the common image and the
/// orthogonal complement of `m` to the image's complement with zero relative
/// phase (the action off the `m` ray is not otherwise constrained). An attack
/// that is itself phase-equivalent to the identity is never a forgery.
pub fn check_forgeable(
    scheme: &SchemeConfig,
    m: &QubitState,
    attack: &Unitary2,
    tol: f64,
) -> Option<ForgeryWitness> {
    if unitaries_equal_up_to_phase(attack, &Unitary2::identity(), tol).matched() {
        return None;
    }
    let ops = key_conjugations(scheme, attack);
    let reference = ops[0].1.apply(m);
    for (_, op) in &ops {
        if !states_equal_up_to_phase(&op.apply(m), &reference, tol).matched() {
            return None;
        }
    }
    // U: m -> reference, m_perp -> reference_perp.
    let (mp, rp) = (m.orthogonal(), reference.orthogonal());
    let replacement = Unitary2::new(
        reference.amp0() * m.amp0().conj() + rp.amp0() * mp.amp0().conj(),
        reference.amp0() * m.amp1().conj() + rp.amp0() * mp.amp1().conj(),
        reference.amp1() * m.amp0().conj() + rp.amp1() * mp.amp0().conj(),
        reference.amp1() * m.amp1().conj() + rp.amp1() * mp.amp1().conj(),
    )
    .expect("basis-to-basis map is unitary");
    let check = check_against(scheme, m, attack, &replacement);
    if check.max_residual > tol {
        return None;
    }
    Some(ForgeryWitness {
        message: *m,
        attack: *attack,
        replacement,
        alternate: None,
        phases: check.phases,
    })
}

/// Constructs a certified forgeable message for an arbitrary assistant on
/// the biased-rotation scheme, realizing the guarantee that one always
/// exists.
///
/// The attack is `Q = sigma_1` and the replacement is
/// `U = sigma_1 W^† sigma_1 W sigma_1 = 2[[-beta, alpha + i gamma],
/// [alpha - i gamma, beta]]`. When `|beta|` is below [`tol::BETA_BRANCH`] the
/// message `|0>` is tried first (exact at `beta = 0`, residual at most
/// `4|beta|`); if that fails certification at [`tol::ANALYTIC`], `beta` is
/// far enough from zero for the general message
/// `(mu|0> + |1>)/sqrt(mu^2 + 1)`, `mu = (alpha + sqrt(alpha^2 + beta^2))/beta`,
/// which is exact for every nonzero `beta`.
pub fn construct_witness(assistant: &Unitary2) -> ForgeryWitness {
    let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, *assistant);
    let AbcTriple {
        alpha,
        beta,
        gamma: _,
    } = abc(assistant);
    let attack = sigma(1);
    let replacement = sigma(1) * assistant.adjoint() * sigma(1) * *assistant * sigma(1);

    if beta.abs() < tol::BETA_BRANCH {
        let message = QubitState::ket0();
        let check = check_against(&scheme, &message, &attack, &replacement);
        if check.max_residual <= tol::ANALYTIC {
            let alternate = sigma(3) * assistant.adjoint() * sigma(1) * *assistant * sigma(3);
            return ForgeryWitness {
                message,
                attack,
                replacement,
                alternate: Some(alternate),
                phases: check.phases,
            };
        }
    }

    let mu = (alpha + alpha.hypot(beta)) / beta;
    let message = QubitState::new(C64::new(mu, 0.0), C64::new(1.0, 0.0))
        .expect("mu is finite for nonzero beta");
    let check = check_against(&scheme, &message, &attack, &replacement);
    debug_assert!(check.max_residual <= tol::ANALYTIC);
    ForgeryWitness {
        message,
        attack,
        replacement,
        // The construction's other valid choice: the image ray of the
        // message is real, so the sign-flipped entrywise conjugate maps it
        // the same way.
        alternate: Some(replacement.conjugate().phase_shifted(core::f64::consts::PI)),
        phases: check.phases,
    }
}

/// Builds a forgeable message for attack `sigma_l` (`l` in `{1, 2, 3}`) on
/// the biased-rotation scheme from an eigenstate.
///
/// With `A = sigma_3 W^† sigma_l W sigma_3` and
/// `B = sigma_1 W^† sigma_l W sigma_1` (both Hermitian unitaries), a message
/// satisfies `A|M0> ~ B|M0>` exactly when it is an eigenstate of `A * B`;
/// either eigenvector works, and the replacement is `B`.
pub fn witness_via_eigenstate(assistant: &Unitary2, l: usize) -> Result<ForgeryWitness> {
    if !(1..=3).contains(&l) {
        return Err(Error::PauliIndex(l));
    }
    let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, *assistant);
    let conj_3 = sigma(3) * assistant.adjoint() * sigma(l) * *assistant * sigma(3);
    let conj_1 = sigma(1) * assistant.adjoint() * sigma(l) * *assistant * sigma(1);
    let composite = conj_3 * conj_1;
    let [pair, _] = eig_unitary(&composite);
    let message = pair.vector;
    let attack = sigma(l);
    let check = check_against(&scheme, &message, &attack, &conj_1);
    debug_assert!(check.max_residual <= tol::ANALYTIC);
    Ok(ForgeryWitness {
        message,
        attack,
        replacement: conj_1,
        alternate: Some(conj_3),
        phases: check.phases,
    })
}

/// Outcome of the uniform-forgery test: one `(Q, U)` forging every message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformForgeryResult {
    pub exists: bool,
    /// The common replacement (the `(j, k) = (0, 0)` representative), when
    /// it exists.
    pub replacement: Option<Unitary2>,
}

/// Tests whether all key conjugations of `attack` collapse to a single
/// operator up to phase, i.e. whether `attack` forges every message of the
/// scheme with one replacement.
pub fn uniform_forgery(scheme: &SchemeConfig, attack: &Unitary2, tol: f64) -> UniformForgeryResult {
    let ops = key_conjugations(scheme, attack);
    let reference = ops[0].1;
    for (_, op) in &ops {
        if !unitaries_equal_up_to_phase(op, &reference, tol).matched() {
            return UniformForgeryResult {
                exists: false,
                replacement: None,
            };
        }
    }
    UniformForgeryResult {
        exists: true,
        replacement: Some(reference),
    }
}

/// One attack row of the all-messages-forgeable classification.
///
/// `expressions` holds the three signed condition values for `sigma_l`; the
/// attack forges every message exactly when at least one pair of them
/// vanishes. Pair ids: 1 = (first, second), 2 = (first, third),
/// 3 = (second, third).
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    /// Pauli index `l` of the attack.
    pub attack_index: usize,
    /// Signed residuals of the three conditions.
    pub expressions: [f64; 3],
    /// Ids of the condition pairs satisfied within tolerance.
    pub satisfied_pairs: Vec<usize>,
}

impl Table1Row {
    pub fn forges_all_messages(&self) -> bool {
        !self.satisfied_pairs.is_empty()
    }
}

/// Classification of an assistant against the all-messages-forgeable
/// conditions for each Pauli attack.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Classification {
    pub rows: [Table1Row; 3],
    pub tol: f64,
}

impl Table1Classification {
    /// The Pauli indices whose attacks forge every message.
    pub fn forging_paulis(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.forges_all_messages())
            .map(|r| r.attack_index)
            .collect()
    }

    /// All satisfied `(pauli, pair id)` conditions.
    pub fn satisfied_conditions(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .flat_map(|r| r.satisfied_pairs.iter().map(|&p| (r.attack_index, p)))
            .collect()
    }
}

/// Evaluates the nine condition pairs on the assistant's canonical
/// coefficients.
///
/// For `sigma_l` the three expressions are the coefficient forms of
/// `W^† sigma_l W` being a Pauli axis; a satisfied pair (both expressions
/// within `tol` of zero) makes every message forgeable under that attack on
/// the unbiased scheme. Assistants with at most two nonzero coefficients
/// always satisfy at least one pair.
pub fn classify_table1(assistant: &Unitary2, tol: f64) -> Table1Classification {
    let [w0, w1, w2, w3] = to_pauli_coeffs(assistant).as_array();
    let exprs = [
        [
            w0 * w0 + w1 * w1 - 0.5,
            w0 * w3 - w1 * w2,
            w0 * w2 + w1 * w3,
        ],
        [
            w0 * w0 + w2 * w2 - 0.5,
            w0 * w1 - w2 * w3,
            w0 * w3 + w1 * w2,
        ],
        [
            w0 * w0 + w3 * w3 - 0.5,
            w0 * w2 - w1 * w3,
            w0 * w1 + w2 * w3,
        ],
    ];
    let rows = core::array::from_fn(|i| {
        let e = exprs[i];
        let satisfied_pairs = [(1, 0, 1), (2, 0, 2), (3, 1, 2)]
            .iter()
            .filter(|&&(_, a, b)| e[a].abs() <= tol && e[b].abs() <= tol)
            .map(|&(id, _, _)| id)
            .collect();
        Table1Row {
            attack_index: i + 1,
            expressions: e,
            satisfied_pairs,
        }
    });
    Table1Classification { rows, tol }
}
