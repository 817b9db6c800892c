//! Swap-test detection of forgery attacks on the unbiased-rotation scheme.
//!
//! A receiver holding copies of a message-signature pair detects an attack
//! `Q` on the signature by swap-testing the message against the decryption of
//! the attacked signature, with the two inputs decrypted under independently
//! drawn keys. Averaging the single-test failure probability over both key
//! draws gives
//!
//! ```text
//! P(Q, M) = 1 - 2^-9 * sum_{j,k,j',k'} (1 + |<M| D_{jkj'k'} |M>|^2)
//! ```
//!
//! with `D_{jkj'k'}` the product of the two key conjugations of `Q†` and `Q`
//! ([`delta`]). The per-attack minimum over all messages ([`min_detection_prob`])
//! is what a forger can force; sweeping it against the attack's coefficient
//! distance from the identity ([`sweep`], [`envelope`]) maps out how far an
//! attack must stay from the identity to evade detection.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::forgery::key_conjugations;
use crate::qubit::QubitState;
use crate::random::stream_rng;
use crate::scheme::{RotationFamily, SchemeConfig};
use crate::unitary::{
    coeff_distance, from_pauli_coeffs, random_unit_coeffs, sigma, to_pauli_coeffs, PauliCoeffs,
    Unitary2,
};

/// Bloch-sphere resolution of the message scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl GridSpec {
    pub const DEFAULT: GridSpec = GridSpec {
        n_theta: 64,
        n_phi: 128,
    };

    fn validate(&self) -> Result<()> {
        if self.n_theta < 16 || self.n_phi < 32 {
            return Err(Error::GridTooCoarse {
                n_theta: self.n_theta,
                n_phi: self.n_phi,
            });
        }
        Ok(())
    }
}

/// A point on the Bloch sphere; maps to the state
/// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    /// Polar angle in `[0, pi]`.
    pub theta: f64,
    /// Azimuth in `[0, 2 pi)`.
    pub phi: f64,
}

impl BlochPoint {
    /// Folds arbitrary angles into the canonical ranges.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let tau = core::f64::consts::TAU;
        let mut t = theta % tau;
        if t < 0.0 {
            t += tau;
        }
        let mut p = phi;
        if t > core::f64::consts::PI {
            t = tau - t;
            p += core::f64::consts::PI;
        }
        let mut p = p % tau;
        if p < 0.0 {
            p += tau;
        }
        Self { theta: t, phi: p }
    }

    pub fn state(&self) -> QubitState {
        QubitState::from_bloch_angles(self.theta, self.phi)
    }

    fn direction(theta: f64, phi: f64) -> [f64; 3] {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// The largest coefficient distance any unitary can have from the identity,
/// `1 + sqrt(3)`.
pub fn max_identity_distance() -> f64 {
    1.0 + 3f64.sqrt()
}

/// The double-key comparison operator
/// `D = (s_j W† s_k Q† s_k W s_j)(s_j' W† s_k' Q s_k' W s_j')`.
///
/// Defined over the unbiased Z4 rotation family only; the identity whenever
/// `(j, k) = (j', k')` or the attack is the identity.
pub fn delta(
    scheme: &SchemeConfig,
    attack: &Unitary2,
    j: usize,
    k: usize,
    j2: usize,
    k2: usize,
) -> Result<Unitary2> {
    require_unbiased(scheme)?;
    for idx in [j, k, j2, k2] {
        if idx > 3 {
            return Err(Error::PauliIndex(idx));
        }
    }
    let first = conjugation(scheme.assistant(), attack, j, k).adjoint();
    let second = conjugation(scheme.assistant(), attack, j2, k2);
    Ok(first * second)
}

fn require_unbiased(scheme: &SchemeConfig) -> Result<()> {
    if scheme.rotations() != RotationFamily::UnbiasedZ4 {
        return Err(Error::RequiresUnbiasedFamily);
    }
    Ok(())
}

/// `s_j W† s_k Q s_k W s_j`.
fn conjugation(assistant: &Unitary2, attack: &Unitary2, j: usize, k: usize) -> Unitary2 {
    let enc = sigma(k) * *assistant * sigma(j);
    enc.adjoint() * *attack * enc
}

/// Per-attack detection response, reduced to a quadratic form in the
/// message's Bloch vector.
///
/// Writing each `D` in Pauli coefficients `(d0, d1, d2, d3)` gives
/// `|<M|D|M>|^2 = d0^2 + (u . n)^2` with `u = (d1, -d2, d3)` and `n` the
/// Bloch vector of `M`, so the 256-term sum collapses to
/// `P = 1/2 - (base + n·quad·n)/512` after accumulating `base = sum d0^2`
/// and `quad = sum u u^T`. The 16 key conjugations are computed once per
/// attack and the 256 products pair them on the fly; evaluating a message
/// afterwards costs a handful of multiplies, which is what makes dense
/// Bloch scans and large sweeps tractable.
#[derive(Debug, Clone, Copy)]
pub struct DetectionProfile {
    base: f64,
    quad: [[f64; 3]; 3],
}

impl DetectionProfile {
    pub fn new(scheme: &SchemeConfig, attack: &Unitary2) -> Result<Self> {
        require_unbiased(scheme)?;
        let conj: Vec<Unitary2> = key_conjugations(scheme, attack)
            .into_iter()
            .map(|(_, op)| op)
            .collect();
        let mut base = 0.0;
        let mut quad = [[0.0f64; 3]; 3];
        for left in &conj {
            let left_adj = left.adjoint();
            for right in &conj {
                let d = left_adj * *right;
                let [d0, d1, d2, d3] = d.su2_projection();
                base += d0 * d0;
                let u = [d1, -d2, d3];
                for r in 0..3 {
                    for c in 0..3 {
                        quad[r][c] += u[r] * u[c];
                    }
                }
            }
        }
        Ok(Self { base, quad })
    }

    /// Detection probability for the message with Bloch vector `n`.
    pub fn prob_direction(&self, n: [f64; 3]) -> f64 {
        let mut q = 0.0;
        for r in 0..3 {
            for c in 0..3 {
                q += n[r] * self.quad[r][c] * n[c];
            }
        }
        (0.5 - (self.base + q) / 512.0).max(0.0)
    }

    pub fn prob(&self, m: &QubitState) -> f64 {
        self.prob_direction(m.bloch_vector())
    }
}

/// Single-swap-test detection probability of `attack` for message `m`.
///
/// Lies in `[0, 15/32]`: the 16 diagonal key pairs contribute nothing, and
/// every term passes with probability at least 1/2.
pub fn detection_prob(scheme: &SchemeConfig, attack: &Unitary2, m: &QubitState) -> Result<f64> {
    Ok(DetectionProfile::new(scheme, attack)?.prob(m))
}

/// Minimum detection probability over all messages.
///
/// Scans the Bloch grid, then polishes the best cell with a derivative-free
/// simplex search. The objective is a degree-two trigonometric polynomial in
/// the angles, so the grid localizes the basin and the refinement converges
/// well below `refine_tol`; deterministic for fixed inputs.
pub fn min_detection_prob(
    scheme: &SchemeConfig,
    attack: &Unitary2,
    grid: GridSpec,
    refine_tol: f64,
) -> Result<(f64, BlochPoint)> {
    grid.validate()?;
    let profile = DetectionProfile::new(scheme, attack)?;
    let objective = |x: [f64; 2]| profile.prob_direction(BlochPoint::direction(x[0], x[1]));

    let d_theta = core::f64::consts::PI / (grid.n_theta - 1) as f64;
    let d_phi = core::f64::consts::TAU / grid.n_phi as f64;
    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..grid.n_theta {
        let theta = i as f64 * d_theta;
        for j in 0..grid.n_phi {
            let phi = j as f64 * d_phi;
            let p = objective([theta, phi]);
            if p < best.1 {
                best = ([theta, phi], p);
            }
        }
    }

    let (x, p) = nelder_mead(
        &objective,
        best.0,
        [d_theta, d_phi],
        (refine_tol * 1e-2).max(1e-15),
        300,
    );
    let (x, p) = if p < best.1 { (x, p) } else { best };
    Ok((p.max(0.0), BlochPoint::canonical(x[0], x[1])))
}

/// Standard two-dimensional Nelder-Mead with reflection, expansion,
/// contraction, and shrink. Returns the best vertex once the simplex
/// function spread falls under `f_tol` or the iteration budget runs out.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(
    f: &F,
    start: [f64; 2],
    steps: [f64; 2],
    f_tol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut simplex = [
        (start, f(start)),
        ([start[0] + steps[0], start[1]], 0.0),
        ([start[0], start[1] + steps[1]], 0.0),
    ];
    simplex[1].1 = f(simplex[1].0);
    simplex[2].1 = f(simplex[2].0);

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
        let (best, mid, worst) = (simplex[0], simplex[1], simplex[2]);
        if worst.1 - best.1 <= f_tol {
            break;
        }
        let centroid = [(best.0[0] + mid.0[0]) / 2.0, (best.0[1] + mid.0[1]) / 2.0];
        let reflect = [
            centroid[0] + (centroid[0] - worst.0[0]),
            centroid[1] + (centroid[1] - worst.0[1]),
        ];
        let fr = f(reflect);
        if fr < best.1 {
            let expand = [
                centroid[0] + 2.0 * (centroid[0] - worst.0[0]),
                centroid[1] + 2.0 * (centroid[1] - worst.0[1]),
            ];
            let fe = f(expand);
            simplex[2] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < mid.1 {
            simplex[2] = (reflect, fr);
        } else {
            let contract = [
                centroid[0] + 0.5 * (worst.0[0] - centroid[0]),
                centroid[1] + 0.5 * (worst.0[1] - centroid[1]),
            ];
            let fc = f(contract);
            if fc < worst.1 {
                simplex[2] = (contract, fc);
            } else {
                for vertex in &mut simplex[1..] {
                    let shrunk = [
                        best.0[0] + 0.5 * (vertex.0[0] - best.0[0]),
                        best.0[1] + 0.5 * (vertex.0[1] - best.0[1]),
                    ];
                    *vertex = (shrunk, f(shrunk));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
    simplex[0]
}

/// Haar-induced random attack: coefficient vector uniform on the unit
/// 3-sphere, folded onto the canonical hemisphere.
pub fn sample_attack(rng: &mut impl RngCore) -> Unitary2 {
    from_pauli_coeffs(&PauliCoeffs::canonicalize(random_unit_coeffs(rng)))
}

/// One Monte-Carlo sample of the distance/detectability sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// Canonical coefficients of the sampled attack.
    pub attack_coeffs: PauliCoeffs,
    /// Coefficient distance of the attack from the identity.
    pub d_q: f64,
    /// Minimum detection probability over all messages.
    pub p_q: f64,
    /// A message attaining the minimum.
    pub argmin: BlochPoint,
    /// Index of the sample within its seeded run.
    pub seed_index: u64,
}

/// Computes sample `index` of the sweep identified by `seed`.
///
/// The attack derives from the counter-based stream `(seed, index)`, so any
/// partitioning of indices across workers reproduces identical records.
pub fn sweep_record(
    scheme: &SchemeConfig,
    seed: u64,
    index: u64,
    grid: GridSpec,
    refine_tol: f64,
) -> Result<SweepRecord> {
    let mut rng = stream_rng(seed, index);
    let attack = sample_attack(&mut rng);
    record_for(scheme, &attack, index, grid, refine_tol)
}

fn record_for(
    scheme: &SchemeConfig,
    attack: &Unitary2,
    index: u64,
    grid: GridSpec,
    refine_tol: f64,
) -> Result<SweepRecord> {
    let (p_q, argmin) = min_detection_prob(scheme, attack, grid, refine_tol)?;
    Ok(SweepRecord {
        attack_coeffs: to_pauli_coeffs(attack),
        d_q: coeff_distance(&Unitary2::identity(), attack),
        p_q,
        argmin,
        seed_index: index,
    })
}

/// Runs `n_samples` seeded sweep samples in index order.
pub fn sweep(
    scheme: &SchemeConfig,
    n_samples: u64,
    seed: u64,
    grid: GridSpec,
    refine_tol: f64,
) -> Result<Vec<SweepRecord>> {
    if n_samples == 0 {
        return Err(Error::NoSamples);
    }
    (0..n_samples)
        .map(|i| sweep_record(scheme, seed, i, grid, refine_tol))
        .collect()
}

/// Sweep records for caller-chosen attacks (indices continue from
/// `start_index`); used to pin specific operators into a sampled sweep.
pub fn analyze_attacks(
    scheme: &SchemeConfig,
    attacks: &[Unitary2],
    grid: GridSpec,
    refine_tol: f64,
    start_index: u64,
) -> Result<Vec<SweepRecord>> {
    attacks
        .iter()
        .enumerate()
        .map(|(i, attack)| record_for(scheme, attack, start_index + i as u64, grid, refine_tol))
        .collect()
}

/// One distance bin of the detection-probability envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeBin {
    pub d_lo: f64,
    pub d_hi: f64,
    /// Minimum `p_q` among records in the bin; `None` for empty bins.
    pub p_min: Option<f64>,
    pub support_count: usize,
}

/// Greatest-lower-bound envelope of the `(d_q, p_q)` cloud over `n_bins`
/// uniform bins spanning `[0, 1 + sqrt(3)]`.
pub fn envelope(records: &[SweepRecord], n_bins: usize) -> Result<Vec<EnvelopeBin>> {
    if n_bins < 2 || records.is_empty() {
        return Err(Error::EmptyEnvelope);
    }
    let width = max_identity_distance() / n_bins as f64;
    let mut bins: Vec<EnvelopeBin> = (0..n_bins)
        .map(|i| EnvelopeBin {
            d_lo: i as f64 * width,
            d_hi: (i + 1) as f64 * width,
            p_min: None,
            support_count: 0,
        })
        .collect();
    for rec in records {
        let idx = ((rec.d_q / width) as usize).min(n_bins - 1);
        let bin = &mut bins[idx];
        bin.support_count += 1;
        bin.p_min = Some(match bin.p_min {
            Some(p) => p.min(rec.p_q),
            None => rec.p_q,
        });
    }
    Ok(bins)
}
