//! 2x2 unitaries, the canonical Pauli-coefficient form, closed-form
//! eigendecomposition, and the coefficient-space distance.
//!
//! Every unitary `U` factors as `e^{i delta} V` with `V` special-unitary, and
//! `V` expands over the Pauli basis as
//!
//! ```text
//! V = w0*s0 + i*w1*s1 - i*w2*s2 + i*w3*s3,   w real, |w| = 1.
//! ```
//!
//! The expansion is unique once the leftover sign of `w` is pinned:
//! [`PauliCoeffs`] requires `w0 >= 0` and, when `w0` vanishes, a positive
//! first nonzero among `(w1, w2, w3)`. The canonical vector is what the
//! coefficient distance and attack sampling operate on.

use core::ops::Mul;

use num_complex::Complex64 as C64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::mat2::{self, Mat2};
use crate::qubit::{PhaseMatch, QubitState};
use crate::random::{normal_pair, uniform};
use crate::tol;

/// A 2x2 complex unitary, stored row-major.
///
/// `U†U = I` holds within [`tol::UNITARITY`] entrywise for every reachable
/// value: checked constructors enforce it and the closed operations
/// (products, adjoints) preserve it to machine accumulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: Mat2,
}

impl Unitary2 {
    /// Validates entries (finite, unitary within [`tol::UNITARITY`]).
    pub fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Result<Self> {
        let m = [m00, m01, m10, m11];
        if !mat2::is_finite(&m) {
            return Err(Error::NonFinite("unitary entry"));
        }
        let residual = mat2::unitarity_residual(&m);
        if residual > tol::UNITARITY {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: mat2::IDENTITY }
    }

    pub(crate) fn from_mat_unchecked(m: Mat2) -> Self {
        Self { m }
    }

    /// Row-major entries `[m00, m01, m10, m11]`.
    pub fn entries(&self) -> [C64; 4] {
        self.m
    }

    pub(crate) fn mat(&self) -> &Mat2 {
        &self.m
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            m: mat2::mul(&self.m, &rhs.m),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            m: mat2::adjoint(&self.m),
        }
    }

    /// Entrywise complex conjugate (still unitary).
    pub fn conjugate(&self) -> Self {
        Self {
            m: [
                self.m[0].conj(),
                self.m[1].conj(),
                self.m[2].conj(),
                self.m[3].conj(),
            ],
        }
    }

    /// Applies the operator to a state.
    pub fn apply(&self, s: &QubitState) -> QubitState {
        let a0 = self.m[0] * s.amp0() + self.m[1] * s.amp1();
        let a1 = self.m[2] * s.amp0() + self.m[3] * s.amp1();
        QubitState::from_amplitudes_unchecked(a0, a1)
    }

    /// `e^{i phase} * self`.
    pub fn phase_shifted(&self, phase: f64) -> Self {
        Self {
            m: mat2::scale(&self.m, C64::from_polar(1.0, phase)),
        }
    }

    pub fn determinant(&self) -> C64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> C64 {
        self.m[0] + self.m[3]
    }

    /// Entrywise residual of `U†U` against the identity.
    pub fn unitarity_residual(&self) -> f64 {
        mat2::unitarity_residual(&self.m)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        mat2::max_abs_diff(&self.m, &other.m)
    }

    /// Haar-random unitary (special-unitary part uniform, independent
    /// uniform global phase).
    pub fn random(rng: &mut impl RngCore) -> Self {
        let coeffs = random_unit_coeffs(rng);
        let phase = core::f64::consts::TAU * uniform(rng);
        su2_from_coeffs(&coeffs).phase_shifted(phase)
    }

    /// Raw special-unitary coefficients `(w0, w1, w2, w3)` of `self` after
    /// removing the determinant phase. Not sign-canonicalized.
    pub(crate) fn su2_projection(&self) -> [f64; 4] {
        let half_arg = self.determinant().arg() / 2.0;
        let v = mat2::scale(&self.m, C64::from_polar(1.0, -half_arg));
        // Real/imag projections discard the residual non-SU(2) part left by
        // admission-level unitarity error.
        let w = [
            (v[0].re + v[3].re) / 2.0,
            (v[1].im + v[2].im) / 2.0,
            (v[2].re - v[1].re) / 2.0,
            (v[0].im - v[3].im) / 2.0,
        ];
        let norm = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]).sqrt();
        [w[0] / norm, w[1] / norm, w[2] / norm, w[3] / norm]
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        self.compose(&rhs)
    }
}

/// The Pauli matrix `sigma_k` for `k` in `{0, 1, 2, 3}` (identity, x, y, z).
pub fn pauli(k: usize) -> Result<Unitary2> {
    if k > 3 {
        return Err(Error::PauliIndex(k));
    }
    Ok(sigma(k))
}

pub(crate) fn sigma(k: usize) -> Unitary2 {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let m = match k {
        0 => mat2::IDENTITY,
        1 => [o, l, l, o],
        2 => [o, -i, i, o],
        3 => [l, o, o, -l],
        _ => unreachable!("internal Pauli index {k}"),
    };
    Unitary2::from_mat_unchecked(m)
}

/// Canonical real Pauli-basis coefficients of a unitary.
///
/// Invariants: unit norm, `w0 >= 0`, and when `|w0|` falls below
/// [`tol::CANONICAL_SIGN`] the first nonzero of `(w1, w2, w3)` is positive.
/// Global-phase-equivalent unitaries share one coefficient vector, which
/// makes the representation fit for the coefficient distance and for
/// de-duplicated attack sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoeffs {
    pub w0: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl PauliCoeffs {
    /// Accepts a vector within [`tol::COEFF_NORM`] of unit length, then
    /// renormalizes and canonicalizes the sign.
    pub fn new(w0: f64, w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = [w0, w1, w2, w3];
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("Pauli coefficient"));
        }
        let norm = (w0 * w0 + w1 * w1 + w2 * w2 + w3 * w3).sqrt();
        if (norm - 1.0).abs() > tol::COEFF_NORM {
            return Err(Error::CoeffsNotNormalized { norm });
        }
        Ok(Self::canonicalize([
            w0 / norm,
            w1 / norm,
            w2 / norm,
            w3 / norm,
        ]))
    }

    /// Sign rule: `w0 > 0` keeps the vector; `w0 < 0` flips it; at `w0 = 0`
    /// (within [`tol::CANONICAL_SIGN`]) the first nonzero of `(w1, w2, w3)`
    /// decides. Input must be unit norm.
    pub(crate) fn canonicalize(w: [f64; 4]) -> Self {
        let mut w = w;
        let flip = if w[0] > tol::CANONICAL_SIGN {
            false
        } else if w[0] < -tol::CANONICAL_SIGN {
            true
        } else {
            let mut flip = false;
            for &c in &w[1..] {
                if c.abs() > tol::CANONICAL_SIGN {
                    flip = c < 0.0;
                    break;
                }
            }
            flip
        };
        for c in &mut w {
            if flip {
                *c = -*c;
            }
            // Flipping can mint negative zeros; keep the canonical form free
            // of them so serialized coefficients compare bytewise.
            if *c == 0.0 {
                *c = 0.0;
            }
        }
        Self {
            w0: w[0],
            w1: w[1],
            w2: w[2],
            w3: w[3],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w0, self.w1, self.w2, self.w3]
    }

    /// L1 distance between coefficient vectors.
    pub fn l1_distance(&self, other: &Self) -> f64 {
        (self.w0 - other.w0).abs()
            + (self.w1 - other.w1).abs()
            + (self.w2 - other.w2).abs()
            + (self.w3 - other.w3).abs()
    }
}

/// Canonical Pauli coefficients of `u`; `from_pauli_coeffs` inverts this up
/// to global phase.
pub fn to_pauli_coeffs(u: &Unitary2) -> PauliCoeffs {
    PauliCoeffs::canonicalize(u.su2_projection())
}

/// The unitary `w0*s0 + i*w1*s1 - i*w2*s2 + i*w3*s3`.
pub fn from_pauli_coeffs(c: &PauliCoeffs) -> Unitary2 {
    su2_from_coeffs(&c.as_array())
}

fn su2_from_coeffs(w: &[f64; 4]) -> Unitary2 {
    Unitary2::from_mat_unchecked([
        C64::new(w[0], w[3]),
        C64::new(-w[2], w[1]),
        C64::new(w[2], w[1]),
        C64::new(w[0], -w[3]),
    ])
}

/// Unit 4-vector uniform on the 3-sphere.
pub(crate) fn random_unit_coeffs(rng: &mut impl RngCore) -> [f64; 4] {
    loop {
        let (a, b) = normal_pair(rng);
        let (c, d) = normal_pair(rng);
        let norm = (a * a + b * b + c * c + d * d).sqrt();
        if norm > 1e-6 {
            return [a / norm, b / norm, c / norm, d / norm];
        }
    }
}

/// Tests `a = e^{i theta} b` entrywise within `tol`.
///
/// The candidate phase comes from the largest-modulus entry of `b`.
pub fn unitaries_equal_up_to_phase(a: &Unitary2, b: &Unitary2, tol: f64) -> PhaseMatch {
    let (am, bm) = (a.mat(), b.mat());
    let mut r = 0;
    for i in 1..4 {
        if bm[i].norm_sqr() > bm[r].norm_sqr() {
            r = i;
        }
    }
    let cross = am[r] * bm[r].conj();
    if cross.norm_sqr() < 1e-300 {
        return PhaseMatch::miss();
    }
    let theta = cross.arg();
    let phase = C64::from_polar(1.0, theta);
    let mut residual = 0.0f64;
    for i in 0..4 {
        residual = residual.max((am[i] - phase * bm[i]).norm());
    }
    if residual <= tol {
        PhaseMatch::hit(theta)
    } else {
        PhaseMatch::miss()
    }
}

/// L1 distance between canonical coefficient vectors,
/// `d(a, b) = sum_j |a_j - b_j|`.
///
/// Zero exactly when `a` and `b` agree up to global phase; bounded by `4` in
/// general, and by `1 + sqrt(3)` for distances from the identity.
pub fn coeff_distance(a: &Unitary2, b: &Unitary2) -> f64 {
    to_pauli_coeffs(a).l1_distance(&to_pauli_coeffs(b))
}

/// One eigenvalue/eigenvector pair of a unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    pub vector: QubitState,
}

/// Closed-form eigendecomposition from trace and determinant.
///
/// Eigenvalues are the roots of `x^2 - tr*x + det`; for each distinct root
/// the eigenvector comes from the better-conditioned row of `U - x*I`, and
/// the second vector is taken as the orthogonal complement (exact for normal
/// matrices). A gap below [`tol::DEGENERACY`] means `U` is within that gap of
/// a phase times the identity, and any orthonormal basis serves.
pub fn eig_unitary(u: &Unitary2) -> [EigenPair; 2] {
    let tr = u.trace();
    let det = u.determinant();
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if (l1 - l2).norm() < tol::DEGENERACY {
        return [
            EigenPair {
                value: l1,
                vector: QubitState::ket0(),
            },
            EigenPair {
                value: l2,
                vector: QubitState::ket1(),
            },
        ];
    }
    let m = u.mat();
    // (U - l1)v = 0 admits v = (m01, l1 - m00) and v = (l1 - m11, m10);
    // take the larger.
    let c1 = (m[1], l1 - m[0]);
    let c2 = (l1 - m[3], m[2]);
    let (v0, v1) = if c1.0.norm_sqr() + c1.1.norm_sqr() >= c2.0.norm_sqr() + c2.1.norm_sqr() {
        c1
    } else {
        c2
    };
    // Unitaries are normal, so the second eigenvector is the complement.
    let vec1 = QubitState::new(v0, v1).expect("eigenvector of non-degenerate unitary");
    let vec2 = vec1.orthogonal();
    [
        EigenPair {
            value: l1,
            vector: vec1,
        },
        EigenPair {
            value: l2,
            vector: vec2,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::stream_rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    /// The Hermitian assistant `(1/sqrt 2) [[1, e^{i pi/4}], [e^{-i pi/4}, -1]]`.
    fn w_a() -> Unitary2 {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Unitary2::new(
            C64::new(s, 0.0),
            C64::from_polar(s, core::f64::consts::FRAC_PI_4),
            C64::from_polar(s, -core::f64::consts::FRAC_PI_4),
            C64::new(-s, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn pauli_matrices_are_exact() {
        let sx = pauli(1).unwrap();
        assert_eq!(sx.entries()[1], C64::new(1.0, 0.0));
        assert_eq!(sx.entries()[0], C64::new(0.0, 0.0));
        assert_eq!(pauli(0).unwrap(), Unitary2::identity());
        assert_eq!(pauli(4), Err(Error::PauliIndex(4)));
        // sigma_z sigma_x = i sigma_y
        let prod = sigma(3) * sigma(1);
        let want = sigma(2).phase_shifted(core::f64::consts::FRAC_PI_2);
        assert!(prod.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn apply_adjoint_compose() {
        let m = QubitState::ket0();
        let flipped = sigma(1).apply(&m);
        assert!(flipped.overlap_sq(&QubitState::ket1()) > 1.0 - 1e-15);

        let mut rng = stream_rng(3, 0);
        for _ in 0..100 {
            let w = Unitary2::random(&mut rng);
            assert!(w.adjoint().adjoint().max_abs_diff(&w) < 1e-15);
            assert!((w * w.adjoint()).max_abs_diff(&Unitary2::identity()) < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary_entries() {
        let err = Unitary2::new(
            C64::new(1.0, 0.0),
            C64::new(0.1, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        );
        assert!(matches!(err, Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn canonical_coefficients_of_named_operators() {
        let c = to_pauli_coeffs(&w_a());
        assert_close(c.w0, 0.0, 1e-15);
        assert_close(c.w1, 0.5, 1e-15);
        assert_close(c.w2, 0.5, 1e-15);
        assert_close(c.w3, core::f64::consts::FRAC_1_SQRT_2, 1e-15);

        let id = to_pauli_coeffs(&Unitary2::identity());
        assert_eq!(id.as_array(), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn from_coeffs_special_cases() {
        let c = PauliCoeffs::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(from_pauli_coeffs(&c).max_abs_diff(&Unitary2::identity()) < 1e-15);

        // (0,1,0,0) builds i*sigma_x, phase-equivalent to sigma_x.
        let c = PauliCoeffs::new(0.0, 1.0, 0.0, 0.0).unwrap();
        let m = unitaries_equal_up_to_phase(&from_pauli_coeffs(&c), &sigma(1), 1e-12);
        assert!(m.matched());

        assert!(matches!(
            PauliCoeffs::new(0.5, 0.5, 0.5, 0.6),
            Err(Error::CoeffsNotNormalized { .. })
        ));
    }

    #[test]
    fn coefficient_distance_examples() {
        let id = Unitary2::identity();
        assert_eq!(coeff_distance(&id, &id), 0.0);
        for l in 1..4 {
            assert_close(coeff_distance(&id, &sigma(l)), 2.0, 1e-15);
        }
        let t = from_pauli_coeffs(
            &PauliCoeffs::new(0.0, 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt())
                .unwrap(),
        );
        assert_close(coeff_distance(&id, &t), 1.0 + 3f64.sqrt(), 1e-12);
    }

    #[test]
    fn phase_equivalence_of_conjugated_pauli() {
        // sigma_k sigma_1 sigma_k is sigma_1 up to sign for every k.
        for k in 0..4 {
            let conj = sigma(k) * sigma(1) * sigma(k);
            assert!(unitaries_equal_up_to_phase(&conj, &sigma(1), 1e-12).matched());
        }
        assert!(!unitaries_equal_up_to_phase(&sigma(1), &sigma(3), 1e-9).matched());
    }

    #[test]
    fn phase_match_reports_defining_angle() {
        let shifted = sigma(1).phase_shifted(0.7);
        let m = unitaries_equal_up_to_phase(&shifted, &sigma(1), 1e-12);
        assert_close(m.theta().unwrap(), 0.7, 1e-12);
        let m = unitaries_equal_up_to_phase(&sigma(1), &shifted, 1e-12);
        assert_close(m.theta().unwrap(), -0.7, 1e-12);
    }

    #[test]
    fn eig_of_sigma_z_and_identity() {
        let [p1, p2] = eig_unitary(&sigma(3));
        assert!((p1.value - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(p1.vector.overlap_sq(&QubitState::ket0()) > 1.0 - 1e-12);
        assert!((p2.value - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(p2.vector.overlap_sq(&QubitState::ket1()) > 1.0 - 1e-12);

        let [p1, p2] = eig_unitary(&Unitary2::identity());
        assert!((p1.value - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((p2.value - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eig_residuals_on_random_unitaries() {
        let mut rng = stream_rng(4, 0);
        for _ in 0..1000 {
            let u = Unitary2::random(&mut rng);
            for pair in eig_unitary(&u) {
                assert!((pair.value.norm() - 1.0).abs() < 1e-10);
                let uv = u.apply(&pair.vector);
                let lv0 = pair.value * pair.vector.amp0();
                let lv1 = pair.value * pair.vector.amp1();
                let res = (uv.amp0() - lv0).norm().hypot((uv.amp1() - lv1).norm());
                assert!(res < 1e-9, "residual {res}");
            }
            let [p1, p2] = eig_unitary(&u);
            if (p1.value - p2.value).norm() > tol::DEGENERACY {
                assert!(p1.vector.inner(&p2.vector).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn canonical_form_is_phase_invariant() {
        let mut rng = stream_rng(5, 0);
        for _ in 0..500 {
            let u = Unitary2::random(&mut rng);
            let phi = core::f64::consts::TAU * uniform(&mut rng) - core::f64::consts::PI;
            let a = to_pauli_coeffs(&u).as_array();
            let b = to_pauli_coeffs(&u.phase_shifted(phi)).as_array();
            for i in 0..4 {
                assert_close(a[i], b[i], 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_up_to_phase() {
        let mut rng = stream_rng(6, 0);
        for _ in 0..1000 {
            let u = Unitary2::random(&mut rng);
            let back = from_pauli_coeffs(&to_pauli_coeffs(&u));
            let m = unitaries_equal_up_to_phase(&back, &u, 1e-9);
            assert!(m.matched());
        }
    }

    #[test]
    fn distance_zero_iff_phase_equivalent() {
        let mut rng = stream_rng(7, 0);
        for _ in 0..300 {
            let u = Unitary2::random(&mut rng);
            let shifted = u.phase_shifted(core::f64::consts::TAU * uniform(&mut rng));
            assert!(coeff_distance(&u, &shifted) < 1e-12);
            let v = Unitary2::random(&mut rng);
            let d = coeff_distance(&u, &v);
            let eq = unitaries_equal_up_to_phase(&u, &v, 1e-9).matched();
            assert_eq!(d < 1e-8, eq);
        }
    }
}
