//! Property tests for the canonical-form algebra.

use aqs_core::qubit::states_equal_up_to_phase;
use aqs_core::unitary::{
    coeff_distance, eig_unitary, from_pauli_coeffs, to_pauli_coeffs, unitaries_equal_up_to_phase,
    PauliCoeffs, Unitary2,
};
use aqs_core::Complex64 as C64;
use proptest::prelude::*;

/// Unit coefficient 4-vectors, dense on the sphere.
fn coeff_vector() -> impl Strategy<Value = [f64; 4]> {
    [-1.0f64..1.0, -1.0..1.0, -1.0..1.0, -1.0..1.0].prop_filter_map("norm too small", |raw| {
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        (norm > 0.3).then(|| [raw[0] / norm, raw[1] / norm, raw[2] / norm, raw[3] / norm])
    })
}

/// Haar-like unitaries: canonical-form body plus arbitrary global phase.
fn arb_unitary() -> impl Strategy<Value = Unitary2> {
    (coeff_vector(), -3.2f64..3.2).prop_map(|(w, phase)| {
        let c = PauliCoeffs::new(w[0], w[1], w[2], w[3]).expect("unit vector");
        from_pauli_coeffs(&c).phase_shifted(phase)
    })
}

proptest! {
    #[test]
    fn round_trip_preserves_the_operator_ray(u in arb_unitary()) {
        let back = from_pauli_coeffs(&to_pauli_coeffs(&u));
        prop_assert!(unitaries_equal_up_to_phase(&back, &u, 1e-9).matched());
    }

    #[test]
    fn canonical_coefficients_ignore_global_phase(u in arb_unitary(), phase in -3.2f64..3.2) {
        let a = to_pauli_coeffs(&u).as_array();
        let b = to_pauli_coeffs(&u.phase_shifted(phase)).as_array();
        for i in 0..4 {
            prop_assert!((a[i] - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_sign_rule_holds(u in arb_unitary()) {
        let w = to_pauli_coeffs(&u).as_array();
        prop_assert!(w[0] >= 0.0);
        if w[0] <= 1e-10 {
            let first = w[1..].iter().find(|c| c.abs() > 1e-10);
            if let Some(&c) = first {
                prop_assert!(c > 0.0);
            }
        }
    }

    #[test]
    fn eigen_pairs_solve_the_operator(u in arb_unitary()) {
        for pair in eig_unitary(&u) {
            prop_assert!((pair.value.norm() - 1.0).abs() < 1e-10);
            let uv = u.apply(&pair.vector);
            let r0 = (uv.amp0() - pair.value * pair.vector.amp0()).norm();
            let r1 = (uv.amp1() - pair.value * pair.vector.amp1()).norm();
            prop_assert!(r0.max(r1) < 1e-9);
        }
    }

    #[test]
    fn distance_metric_matches_phase_equivalence(a in arb_unitary(), b in arb_unitary()) {
        prop_assert!(coeff_distance(&a, &a) < 1e-12);
        let d_ab = coeff_distance(&a, &b);
        prop_assert!((d_ab - coeff_distance(&b, &a)).abs() < 1e-12);
        prop_assert!(d_ab <= 4.0 + 1e-12);
        prop_assert_eq!(d_ab < 1e-8, unitaries_equal_up_to_phase(&a, &b, 1e-9).matched());
    }

    #[test]
    fn phase_equality_is_reflexive_and_symmetric(u in arb_unitary(), phase in -3.0f64..3.0) {
        prop_assert!(unitaries_equal_up_to_phase(&u, &u, 1e-12).matched());
        let shifted = u.phase_shifted(phase);
        let fwd = unitaries_equal_up_to_phase(&u, &shifted, 1e-9);
        let bwd = unitaries_equal_up_to_phase(&shifted, &u, 1e-9);
        prop_assert!(fwd.matched() && bwd.matched());
        // Inverse phases, up to winding.
        let sum = fwd.theta().unwrap() + bwd.theta().unwrap();
        let wrapped = (sum + core::f64::consts::PI).rem_euclid(core::f64::consts::TAU)
            - core::f64::consts::PI;
        prop_assert!(wrapped.abs() < 1e-9);
    }

    #[test]
    fn phase_equality_is_transitive_under_summed_tolerance(
        u in arb_unitary(),
        eps in 0.0f64..1e-10,
        phase in -3.0f64..3.0,
    ) {
        // b is a tiny perturbation of a (still unitary by rescaling through
        // the coefficient form), c a phase shift of b.
        let mut w = to_pauli_coeffs(&u).as_array();
        w[1] += eps;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let b = from_pauli_coeffs(
            &PauliCoeffs::new(w[0] / norm, w[1] / norm, w[2] / norm, w[3] / norm).unwrap(),
        );
        let c = b.phase_shifted(phase);
        let tol_ab = 3.0 * eps + 1e-12;
        if unitaries_equal_up_to_phase(&u, &b, tol_ab).matched()
            && unitaries_equal_up_to_phase(&b, &c, 1e-12).matched()
        {
            prop_assert!(unitaries_equal_up_to_phase(&u, &c, tol_ab + 1e-12).matched());
        }
    }

    #[test]
    fn state_phase_match_agrees_with_overlap(theta in 0.0f64..core::f64::consts::PI, phi in 0.0f64..6.2, shift in -3.0f64..3.0) {
        let x = aqs_core::QubitState::from_bloch_angles(theta, phi);
        let y = aqs_core::QubitState::new(
            x.amp0() * C64::from_polar(1.0, shift),
            x.amp1() * C64::from_polar(1.0, shift),
        ).unwrap();
        let m = states_equal_up_to_phase(&y, &x, 1e-9);
        prop_assert!(m.matched());
        let wrapped = (m.theta().unwrap() - shift + core::f64::consts::PI)
            .rem_euclid(core::f64::consts::TAU) - core::f64::consts::PI;
        prop_assert!(wrapped.abs() < 1e-9);
    }
}
