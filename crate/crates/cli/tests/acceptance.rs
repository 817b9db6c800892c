//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time (visible with `--nocapture`).

use std::process::Command;
use std::time::{Duration, Instant};

use aqs_core::detection::{
    analyze_attacks, detection_prob, envelope, min_detection_prob, sample_attack, sweep,
    DetectionProfile, GridSpec,
};
use aqs_core::forgery::{classify_table1, construct_witness, uniform_forgery, verify_witness};
use aqs_core::qubit::QubitState;
use aqs_core::random::stream_rng;
use aqs_core::scheme::{
    encryption_completeness, sign, verify_sampled, DensityMatrix, KeyPair, Preset, RotationFamily,
    SchemeConfig,
};
use aqs_core::unitary::{
    from_pauli_coeffs, pauli, unitaries_equal_up_to_phase, PauliCoeffs, Unitary2,
};
use rand_core::RngCore;

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{criterion}: runtime {elapsed:?} exceeds budget {budget:?}"
    );
    println!("criterion {criterion}: PASS ({elapsed:?})");
}

#[test]
fn criterion_1_wa_witness_reproduction() {
    let started = Instant::now();
    let assistant = Preset::Wa.unitary();
    let witness = construct_witness(&assistant);

    let s3 = 3f64.sqrt();
    let denom = 2f64.sqrt() * (3.0 - s3).sqrt();
    let expect_a0 = (s3 - 1.0) / denom;
    let expect_a1 = 2f64.sqrt() / denom;
    assert!((witness.message.amp0().re - expect_a0).abs() <= 1e-9);
    assert!(witness.message.amp0().im.abs() <= 1e-9);
    assert!((witness.message.amp1().re - expect_a1).abs() <= 1e-9);
    assert!(witness.message.amp1().im.abs() <= 1e-9);

    let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, assistant);
    let check = verify_witness(&scheme, &witness);
    assert_eq!(check.residuals.len(), 8);
    assert!(
        check.max_residual <= 1e-9,
        "max phase residual {}",
        check.max_residual
    );
    finish(
        "1 (W_a witness reproduction)",
        started,
        Duration::from_secs(1),
    );
}

/// Assistants with beta pushed into a chosen magnitude range.
fn assistant_with_beta(rng: &mut impl RngCore, beta_target: f64) -> Unitary2 {
    let mut next = || {
        let x = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * x - 1.0
    };
    let angle = next() * std::f64::consts::PI;
    let (w0, w1) = (angle.cos() * 0.8, angle.sin() * 0.8);
    let s = 0.3 * next();
    let w2 = s * -w1 + beta_target * w0;
    let w3 = s * w0 + beta_target * w1;
    let norm = (w0 * w0 + w1 * w1 + w2 * w2 + w3 * w3).sqrt();
    from_pauli_coeffs(
        &PauliCoeffs::new(w0 / norm, w1 / norm, w2 / norm, w3 / norm).expect("unit vector"),
    )
}

#[test]
fn criterion_2_witness_construction_is_total() {
    let started = Instant::now();
    let mut rng = stream_rng(2024, 0);
    let mut failures = 0usize;
    for _ in 0..1000 {
        let assistant = Unitary2::random(&mut rng);
        let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, assistant);
        let witness = construct_witness(&assistant);
        if verify_witness(&scheme, &witness).max_residual > 1e-9 {
            failures += 1;
        }
    }
    // Adversarial cases hugging the branch threshold from both sides.
    for i in 0..50 {
        let exponent = -11.0 + 5.0 * (i as f64 / 49.0);
        let beta = 10f64.powf(exponent) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let assistant = assistant_with_beta(&mut rng, beta);
        let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, assistant);
        let witness = construct_witness(&assistant);
        if verify_witness(&scheme, &witness).max_residual > 1e-9 {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} uncertified witnesses");
    finish(
        "2 (witness construction is total)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_3_uniform_forgery_outcomes() {
    let started = Instant::now();
    let biased_wa = SchemeConfig::new(RotationFamily::BiasedZ2, Preset::Wa.unitary());
    for l in 1..=3 {
        let result = uniform_forgery(&biased_wa, &pauli(l).unwrap(), 1e-9);
        assert!(!result.exists, "sigma_{l} must not forge uniformly on W_a");
    }
    let biased_id = SchemeConfig::new(RotationFamily::BiasedZ2, Unitary2::identity());
    let result = uniform_forgery(&biased_id, &pauli(1).unwrap(), 1e-9);
    assert!(result.exists);
    let replacement = result.replacement.expect("existence carries a replacement");
    assert!(unitaries_equal_up_to_phase(&replacement, &pauli(1).unwrap(), 1e-9).matched());
    finish(
        "3 (uniform-forgery outcomes)",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_4_table1_cross_validation() {
    let started = Instant::now();
    let mut rng = stream_rng(2025, 0);
    for trial in 0..200 {
        let assistant = Unitary2::random(&mut rng);
        let classification = classify_table1(&assistant, 1e-9);
        let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, assistant);
        for row in &classification.rows {
            let brute = uniform_forgery(&scheme, &pauli(row.attack_index).unwrap(), 1e-9).exists;
            assert_eq!(
                row.forges_all_messages(),
                brute,
                "trial {trial}, attack s{}",
                row.attack_index
            );
        }
    }

    // W_a: the sigma_3 row satisfies its first condition exactly
    // (w0^2 + w3^2 = 1/2), which is what leaves the computational basis
    // forgeable: both basis states evade detection under sigma_3.
    let wa = Preset::Wa.unitary();
    let classification = classify_table1(&wa, 1e-9);
    let sigma3_row = &classification.rows[2];
    assert!(sigma3_row.expressions[0].abs() <= 1e-12);
    assert!(sigma3_row.satisfied_pairs.is_empty());
    let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, wa);
    for m in [QubitState::ket0(), QubitState::ket1()] {
        let p = detection_prob(&scheme, &pauli(3).unwrap(), &m).unwrap();
        assert!(p <= 1e-12, "basis state detectable: p = {p}");
    }
    finish(
        "4 (classification cross-validation)",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_5_figure1_scaled_reproduction() {
    let started = Instant::now();
    let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, Preset::T.unitary());
    let grid = GridSpec::DEFAULT;
    let n = 10_000u64;
    let mut records = sweep(&scheme, n, 42, grid, 1e-8).unwrap();
    let paulis = [pauli(1).unwrap(), pauli(2).unwrap(), pauli(3).unwrap()];
    records.extend(analyze_attacks(&scheme, &paulis, grid, 1e-8, n).unwrap());

    // (a) Nothing at distance >= 0.1 hides below 1e-6.
    let hidden = records
        .iter()
        .filter(|r| r.d_q >= 0.1 && r.p_q < 1e-6)
        .count();
    assert_eq!(hidden, 0, "{hidden} low-detection records at d >= 0.1");

    // (c) The sharpened cap holds for every record.
    let cap = 15.0 / 32.0;
    assert!(records.iter().all(|r| r.p_q <= cap + 1e-12));

    // (b) The bin containing d = 2 is a strict local minimum of the
    // envelope once the Pauli attacks are in the sample set.
    let bins = envelope(&records, 100).unwrap();
    let width = aqs_core::detection::max_identity_distance() / 100.0;
    let dip = (2.0 / width) as usize;
    let p_of = |i: usize| bins[i].p_min.expect("populated near the dip");
    assert!(
        p_of(dip) < p_of(dip - 1) && p_of(dip) < p_of(dip + 1),
        "no dip: left {} dip {} right {}",
        p_of(dip - 1),
        p_of(dip),
        p_of(dip + 1)
    );
    finish(
        "5 (scaled detection sweep)",
        started,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_6_optimizer_vs_oracle() {
    let started = Instant::now();
    let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, Preset::T.unitary());
    let mut rng = stream_rng(2026, 0);
    for trial in 0..50 {
        let attack = sample_attack(&mut rng);
        let profile = DetectionProfile::new(&scheme, &attack).unwrap();
        let mut oracle = f64::INFINITY;
        for i in 0..512 {
            let theta = std::f64::consts::PI * i as f64 / 511.0;
            for j in 0..1024 {
                let phi = std::f64::consts::TAU * j as f64 / 1024.0;
                let n = [
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                ];
                oracle = oracle.min(profile.prob_direction(n));
            }
        }
        let (refined, _) = min_detection_prob(&scheme, &attack, GridSpec::DEFAULT, 1e-8).unwrap();
        assert!(
            refined <= oracle + 1e-6,
            "trial {trial}: refined {refined} vs dense-grid {oracle}"
        );
    }
    finish(
        "6 (optimizer vs dense oracle)",
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_7_encryption_completeness() {
    let started = Instant::now();
    let mut rng = stream_rng(2027, 0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let assistant = Unitary2::random(&mut rng);
        for _ in 0..1000 {
            let rho = DensityMatrix::sample(&mut rng);
            worst = worst.max(encryption_completeness(&assistant, &rho));
        }
    }
    assert!(worst <= 1e-12, "worst residual {worst}");
    finish(
        "7 (encryption completeness)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_8_swap_test_statistics() {
    let started = Instant::now();
    let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, Preset::T.unitary());
    let key = KeyPair { j: 1, k: 2 };
    let message = QubitState::ket0();
    let tampered = pauli(1)
        .unwrap()
        .apply(&sign(&scheme, key, message).unwrap());

    // Single-test detection probability for this fixed configuration.
    let recovered = scheme.signing_op(key).unwrap().adjoint().apply(&tampered);
    let p_detect = 1.0 - (1.0 + message.overlap_sq(&recovered)) / 2.0;
    assert!((p_detect - 5.0 / 18.0).abs() < 1e-12);

    let mut rng = stream_rng(2028, 0);
    let trials = 10_000usize;
    for n in [1usize, 5, 20] {
        let accepted = (0..trials)
            .filter(|_| verify_sampled(&scheme, key, message, tampered, n, &mut rng).unwrap())
            .count();
        let expected = (1.0 - p_detect).powi(n as i32);
        let sd = (expected * (1.0 - expected) / trials as f64).sqrt();
        let rate = accepted as f64 / trials as f64;
        assert!(
            (rate - expected).abs() <= 4.0 * sd,
            "n = {n}: rate {rate} vs (1-P)^n {expected} (sd {sd})"
        );
    }
    finish("8 (swap-test statistics)", started, Duration::from_secs(30));
}

#[test]
fn criterion_9_sweep_determinism() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_aqslab");
    let base = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (label, threads) in [("a", "1"), ("b", "4"), ("c", "3")] {
        let dir = base.path().join(label);
        let status = Command::new(bin)
            .args([
                "sweep",
                "--assistant",
                "t",
                "--n",
                "1000",
                "--seed",
                "42",
                "--out",
                dir.to_str().unwrap(),
            ])
            .env("AQSLAB_THREADS", threads)
            .status()
            .expect("sweep run");
        assert!(status.success());
        let sweep_bytes = std::fs::read(dir.join("sweep.csv")).unwrap();
        let env_bytes = std::fs::read(dir.join("envelope.csv")).unwrap();
        outputs.push((sweep_bytes, env_bytes));
    }
    assert_eq!(
        outputs[0], outputs[1],
        "outputs differ across worker counts"
    );
    assert_eq!(outputs[0], outputs[2], "outputs differ across reruns");
    finish(
        "9 (byte-identical sweeps)",
        started,
        Duration::from_secs(120),
    );
}
