//! Subcommand implementations.

use std::fs;
use std::path::Path;

use aqs_core::detection::{self, GridSpec};
use aqs_core::forgery::{
    check_forgeable, classify_table1, construct_witness, uniform_forgery, verify_witness,
};
use aqs_core::random::stream_rng;
use aqs_core::scheme::{
    encryption_completeness, sign, verify_exact, verify_sampled, DensityMatrix, KeyPair,
    RotationFamily, SchemeConfig,
};
use aqs_core::unitary::{pauli, to_pauli_coeffs, unitaries_equal_up_to_phase};
use aqs_core::{Complex64, QubitState};

use crate::opts::{parse_assistant, parse_attack, parse_grid, parse_message, parse_rotations};
use crate::report::{
    matrix_dto, ClassifyReport, CrossCheckDto, EncryptionReport, UniformForgeryReport,
    VerificationDto, WitnessReport,
};
use crate::sweep_out::{envelope_csv, fmt_f64, parallel_sweep, sweep_csv, worker_count};
use crate::{
    CheckEncryptionArgs, ClassifyArgs, CmdResult, DemoSignArgs, Failure, FindForgeableArgs,
    SweepArgs, UniformForgeryArgs,
};

/// Residual bound under which the key-averaged encryption counts as exact.
const COMPLETENESS_GATE: f64 = 1e-10;

fn emit(text: &str, out: Option<&str>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure::Io(format!("serialization failed: {e}")))
}

pub fn check_encryption(args: CheckEncryptionArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    if args.n == 0 {
        return Err(Failure::BadInput("--n must be at least 1".into()));
    }
    let mut rng = stream_rng(args.seed, 0);
    let mut max_residual = 0.0f64;
    for _ in 0..args.n {
        let rho = DensityMatrix::sample(&mut rng);
        max_residual = max_residual.max(encryption_completeness(&assistant, &rho));
    }
    let report = EncryptionReport {
        assistant: to_pauli_coeffs(&assistant).as_array(),
        samples: args.n,
        seed: args.seed,
        max_residual,
        pass: max_residual <= COMPLETENESS_GATE,
    };
    let text = match args.format.as_str() {
        "json" => to_json(&report)?,
        "csv" => {
            let a = report.assistant;
            format!(
                "w0,w1,w2,w3,samples,seed,max_residual,pass\n{},{},{},{},{},{},{},{}\n",
                fmt_f64(a[0]),
                fmt_f64(a[1]),
                fmt_f64(a[2]),
                fmt_f64(a[3]),
                report.samples,
                report.seed,
                fmt_f64(report.max_residual),
                report.pass
            )
        }
        other => {
            return Err(Failure::BadInput(format!(
                "--format: expected json or csv, got `{other}`"
            )))
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(report.pass)
}

pub fn find_forgeable(args: FindForgeableArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::BadInput("--tol must be positive".into()));
    }
    let witness = construct_witness(&assistant);
    let scheme = SchemeConfig::new(RotationFamily::BiasedZ2, assistant);
    let check = verify_witness(&scheme, &witness);
    let report = WitnessReport {
        assistant: to_pauli_coeffs(&assistant).as_array(),
        witness: (&witness).into(),
        verification: VerificationDto::new(&check, args.tol),
    };
    emit(&to_json(&report)?, args.out.as_deref())?;
    Ok(report.verification.certified)
}

pub fn classify(args: ClassifyArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    let classification = classify_table1(&assistant, args.tol);
    let mut report = ClassifyReport::new(&assistant, &classification);

    let mut consistent = true;
    if args.cross_check {
        let seed = args
            .seed
            .ok_or_else(|| Failure::BadInput("--cross-check needs --seed".into()))?;
        let mut rng = stream_rng(seed, 0);
        let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, assistant);
        let per_attack = 50;
        for row in &classification.rows {
            let attack = pauli(row.attack_index).expect("row indices are Pauli indices");
            let brute = uniform_forgery(&scheme, &attack, args.tol).exists;
            if brute != row.forges_all_messages() {
                consistent = false;
            }
            if row.forges_all_messages() {
                // Every message must be forgeable.
                for _ in 0..per_attack {
                    let m = QubitState::random(&mut rng);
                    if check_forgeable(&scheme, &m, &attack, args.tol).is_none() {
                        consistent = false;
                    }
                }
            } else {
                // Some random message must resist.
                let resisted = (0..per_attack).any(|_| {
                    let m = QubitState::random(&mut rng);
                    check_forgeable(&scheme, &m, &attack, args.tol).is_none()
                });
                if !resisted {
                    consistent = false;
                }
            }
        }
        report.cross_check = Some(CrossCheckDto {
            seed,
            messages_per_attack: per_attack,
            consistent,
        });
    }

    let text = match args.format.as_str() {
        "json" => to_json(&report)?,
        "csv" => {
            let mut out = String::from("attack,expr1,expr2,expr3,satisfied_pairs,forging\n");
            for row in &report.rows {
                let pairs = row
                    .satisfied_pairs
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    row.attack,
                    fmt_f64(row.expressions[0]),
                    fmt_f64(row.expressions[1]),
                    fmt_f64(row.expressions[2]),
                    pairs,
                    row.forging
                ));
            }
            out
        }
        other => {
            return Err(Failure::BadInput(format!(
                "--format: expected json or csv, got `{other}`"
            )))
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(consistent)
}

pub fn uniform_forgery_cmd(args: UniformForgeryArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    let attack = parse_attack(&args.attack, "--attack")?;
    let rotations = parse_rotations(&args.rotations)?;
    let scheme = SchemeConfig::new(rotations, assistant);
    let result = uniform_forgery(&scheme, &attack, args.tol);
    let report = UniformForgeryReport {
        assistant: to_pauli_coeffs(&assistant).as_array(),
        rotations: args.rotations.clone(),
        attack: to_pauli_coeffs(&attack).as_array(),
        tol: args.tol,
        exists: result.exists,
        replacement: result.replacement.as_ref().map(matrix_dto),
    };
    emit(&to_json(&report)?, args.out.as_deref())?;
    match args.expect.as_deref() {
        None => Ok(true),
        Some("exists") => Ok(result.exists),
        Some("none") => Ok(!result.exists),
        Some(other) => Err(Failure::BadInput(format!(
            "--expect: expected exists or none, got `{other}`"
        ))),
    }
}

pub fn sweep(args: SweepArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    if parse_rotations(&args.rotations)? != RotationFamily::UnbiasedZ4 {
        return Err(Failure::BadInput(
            "--rotations: the sweep is defined over the z4 family".into(),
        ));
    }
    let (n_theta, n_phi) = parse_grid(&args.grid)?;
    let grid = GridSpec { n_theta, n_phi };
    let scheme = SchemeConfig::new(RotationFamily::UnbiasedZ4, assistant);

    let mut records = parallel_sweep(&scheme, args.n, args.seed, grid, args.tol, worker_count())?;
    if args.include_paulis {
        let paulis = [
            pauli(1).expect("fixed index"),
            pauli(2).expect("fixed index"),
            pauli(3).expect("fixed index"),
        ];
        let extra = detection::analyze_attacks(&scheme, &paulis, grid, args.tol, args.n)
            .map_err(|e| Failure::BadInput(e.to_string()))?;
        records.extend(extra);
    }
    let bins =
        detection::envelope(&records, args.bins).map_err(|e| Failure::BadInput(e.to_string()))?;

    let dir = Path::new(&args.out);
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", args.out)))?;
    let sweep_path = dir.join("sweep.csv");
    let env_path = dir.join("envelope.csv");
    fs::write(&sweep_path, sweep_csv(&records))
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", sweep_path.display())))?;
    fs::write(&env_path, envelope_csv(&bins))
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", env_path.display())))?;

    println!(
        "sweep: assistant={} n={} seed={} grid={}x{} records={}",
        args.assistant,
        args.n,
        args.seed,
        grid.n_theta,
        grid.n_phi,
        records.len()
    );
    println!("wrote {} and {}", sweep_path.display(), env_path.display());
    let floor = records
        .iter()
        .filter(|r| r.d_q >= 0.1)
        .map(|r| r.p_q)
        .fold(f64::INFINITY, f64::min);
    if floor.is_finite() {
        println!("min p_q over d_q >= 0.1: {}", fmt_f64(floor));
    } else {
        println!("min p_q over d_q >= 0.1: n/a (no records in range)");
    }
    let width = detection::max_identity_distance() / args.bins as f64;
    let dip = ((2.0 / width) as usize).min(args.bins - 1);
    let shown = |i: usize| match bins[i].p_min {
        Some(p) => fmt_f64(p),
        None => "empty".into(),
    };
    println!(
        "bin containing d=2: [{:.5}, {:.5}) p_min={} (left {}, right {})",
        bins[dip].d_lo,
        bins[dip].d_hi,
        shown(dip),
        if dip > 0 { shown(dip - 1) } else { "-".into() },
        if dip + 1 < bins.len() {
            shown(dip + 1)
        } else {
            "-".into()
        },
    );
    Ok(true)
}

fn fmt_state(s: &QubitState) -> String {
    let f = |z: Complex64| format!("({}, {})", fmt_f64(z.re), fmt_f64(z.im));
    format!("[{}, {}]", f(s.amp0()), f(s.amp1()))
}

pub fn demo_sign(args: DemoSignArgs) -> CmdResult {
    let assistant = parse_assistant(&args.assistant)?;
    let rotations = parse_rotations(&args.rotations)?;
    let scheme = SchemeConfig::new(rotations, assistant);
    let key = KeyPair {
        j: args.j,
        k: args.k,
    };
    let message = parse_message(args.amps.as_deref(), args.theta, args.phi)?;

    let signature = sign(&scheme, key, message).map_err(|e| Failure::BadInput(e.to_string()))?;
    println!(
        "scheme: rotations={} assistant={}",
        args.rotations, args.assistant
    );
    println!("key: (j={}, k={})", key.j, key.k);
    println!("message:   {}", fmt_state(&message));
    println!("signature: {}", fmt_state(&signature));

    let transmitted = match args.tamper.as_deref() {
        Some(spec) => {
            let op = parse_attack(spec, "--tamper")?;
            println!("tamper: applying {spec} to the signature in transit");
            op.apply(&signature)
        }
        None => signature,
    };
    let recovered = scheme
        .signing_op(key)
        .map_err(|e| Failure::BadInput(e.to_string()))?
        .adjoint()
        .apply(&transmitted);
    println!("recovered: {}", fmt_state(&recovered));

    let verdict = verify_exact(&scheme, key, message, transmitted, args.tol)
        .map_err(|e| Failure::BadInput(e.to_string()))?;
    match verdict.theta() {
        Some(theta) => println!("exact verdict: valid (theta = {})", fmt_f64(theta)),
        None => println!("exact verdict: invalid"),
    }

    if let Some(spec) = args.tamper.as_deref() {
        if verdict.matched() {
            let op = parse_attack(spec, "--tamper")?;
            let identity_tamper =
                unitaries_equal_up_to_phase(&op, &aqs_core::Unitary2::identity(), args.tol)
                    .matched();
            if identity_tamper {
                println!("note: {spec} is the identity; nothing was altered");
            } else if uniform_forgery(&scheme, &op, args.tol).exists {
                println!(
                    "warning: tampered signature still verifies; this scheme admits a \
                     uniform forgery for {spec} (Pauli-only encryption weakness)"
                );
            } else if check_forgeable(&scheme, &message, &op, args.tol).is_some() {
                println!("note: this message is forgeable under {spec} in this scheme");
            } else {
                println!(
                    "note: verification passed for this key draw; other keys would \
                     detect the tampering"
                );
            }
        }
    }

    if let Some(copies) = args.copies {
        let seed = args
            .seed
            .ok_or_else(|| Failure::BadInput("--copies needs --seed".into()))?;
        let mut rng = stream_rng(seed, 0);
        let accept = verify_sampled(&scheme, key, message, transmitted, copies, &mut rng)
            .map_err(|e| Failure::BadInput(e.to_string()))?;
        println!(
            "sampled verdict ({copies} swap tests, seed {seed}): {}",
            if accept { "accept" } else { "reject" }
        );
    }
    Ok(true)
}
