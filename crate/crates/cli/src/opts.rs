//! Flag-value parsing shared by the subcommands.

use aqs_core::scheme::{Preset, RotationFamily};
use aqs_core::unitary::{from_pauli_coeffs, pauli, PauliCoeffs, Unitary2};
use aqs_core::Complex64 as C64;
use aqs_core::QubitState;

use crate::Failure;

/// Explicit coefficient vectors may be off unit norm by this much before
/// they are rejected; accepted ones are normalized on ingest.
const COEFF_INPUT_TOL: f64 = 1e-6;

fn parse_floats(spec: &str, what: &str) -> Result<Vec<f64>, Failure> {
    spec.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                Failure::BadInput(format!("{what}: cannot parse `{part}` as a number"))
            })
        })
        .collect()
}

fn coeffs_from_spec(spec: &str, what: &str) -> Result<PauliCoeffs, Failure> {
    let vals = parse_floats(spec, what)?;
    if vals.len() != 4 {
        return Err(Failure::BadInput(format!(
            "{what}: expected four comma-separated coefficients, got {}",
            vals.len()
        )));
    }
    let norm = vals.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > COEFF_INPUT_TOL {
        return Err(Failure::BadInput(format!(
            "{what}: coefficients must be unit norm within {COEFF_INPUT_TOL:e} (norm = {norm})"
        )));
    }
    PauliCoeffs::new(
        vals[0] / norm,
        vals[1] / norm,
        vals[2] / norm,
        vals[3] / norm,
    )
    .map_err(|e| Failure::BadInput(format!("{what}: {e}")))
}

/// `wa | t | identity` or four canonical coefficients.
pub fn parse_assistant(spec: &str) -> Result<Unitary2, Failure> {
    if let Ok(preset) = spec.parse::<Preset>() {
        return Ok(preset.unitary());
    }
    if spec.contains(',') {
        return Ok(from_pauli_coeffs(&coeffs_from_spec(spec, "--assistant")?));
    }
    Err(Failure::BadInput(format!(
        "--assistant: unknown preset `{spec}` (expected wa, t, identity, or coefficients)"
    )))
}

/// `s0..s3` or four canonical coefficients.
pub fn parse_attack(spec: &str, what: &str) -> Result<Unitary2, Failure> {
    if let Some(rest) = spec.strip_prefix('s') {
        if let Ok(k) = rest.parse::<usize>() {
            return pauli(k).map_err(|e| Failure::BadInput(format!("{what}: {e}")));
        }
    }
    if spec.contains(',') {
        return Ok(from_pauli_coeffs(&coeffs_from_spec(spec, what)?));
    }
    Err(Failure::BadInput(format!(
        "{what}: expected s0..s3 or four comma-separated coefficients, got `{spec}`"
    )))
}

pub fn parse_rotations(spec: &str) -> Result<RotationFamily, Failure> {
    match spec {
        "z2" => Ok(RotationFamily::BiasedZ2),
        "z4" => Ok(RotationFamily::UnbiasedZ4),
        other => Err(Failure::BadInput(format!(
            "--rotations: expected z2 or z4, got `{other}`"
        ))),
    }
}

/// `THETAxPHI`, e.g. `64x128`.
pub fn parse_grid(spec: &str) -> Result<(usize, usize), Failure> {
    let mut parts = spec.split('x');
    let (a, b) = (parts.next(), parts.next());
    if let (Some(a), Some(b), None) = (a, b, parts.next()) {
        if let (Ok(nt), Ok(np)) = (a.parse::<usize>(), b.parse::<usize>()) {
            return Ok((nt, np));
        }
    }
    Err(Failure::BadInput(format!(
        "--grid: expected THETAxPHI such as 64x128, got `{spec}`"
    )))
}

/// Message from `--amps re0,im0,re1,im1`, else Bloch angles, defaulting to
/// the missing angle being zero.
pub fn parse_message(
    amps: Option<&str>,
    theta: Option<f64>,
    phi: Option<f64>,
) -> Result<QubitState, Failure> {
    if let Some(spec) = amps {
        let vals = parse_floats(spec, "--amps")?;
        if vals.len() != 4 {
            return Err(Failure::BadInput(format!(
                "--amps: expected re0,im0,re1,im1, got {} values",
                vals.len()
            )));
        }
        return QubitState::new(C64::new(vals[0], vals[1]), C64::new(vals[2], vals[3]))
            .map_err(|e| Failure::BadInput(format!("--amps: {e}")));
    }
    let theta = theta.unwrap_or(0.0);
    let phi = phi.unwrap_or(0.0);
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Failure::BadInput("--theta/--phi must be finite".into()));
    }
    Ok(QubitState::from_bloch_angles(theta, phi))
}

/// Pauli name for reports.
pub fn pauli_name(l: usize) -> String {
    format!("s{l}")
}
