//! Serializable report documents. Every document round-trips through its
//! schema without field loss.

use std::collections::BTreeMap;

use aqs_core::forgery::{ForgeryWitness, Table1Classification, WitnessCheck};
use aqs_core::scheme::KeyPair;
use aqs_core::unitary::{to_pauli_coeffs, Unitary2};
use aqs_core::{Complex64, QubitState};
use serde::{Deserialize, Serialize};

use crate::opts::pauli_name;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDto {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

pub fn matrix_dto(u: &Unitary2) -> [ComplexDto; 4] {
    let e = u.entries();
    [e[0].into(), e[1].into(), e[2].into(), e[3].into()]
}

pub fn state_dto(s: &QubitState) -> [ComplexDto; 2] {
    [s.amp0().into(), s.amp1().into()]
}

fn key_label(key: &KeyPair) -> String {
    format!("{},{}", key.j, key.k)
}

fn keyed_map(src: &BTreeMap<KeyPair, f64>) -> BTreeMap<String, f64> {
    src.iter().map(|(k, v)| (key_label(k), *v)).collect()
}

/// Witness document: message amplitudes, attack and replacement matrices
/// (row-major), per-key phases keyed by "j,k".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub message: [ComplexDto; 2],
    pub attack: [ComplexDto; 4],
    pub replacement: [ComplexDto; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate: Option<[ComplexDto; 4]>,
    pub phases: BTreeMap<String, f64>,
}

impl From<&ForgeryWitness> for WitnessDto {
    fn from(w: &ForgeryWitness) -> Self {
        Self {
            message: state_dto(&w.message),
            attack: matrix_dto(&w.attack),
            replacement: matrix_dto(&w.replacement),
            alternate: w.alternate.as_ref().map(matrix_dto),
            phases: keyed_map(&w.phases),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationDto {
    pub tol: f64,
    pub max_residual: f64,
    pub certified: bool,
    pub residuals: BTreeMap<String, f64>,
}

impl VerificationDto {
    pub fn new(check: &WitnessCheck, tol: f64) -> Self {
        Self {
            tol,
            max_residual: check.max_residual,
            certified: check.max_residual <= tol,
            residuals: keyed_map(&check.residuals),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub assistant: [f64; 4],
    pub witness: WitnessDto,
    pub verification: VerificationDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRowDto {
    pub attack: String,
    pub expressions: [f64; 3],
    pub satisfied_pairs: Vec<usize>,
    pub forging: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckDto {
    pub seed: u64,
    pub messages_per_attack: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub assistant: [f64; 4],
    pub tol: f64,
    pub rows: Vec<ClassifyRowDto>,
    pub forging_paulis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckDto>,
}

impl ClassifyReport {
    pub fn new(assistant: &Unitary2, classification: &Table1Classification) -> Self {
        Self {
            assistant: to_pauli_coeffs(assistant).as_array(),
            tol: classification.tol,
            rows: classification
                .rows
                .iter()
                .map(|row| ClassifyRowDto {
                    attack: pauli_name(row.attack_index),
                    expressions: row.expressions,
                    satisfied_pairs: row.satisfied_pairs.clone(),
                    forging: row.forges_all_messages(),
                })
                .collect(),
            forging_paulis: classification
                .forging_paulis()
                .into_iter()
                .map(pauli_name)
                .collect(),
            cross_check: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformForgeryReport {
    pub assistant: [f64; 4],
    pub rotations: String,
    pub attack: [f64; 4],
    pub tol: f64,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replacement: Option<[ComplexDto; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncryptionReport {
    pub assistant: [f64; 4],
    pub samples: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub pass: bool,
}
