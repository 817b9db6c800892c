//! Numerical laboratory for single-qubit arbitrated quantum signature (AQS)
//! schemes.
//!
//! An AQS scheme signs a qubit message by a keyed rotation followed by a keyed
//! quantum encryption `E_k = σ_k W`, where `W` is a fixed *assistant* unitary.
//! This crate provides the exact 2×2 algebra behind such schemes and the
//! analyses built on top of it:
//!
//! * [`qubit`] / [`unitary`] — states, unitaries, canonical Pauli-coefficient
//!   form, global-phase equivalence, closed-form eigendecomposition, and the
//!   coefficient-space distance between unitaries.
//! * [`scheme`] — rotation families, signing, exact and swap-test-based
//!   verification, and the encryption completeness (Pauli twirl) residual.
//! * [`forgery`] — constructive synthesis of forgeable message–signature
//!   pairs for arbitrary assistants, uniform-forgery detection, and the
//!   classification of assistants that leave every message forgeable.
//! * [`detection`] — swap-test detection probability of a forgery attack,
//!   its minimum over all messages, Haar-random attack sampling, and the
//!   Monte-Carlo sweep relating attack distance to detectability.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! only switches the float math backend.
//!
//! ```
//! use aqs_core::scheme::{self, Preset, RotationFamily, SchemeConfig, KeyPair};
//! use aqs_core::qubit::QubitState;
//!
//! let cfg = SchemeConfig::new(RotationFamily::BiasedZ2, Preset::Wa.unitary());
//! let key = KeyPair { j: 1, k: 2 };
//! let message = QubitState::plus();
//! let signature = scheme::sign(&cfg, key, message).unwrap();
//! let check = scheme::verify_exact(&cfg, key, message, signature, 1e-12).unwrap();
//! assert!(check.matched());
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod detection;
mod error;
pub mod forgery;
mod mat2;
pub mod qubit;
pub mod random;
pub mod scheme;
pub mod tol;
pub mod unitary;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qubit::{PhaseMatch, QubitState};
pub use unitary::{PauliCoeffs, Unitary2};
