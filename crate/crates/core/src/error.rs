use thiserror::Error;

/// Errors reported by the AQS algebra.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    /// An input carried a NaN or infinite component.
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    /// Matrix entries do not form a unitary within the admission tolerance.
    #[error("matrix is not unitary (max |U\u{2020}U - I| entry = {residual:e})")]
    NotUnitary { residual: f64 },
    /// Amplitudes cannot be normalized.
    #[error("state has zero norm")]
    ZeroNorm,
    /// A Pauli index outside {0, 1, 2, 3}.
    #[error("Pauli index {0} outside Z4")]
    PauliIndex(usize),
    /// A key pair whose indices do not fit the scheme's rotation family.
    #[error("key (j={j}, k={k}) invalid for a family with {rotations} rotations")]
    InvalidKey {
        j: usize,
        k: usize,
        rotations: usize,
    },
    /// Pauli coefficient vector too far from unit norm.
    #[error("coefficient vector norm {norm} departs from 1 beyond tolerance")]
    CoeffsNotNormalized { norm: f64 },
    /// A density matrix failing Hermiticity, trace, or positivity.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(&'static str),
    /// Detection-probability formulas are defined over Z4 rotation keys only.
    #[error("operation requires the unbiased Z4 rotation family")]
    RequiresUnbiasedFamily,
    /// Sampled verification needs at least one message copy.
    #[error("sampled verification needs at least one copy")]
    NoCopies,
    /// Bloch grid below the minimum resolution.
    #[error("grid must be at least 16x32, got {n_theta}x{n_phi}")]
    GridTooCoarse { n_theta: usize, n_phi: usize },
    /// A sweep of zero samples.
    #[error("sweep needs at least one sample")]
    NoSamples,
    /// Envelope construction over no records or fewer than two bins.
    #[error("envelope needs at least two bins and a non-empty record list")]
    EmptyEnvelope,
}

pub type Result<T> = core::result::Result<T, Error>;
