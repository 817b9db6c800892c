//! Default numerical tolerances.
//!
//! Every comparison tolerance used by the library defaults to one of the
//! constants below; all public operations that compare states or operators
//! also accept an explicit tolerance so callers can tighten or relax them.

/// Analytic identities evaluated in closed form (phase matches, forgery
/// certification, condition residuals).
pub const ANALYTIC: f64 = 1e-9;

/// Values produced by the derivative-free minimizer.
pub const OPTIMIZER: f64 = 1e-6;

/// Admission threshold on the entrywise residual of `U†U - I`.
pub const UNITARITY: f64 = 1e-10;

/// State normalization after construction.
pub const STATE_NORM: f64 = 1e-12;

/// Eigenvalue gap below which a 2x2 unitary is treated as degenerate.
pub const DEGENERACY: f64 = 1e-10;

/// `w0` magnitude below which the canonical sign rule falls through to the
/// first nonzero of `(w1, w2, w3)`.
pub const CANONICAL_SIGN: f64 = 1e-10;

/// Admissible departure of a raw Pauli coefficient vector from unit norm.
pub const COEFF_NORM: f64 = 1e-8;

/// `|beta|` below which witness construction first tries the exact
/// `beta = 0` message.
pub const BETA_BRANCH: f64 = 1e-8;
