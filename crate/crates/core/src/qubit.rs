//! Pure single-qubit states and global-phase equivalence.

use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64 as C64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::random::normal_pair;

/// A normalized pure qubit state `a0|0> + a1|1>`.
///
/// Construction normalizes the amplitudes, so `|a0|^2 + |a1|^2 = 1` holds
/// within [`crate::tol::STATE_NORM`] for every reachable value. Values are
/// immutable; all operations return fresh states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    a0: C64,
    a1: C64,
}

impl QubitState {
    /// Normalizes `(a0, a1)` into a state.
    ///
    /// Rejects non-finite components and the zero vector.
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        for z in [a0, a1] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite("qubit amplitude"));
            }
        }
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if norm < 1e-300 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            a0: a0 / norm,
            a1: a1 / norm,
        })
    }

    pub fn ket0() -> Self {
        Self {
            a0: C64::new(1.0, 0.0),
            a1: C64::new(0.0, 0.0),
        }
    }

    pub fn ket1() -> Self {
        Self {
            a0: C64::new(0.0, 0.0),
            a1: C64::new(1.0, 0.0),
        }
    }

    /// `(|0> + |1>)/sqrt(2)`.
    pub fn plus() -> Self {
        Self {
            a0: C64::new(FRAC_1_SQRT_2, 0.0),
            a1: C64::new(FRAC_1_SQRT_2, 0.0),
        }
    }

    /// `(|0> - |1>)/sqrt(2)`.
    pub fn minus() -> Self {
        Self {
            a0: C64::new(FRAC_1_SQRT_2, 0.0),
            a1: C64::new(-FRAC_1_SQRT_2, 0.0),
        }
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`. Angles must be finite.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        debug_assert!(theta.is_finite() && phi.is_finite());
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            a0: C64::new(c, 0.0),
            a1: C64::from_polar(s, phi),
        }
    }

    /// Haar-random pure state.
    pub fn random(rng: &mut impl RngCore) -> Self {
        loop {
            let (x0, y0) = normal_pair(rng);
            let (x1, y1) = normal_pair(rng);
            if let Ok(s) = Self::new(C64::new(x0, y0), C64::new(x1, y1)) {
                return s;
            }
        }
    }

    pub fn amp0(&self) -> C64 {
        self.a0
    }

    pub fn amp1(&self) -> C64 {
        self.a1
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.a0.conj() * other.a0 + self.a1.conj() * other.a1
    }

    /// `|<self|other>|^2`.
    pub fn overlap_sq(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// The state orthogonal to this one, `(-conj(a1), conj(a0))`.
    pub fn orthogonal(&self) -> Self {
        Self {
            a0: -self.a1.conj(),
            a1: self.a0.conj(),
        }
    }

    /// Bloch vector `(<sigma_x>, <sigma_y>, <sigma_z>)`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let cross = self.a0.conj() * self.a1;
        [
            2.0 * cross.re,
            2.0 * cross.im,
            self.a0.norm_sqr() - self.a1.norm_sqr(),
        ]
    }

    pub(crate) fn from_amplitudes_unchecked(a0: C64, a1: C64) -> Self {
        Self { a0, a1 }
    }
}

/// Outcome of a global-phase equality test.
///
/// When two states (or operators) `x` and `y` match, `theta` is the angle in
/// `(-pi, pi]` with `x = e^{i theta} y` within the tolerance used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatch(Option<f64>);

impl PhaseMatch {
    pub(crate) fn hit(theta: f64) -> Self {
        Self(Some(wrap_angle(theta)))
    }

    pub(crate) fn miss() -> Self {
        Self(None)
    }

    pub fn matched(&self) -> bool {
        self.0.is_some()
    }

    /// The matching phase; `None` when the inputs differ beyond tolerance.
    pub fn theta(&self) -> Option<f64> {
        self.0
    }
}

/// Maps an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t > PI {
        t -= TAU;
    } else if t <= -PI {
        t += TAU;
    }
    t
}

/// Tests `x = e^{i theta} y` within `tol` per amplitude.
///
/// The candidate phase is read off the largest-modulus amplitude of `y`,
/// keeping the extraction away from near-zero divisions; the match then
/// requires every amplitude to agree within `tol`.
pub fn states_equal_up_to_phase(x: &QubitState, y: &QubitState, tol: f64) -> PhaseMatch {
    let (xr, yr) = if y.a0.norm_sqr() >= y.a1.norm_sqr() {
        (x.a0, y.a0)
    } else {
        (x.a1, y.a1)
    };
    let cross = xr * yr.conj();
    if cross.norm_sqr() < 1e-300 {
        return PhaseMatch::miss();
    }
    let theta = cross.arg();
    let phase = C64::from_polar(1.0, theta);
    let residual = (x.a0 - phase * y.a0)
        .norm()
        .max((x.a1 - phase * y.a1).norm());
    if residual <= tol {
        PhaseMatch::hit(theta)
    } else {
        PhaseMatch::miss()
    }
}
