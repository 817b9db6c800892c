//! Row-major 2x2 complex matrix kernels shared by unitaries and density
//! matrices. Layout: `[m00, m01, m10, m11]`.

use num_complex::Complex64 as C64;

pub(crate) type Mat2 = [C64; 4];

pub(crate) const IDENTITY: Mat2 = [
    C64::new(1.0, 0.0),
    C64::new(0.0, 0.0),
    C64::new(0.0, 0.0),
    C64::new(1.0, 0.0),
];

pub(crate) fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

pub(crate) fn adjoint(a: &Mat2) -> Mat2 {
    [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
}

pub(crate) fn scale(a: &Mat2, s: C64) -> Mat2 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub(crate) fn add(a: &Mat2, b: &Mat2) -> Mat2 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub(crate) fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        worst = worst.max((a[i] - b[i]).norm());
    }
    worst
}

/// Entrywise residual of `A†A` against the identity.
pub(crate) fn unitarity_residual(a: &Mat2) -> f64 {
    let gram = mul(&adjoint(a), a);
    max_abs_diff(&gram, &IDENTITY)
}

pub(crate) fn is_finite(a: &Mat2) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
