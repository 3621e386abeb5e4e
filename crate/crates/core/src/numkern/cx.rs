//! Small complex-arithmetic helpers shared by the kernels.

use rug::{Complex, Float};

/// |z| computed from the parts (avoids ambiguity around `Complex::abs`).
pub fn cabs(z: &Complex) -> Float {
    let p = z.real().prec();
    let mut t = Float::with_val(p, z.real() * z.real());
    t += Float::with_val(p, z.imag() * z.imag());
    t.sqrt()
}

/// Cheap magnitude estimate |re| + |im| for convergence checks.
pub fn cest(z: &Complex) -> Float {
    let p = z.real().prec();
    let mut t = Float::with_val(p, z.real()).abs();
    t += Float::with_val(p, z.imag()).abs();
    t
}

pub fn conj(z: &Complex) -> Complex {
    let p = z.real().prec();
    Complex::with_val(p, (z.real(), &-Float::with_val(p, z.imag())))
}

pub fn is_finite(z: &Complex) -> bool {
    z.real().is_finite() && z.imag().is_finite()
}
