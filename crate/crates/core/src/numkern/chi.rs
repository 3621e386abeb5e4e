//! The functional-equation factor chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s),
//! so that zeta(s) = chi(s) zeta(1-s).

use super::{cauchy, cx, gamma};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use rug::{Complex, Float};

/// Direct evaluation; valid away from s = 1, 2, 3, ... where Gamma(1-s)
/// blows up (at even s the sine zero cancels the pole, but not pointwise).
fn chi_direct(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    let one = Complex::with_val(prec, (1, 0));
    let one_minus_s = Complex::with_val(prec, &one - s);
    let lg = gamma::ln_gamma(&one_minus_s, ctx)?;
    let mut expo = Complex::with_val(prec, s * &ctx.ln2());
    expo += Complex::with_val(prec, &Complex::with_val(prec, s - &one) * &ctx.ln_pi());
    expo += lg;
    let mut v = expo.exp();
    let half_pi_s = Complex::with_val(prec, s * &ctx.pi()) / 2u32;
    v *= half_pi_s.sin();
    if !cx::is_finite(&v) {
        return Err(Error::NonFinite("chi".into()));
    }
    Ok(v)
}

/// Nearest positive integer to s and the distance to it, when s is close to
/// the real axis; None otherwise.
fn near_positive_integer(s: &Complex, window: f64) -> Option<(u64, f64)> {
    let im = s.imag().to_f64().abs();
    if im > window {
        return None;
    }
    let re = s.real().to_f64();
    let k = re.round();
    if k < 1.0 {
        return None;
    }
    let d = ((re - k).powi(2) + im * im).sqrt();
    if d <= window {
        Some((k as u64, d))
    } else {
        None
    }
}

pub(crate) fn chi_raw(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if let Some((k, d)) = near_positive_integer(s, 0.05) {
        if k % 2 == 1 {
            // Genuine pole of chi at odd positive integers.
            if d < ctx.resolution().to_f64() {
                return Err(Error::PoleOfChi);
            }
        } else {
            // Regular point, but Gamma(1-s) alone is singular: use
            // chi(s) = 1/chi(1-s), whose direct form is safe here.
            let prec = ctx.bits();
            let one_minus_s = Complex::with_val(prec, &Complex::with_val(prec, (1, 0)) - s);
            let v = chi_direct(&one_minus_s, ctx)?;
            if cx::cabs(&v) < ctx.resolution() {
                return Err(Error::PoleOfChi);
            }
            return Ok(v.recip());
        }
    }
    chi_direct(s, ctx)
}

/// Distance from s to the nearest pole of chi (odd positive integers).
fn pole_distance(s: &Complex, ctx: &PrecisionContext) -> Float {
    let prec = ctx.bits();
    let im = Float::with_val(prec, s.imag()).abs();
    let re = s.real().to_f64();
    let mut best = Float::with_val(prec, f64::MAX);
    let base = (re / 2.0).floor() as i64;
    for j in base - 1..=base + 2 {
        let k = 2 * j + 1;
        if k < 1 {
            continue;
        }
        let dre = Float::with_val(prec, s.real() - Float::with_val(prec, k));
        let mut d = Float::with_val(prec, &dre * &dre);
        d += Float::with_val(prec, &im * &im);
        let d = d.sqrt();
        if d < best {
            best = d;
        }
    }
    best
}

/// chi and its first n_max derivatives by the Cauchy-circle method.
pub(crate) fn chi_derivs_raw(
    n_max: u32,
    s: &Complex,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>> {
    let d = pole_distance(s, ctx);
    let mut radius = ctx.float(0.25);
    let half_d = Float::with_val(ctx.bits(), &d / 2u32);
    if half_d < radius {
        radius = half_d;
    }
    if radius < 1e-3 {
        return Err(Error::PoleTooClose);
    }
    let m = cauchy::node_count(n_max, ctx);
    cauchy::circle_derivatives(|z| chi_raw(z, ctx), s, &radius, n_max, m, ctx)
}
