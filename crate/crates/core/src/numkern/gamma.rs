//! Complex log-gamma and digamma via the Stirling series after shifting
//! Re(z) above a precision-dependent threshold.

use super::{bernoulli, cx};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use rug::{Complex, Float};

/// Minimum real part at which the Stirling tail reaches working precision.
fn shift_threshold(ctx: &PrecisionContext) -> u32 {
    let spec = 10 * ctx.digits().div_ceil(15);
    let floor = (0.4 * ctx.work_digits() as f64).ceil() as u32;
    spec.max(floor)
}

/// Unit shifts needed before the Stirling series converges: raise Re(z) to
/// the threshold unless |z| is already far outside it (the tail depends on
/// |z|, so high-imaginary arguments need no shifting at all).
fn shift_count(z: &Complex, ctx: &PrecisionContext) -> u64 {
    let thr = shift_threshold(ctx) as f64;
    let re = z.real().to_f64();
    if re >= thr {
        return 0;
    }
    let im = z.imag().to_f64().abs();
    if (re * re + im * im).sqrt() >= 2.5 * thr {
        return 0;
    }
    (thr - re).ceil() as u64 + 1
}

fn near_gamma_pole(z: &Complex, ctx: &PrecisionContext) -> bool {
    if !z.real().is_sign_negative() && *z.real() > 0.25f64 {
        return false;
    }
    let p = z.real().prec();
    let im = Float::with_val(p, z.imag()).abs();
    if im > 0.25f64 {
        return false;
    }
    let rounded = Float::with_val(p, z.real()).round();
    if rounded > 0.5f64 {
        return false;
    }
    let dre = Float::with_val(p, z.real() - &rounded).abs();
    let mut d = dre;
    d += im;
    d < ctx.resolution()
}

/// Principal-branch log-gamma, continuous in Im(z) for Re-shifted arguments.
pub(crate) fn ln_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    if near_gamma_pole(z, ctx) {
        return Err(Error::InvalidInput(
            "log-gamma evaluated at a pole of Gamma".into(),
        ));
    }
    if z.imag().is_sign_negative() && !z.imag().is_zero() {
        let r = ln_gamma(&cx::conj(z), ctx)?;
        return Ok(cx::conj(&r));
    }

    let shift = shift_count(z, ctx);
    let w = Complex::with_val(prec, z + Complex::with_val(prec, (shift, 0)));

    // Stirling: (w - 1/2) ln w - w + ln(2 pi)/2 + sum B_{2k}/((2k)(2k-1)) w^(1-2k)
    let ln_w = Complex::with_val(prec, w.ln_ref());
    let half = Float::with_val(prec, 0.5);
    let mut lg = Complex::with_val(prec, &w - &Complex::with_val(prec, (&half, &Float::new(prec))));
    lg *= &ln_w;
    lg -= &w;
    lg += Complex::with_val(prec, (&(ctx.ln_two_pi() * &half), &Float::new(prec)));

    let mut eps = Float::with_val(prec, 2);
    {
        use rug::ops::Pow;
        eps = eps.pow(-(prec as i32 - 4));
    }
    let mut scale = cx::cest(&lg);
    if scale < 1u32 {
        scale = Float::with_val(prec, 1);
    }
    eps *= &scale;

    let inv_w = Complex::with_val(prec, w.recip_ref());
    let inv_w2 = Complex::with_val(prec, &inv_w * &inv_w);
    let mut pw = inv_w.clone(); // w^(1-2k) for k = 1
    let mut bern = bernoulli::scaled(prec, 64);
    let mut k = 1usize;
    loop {
        if k >= bern.over_stirling.len() {
            bern = bernoulli::scaled(prec, 2 * k);
        }
        let term = Complex::with_val(prec, &pw * &bern.over_stirling[k]);
        let est = cx::cest(&term);
        lg += &term;
        if est < eps {
            break;
        }
        if k > 300 {
            return Err(Error::PrecisionUnachievable(
                "Stirling series for log-gamma did not converge".into(),
            ));
        }
        pw *= &inv_w2;
        k += 1;
    }

    // Undo the shift: ln Gamma(z) = ln Gamma(z + m) - sum_{j<m} ln(z + j).
    for j in 0..shift {
        let term = Complex::with_val(prec, z + Complex::with_val(prec, (j, 0))).ln();
        lg -= term;
    }
    if !cx::is_finite(&lg) {
        return Err(Error::NonFinite("log-gamma".into()));
    }
    Ok(lg)
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z) by the shifted Stirling series.
pub(crate) fn digamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    if near_gamma_pole(z, ctx) {
        return Err(Error::InvalidInput("digamma evaluated at a pole".into()));
    }
    if z.imag().is_sign_negative() && !z.imag().is_zero() {
        let r = digamma(&cx::conj(z), ctx)?;
        return Ok(cx::conj(&r));
    }

    let shift = shift_count(z, ctx);
    let w = Complex::with_val(prec, z + Complex::with_val(prec, (shift, 0)));

    // psi(w) = ln w - 1/(2w) - sum B_{2k}/(2k) w^(-2k)
    let mut ps = Complex::with_val(prec, w.ln_ref());
    let inv_w = Complex::with_val(prec, w.recip_ref());
    ps -= Complex::with_val(prec, &inv_w / 2u32);
    let inv_w2 = Complex::with_val(prec, &inv_w * &inv_w);

    let mut eps = Float::with_val(prec, 2);
    {
        use rug::ops::Pow;
        eps = eps.pow(-(prec as i32 - 4));
    }
    let mut scale = cx::cest(&ps);
    if scale < 1u32 {
        scale = Float::with_val(prec, 1);
    }
    eps *= &scale;

    let mut pw = inv_w2.clone(); // w^(-2k), k = 1
    let mut bern = bernoulli::scaled(prec, 64);
    let mut k = 1usize;
    loop {
        if k >= bern.over_2k.len() {
            bern = bernoulli::scaled(prec, 2 * k);
        }
        let term = Complex::with_val(prec, &pw * &bern.over_2k[k]);
        let est = cx::cest(&term);
        ps -= &term;
        if est < eps {
            break;
        }
        if k > 300 {
            return Err(Error::PrecisionUnachievable(
                "digamma asymptotic series did not converge".into(),
            ));
        }
        pw *= &inv_w2;
        k += 1;
    }

    // psi(z) = psi(z + m) - sum_{j<m} 1/(z + j)
    for j in 0..shift {
        let term = Complex::with_val(prec, z + Complex::with_val(prec, (j, 0))).recip();
        ps -= term;
    }
    if !cx::is_finite(&ps) {
        return Err(Error::NonFinite("digamma".into()));
    }
    Ok(ps)
}
