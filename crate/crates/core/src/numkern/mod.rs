//! Extended-precision kernels: zeta and its derivatives, the functional
//! equation factor chi, xi log-derivative, and the Riemann-Siegel pair
//! (theta, Z).
//!
//! All operations are pure functions of (inputs, context) and are safe for
//! concurrent use; the only shared state is read-mostly caches of logs and
//! Bernoulli numbers.

mod bernoulli;
mod cauchy;
mod chi;
pub(crate) mod cx;
mod gamma;
pub(crate) mod zeta;

use crate::error::{Error, Result};
use crate::precision::{CValue, PrecisionContext};
use rug::{Complex, Float};

pub(crate) use bernoulli::scaled as bernoulli_scaled;
pub(crate) use cauchy::{circle_derivatives, node_count};
pub(crate) use chi::chi_raw;
pub(crate) use gamma::{digamma, ln_gamma};
pub(crate) use zeta::zeta_raw;

/// zeta(s) by Euler-Maclaurin summation.
pub fn zeta(s: &CValue, ctx: &PrecisionContext) -> Result<CValue> {
    let v = zeta_raw(s.as_complex(), ctx)?;
    CValue::checked(v, "zeta")
}

/// n-th derivative of zeta. n = 0 falls back to plain zeta; n >= 1 uses the
/// trapezoidal Cauchy integral on a circle clear of the pole at 1.
pub fn zeta_derivative(n: u32, s: &CValue, ctx: &PrecisionContext) -> Result<CValue> {
    let mut derivs = zeta_derivs_raw(n, s.as_complex(), ctx)?;
    CValue::checked(derivs.pop().expect("n-th entry"), "zeta_derivative")
}

/// zeta and all derivatives up to n_max from one shared set of circle nodes.
pub fn zeta_derivatives(n_max: u32, s: &CValue, ctx: &PrecisionContext) -> Result<Vec<CValue>> {
    zeta_derivs_raw(n_max, s.as_complex(), ctx)?
        .into_iter()
        .map(|c| CValue::checked(c, "zeta_derivatives"))
        .collect()
}

pub(crate) fn zeta_derivs_raw(
    n_max: u32,
    s: &Complex,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>> {
    if n_max == 0 {
        return Ok(vec![zeta_raw(s, ctx)?]);
    }
    let prec = ctx.bits();
    let dist = cx::cabs(&Complex::with_val(
        prec,
        s - &Complex::with_val(prec, (1, 0)),
    ));
    if dist < 2e-3 {
        return Err(Error::PoleTooClose);
    }
    let mut radius = ctx.float(0.25);
    let half = Float::with_val(prec, &dist / 2u32);
    if half < radius {
        radius = half;
    }
    let m = node_count(n_max, ctx);
    circle_derivatives(|z| zeta_raw(z, ctx), s, &radius, n_max, m, ctx)
}

/// chi(s) from the functional equation zeta(s) = chi(s) zeta(1-s).
pub fn chi(s: &CValue, ctx: &PrecisionContext) -> Result<CValue> {
    let v = chi_raw(s.as_complex(), ctx)?;
    CValue::checked(v, "chi")
}

/// Residual of the generalised functional equation for the n-th derivative:
///
///   | zeta^(n)(s) - (1/chi(1-s)) sum_k C(n,k) (-1)^k chi^(n-k)(s)/chi(s)
///                                              * zeta^(k)(1-s) |
pub fn functional_equation_residual(
    n: u32,
    s: &CValue,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let prec = ctx.bits();
    let sc = s.as_complex();
    let one_minus_s = Complex::with_val(prec, &Complex::with_val(prec, (1, 0)) - sc);

    let lhs = zeta_derivs_raw(n, sc, ctx)?.pop().expect("n-th entry");
    let zeta_at_reflect = zeta_derivs_raw(n, &one_minus_s, ctx)?;
    let chi_derivs = chi::chi_derivs_raw(n, sc, ctx)?;
    let chi_s = chi_derivs[0].clone();
    let chi_reflect = chi_raw(&one_minus_s, ctx)?;

    let mut sum = Complex::new(prec);
    for k in 0..=n {
        let mut term = Complex::with_val(prec, &chi_derivs[(n - k) as usize] / &chi_s);
        term *= &zeta_at_reflect[k as usize];
        if k % 2 == 1 {
            term = -term;
        }
        term *= Float::with_val(prec, binomial_u64(n, k));
        sum += term;
    }
    sum /= &chi_reflect;
    let resid = cx::cabs(&Complex::with_val(prec, &lhs - &sum));
    if !resid.is_finite() {
        return Err(Error::NonFinite("functional_equation_residual".into()));
    }
    Ok(resid)
}

/// xi'(s)/xi(s) = (2s-1)/(s(s-1)) - log(pi)/2 + psi(s/2)/2 + zeta'(s)/zeta(s).
pub fn xi_log_derivative(s: &CValue, ctx: &PrecisionContext) -> Result<CValue> {
    let prec = ctx.bits();
    let sc = s.as_complex();
    let zeta_v = zeta_raw(sc, ctx)?;
    if cx::cabs(&zeta_v) < ctx.resolution() {
        return Err(Error::ZeroOfZeta);
    }
    let zeta_d = zeta_derivs_raw(1, sc, ctx)?.pop().expect("derivative");

    let one = Complex::with_val(prec, (1, 0));
    let s_minus_1 = Complex::with_val(prec, sc - &one);
    let mut rational = Complex::with_val(prec, sc * 2u32);
    rational -= &one;
    let denom = Complex::with_val(prec, sc * &s_minus_1);
    rational /= &denom;

    let half_s = Complex::with_val(prec, sc / 2u32);
    let psi = digamma(&half_s, ctx)?;

    let mut v = rational;
    v -= Complex::with_val(prec, (&(ctx.ln_pi() / 2u32), &Float::new(prec)));
    v += Complex::with_val(prec, &psi / 2u32);
    v += Complex::with_val(prec, &zeta_d / &zeta_v);
    CValue::checked(v, "xi_log_derivative")
}

/// xi(s) = s(s-1)/2 * pi^(-s/2) Gamma(s/2) zeta(s).
pub fn xi(s: &CValue, ctx: &PrecisionContext) -> Result<CValue> {
    let prec = ctx.bits();
    let sc = s.as_complex();
    let half_s = Complex::with_val(prec, sc / 2u32);
    let lg = ln_gamma(&half_s, ctx)?;
    let zeta_v = zeta_raw(sc, ctx)?;
    let mut expo = Complex::with_val(prec, &half_s * &ctx.ln_pi());
    expo = -expo;
    expo += lg;
    let mut v = expo.exp();
    v *= &zeta_v;
    let one = Complex::with_val(prec, (1, 0));
    v *= Complex::with_val(prec, sc - &one);
    v *= sc;
    v /= 2u32;
    CValue::checked(v, "xi")
}

/// Riemann-Siegel theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log(pi).
pub fn riemann_siegel_theta(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *t <= 1.0f64 {
        return Err(Error::InvalidInput("theta requires t > 1".into()));
    }
    let prec = ctx.bits();
    let z = Complex::with_val(prec, (Float::with_val(prec, 0.25), Float::with_val(prec, t) / 2u32));
    let lg = ln_gamma(&z, ctx)?;
    let mut theta = Float::with_val(prec, lg.imag());
    theta -= Float::with_val(prec, t * &ctx.ln_pi()) / 2u32;
    if !theta.is_finite() {
        return Err(Error::NonFinite("riemann_siegel_theta".into()));
    }
    Ok(theta)
}

/// theta'(t) = Re psi(1/4 + it/2)/2 - log(pi)/2.
pub(crate) fn theta_deriv(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let z = Complex::with_val(prec, (Float::with_val(prec, 0.25), Float::with_val(prec, t) / 2u32));
    let psi = digamma(&z, ctx)?;
    let mut d = Float::with_val(prec, psi.real());
    d -= &ctx.ln_pi();
    d /= 2u32;
    Ok(d)
}

/// Hardy's function Z(t) = e^(i theta(t)) zeta(1/2 + it); real for real t,
/// with sign changes exactly at ordinates of on-line zeros.
pub fn hardy_z(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let theta = riemann_siegel_theta(t, ctx)?;
    let s = Complex::with_val(prec, (Float::with_val(prec, 0.5), Float::with_val(prec, t)));
    let zv = zeta_raw(&s, ctx)?;
    let (sin_t, cos_t) = theta.sin_cos(Float::new(prec));
    let mut z = Float::with_val(prec, zv.real() * &cos_t);
    z -= Float::with_val(prec, zv.imag() * &sin_t);
    if !z.is_finite() {
        return Err(Error::NonFinite("hardy_z".into()));
    }
    Ok(z)
}

pub(crate) fn binomial_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
