//! Euler-Maclaurin evaluation of zeta(s).
//!
//! zeta(s) = sum_{m<N} m^-s + N^-s/2 + N^(1-s)/(s-1)
//!           + sum_{k=1..K} B_{2k}/(2k)! (s)_{2k-1} N^(-s-2k+1) + R_K
//!
//! N starts at max(ceil(|t|/2), working digits) so the Bernoulli tail
//! converges uniformly on the strip at desk heights; K is chosen by the
//! Bernoulli-tail bound and N escalates if the bound cannot be met.

use super::{bernoulli, cx};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use once_cell::sync::Lazy;
use rug::{Assign, Complex, Float};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

static LN_TABLES: Lazy<RwLock<HashMap<u32, Arc<Vec<Float>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// ln(m) for m = 0..=n (index 0 is a placeholder zero).
pub(crate) fn ln_table(prec: u32, n: usize) -> Arc<Vec<Float>> {
    {
        let map = LN_TABLES.read().unwrap();
        if let Some(t) = map.get(&prec) {
            if t.len() > n {
                return Arc::clone(t);
            }
        }
    }
    let mut map = LN_TABLES.write().unwrap();
    // Re-check: another thread may have extended while we waited.
    if let Some(t) = map.get(&prec) {
        if t.len() > n {
            return Arc::clone(t);
        }
    }
    let target = (n + 1).max(256).next_power_of_two();
    let mut v: Vec<Float> = Vec::with_capacity(target);
    if let Some(old) = map.get(&prec) {
        v.extend(old.iter().cloned());
    } else {
        v.push(Float::new(prec));
    }
    for m in v.len()..target {
        v.push(Float::with_val(prec, m as u64).ln());
    }
    let arc = Arc::new(v);
    map.insert(prec, Arc::clone(&arc));
    arc
}

/// zeta(s) for s away from 1, sigma not far below the strip.
pub(crate) fn zeta_raw(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    let one = Complex::with_val(prec, (1, 0));
    let s_minus_1 = Complex::with_val(prec, s - &one);
    if cx::cabs(&s_minus_1) < ctx.resolution() {
        return Err(Error::PoleAtOne);
    }
    let sigma = s.real();
    if *sigma < -3.0 {
        return Err(Error::PrecisionUnachievable(
            "zeta kernel supports sigma >= -3 only".into(),
        ));
    }
    let t_abs = Float::with_val(prec, s.imag()).abs();
    let mut n = (t_abs.to_f64() / 2.0).ceil().max(ctx.work_digits() as f64) as u64;
    for _ in 0..4 {
        if let Some(v) = euler_maclaurin(s, &s_minus_1, n, ctx)? {
            return Ok(v);
        }
        n *= 2;
    }
    Err(Error::PrecisionUnachievable(format!(
        "Euler-Maclaurin tail bound not met for s = {s}"
    )))
}

/// One Euler-Maclaurin attempt with N = `n` direct terms. Returns None if
/// the Bernoulli tail fails to meet the target before it starts diverging.
fn euler_maclaurin(
    s: &Complex,
    s_minus_1: &Complex,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<Option<Complex>> {
    let prec = ctx.bits();
    let lns = ln_table(prec, n as usize);
    let neg_s = Complex::with_val(prec, -s.clone());

    // Direct sum over m < N. Only prime m need a transcendental evaluation;
    // composite m^-s is the product of two smaller powers already computed.
    let mut acc = Complex::with_val(prec, (1, 0)); // m = 1
    let mut powers: Vec<Complex> = Vec::with_capacity(n.saturating_sub(2) as usize);
    crate::sieve::with_spf(n as usize, |spf| {
        let mut tmp = Complex::new(prec);
        for m in 2..n {
            let p = spf[m as usize] as u64;
            if p == m {
                tmp.assign(&neg_s * &lns[m as usize]);
                tmp.exp_mut();
            } else {
                let q = m / p;
                tmp.assign(&powers[(p - 2) as usize] * &powers[(q - 2) as usize]);
            }
            acc += &tmp;
            powers.push(tmp.clone());
        }
    })?;
    drop(powers);

    // N^-s, the half term and the integral term N^(1-s)/(s-1).
    let ln_n = &lns[n as usize];
    let mut npow = Complex::with_val(prec, &neg_s * ln_n);
    npow.exp_mut();
    acc += Complex::with_val(prec, &npow / 2u32);
    let integral = Complex::with_val(prec, &npow * n) / s_minus_1;
    acc += integral;

    // Bernoulli corrections: term_k = B_{2k}/(2k)! * (s)_{2k-1} * N^(-s-2k+1).
    let mut eps = Float::with_val(prec, 2);
    eps = eps.pow_i32(-(prec as i32 - 6));
    let scale = {
        let mut sc = cx::cest(&acc);
        if sc < 1u32 {
            sc.assign(1);
        }
        sc
    };
    eps *= &scale;

    let n_f = Float::with_val(prec, n);
    let inv_n2 = Float::with_val(prec, &n_f * &n_f).recip();
    let mut poch = s.clone(); // (s)_1
    let mut power = Complex::with_val(prec, &npow / &n_f); // N^(-s-1)
    let mut prev_est: Option<Float> = None;
    let mut k = 1usize;
    let mut bern = bernoulli::scaled(prec, 64);
    loop {
        if k >= bern.over_fact.len() {
            bern = bernoulli::scaled(prec, 2 * k);
        }
        let term = Complex::with_val(prec, &poch * &power) * &bern.over_fact[k];
        let est = cx::cest(&term);
        acc += &term;
        // Remainder bound: |next term| * |s+2k+1|/(sigma+2k+1); the factor is
        // O(1) here, so a decreasing |term| below eps is the working test.
        if est < eps {
            if !cx::is_finite(&acc) {
                return Err(Error::NonFinite("zeta Euler-Maclaurin".into()));
            }
            return Ok(Some(acc));
        }
        if let Some(p) = &prev_est {
            if est > *p {
                return Ok(None); // asymptotic tail diverging; escalate N
            }
        }
        prev_est = Some(est);
        if k > 400 {
            return Ok(None);
        }
        // Advance poch to (s)_{2k+1} and power to N^(-s-2k-1).
        let a = Complex::with_val(prec, s + Complex::with_val(prec, ((2 * k - 1) as u64, 0)));
        let b = Complex::with_val(prec, s + Complex::with_val(prec, ((2 * k) as u64, 0)));
        poch *= a;
        poch *= b;
        power *= &inv_n2;
        k += 1;
    }
}

trait PowI32 {
    fn pow_i32(self, e: i32) -> Float;
}

impl PowI32 for Float {
    fn pow_i32(self, e: i32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn zeta_two_is_pi2_over_6() {
        let c = ctx();
        let s = c.complex((2, 0));
        let z = zeta_raw(&s, &c).unwrap();
        let pi = c.pi();
        let expect = Float::with_val(c.bits(), &pi * &pi) / 6u32;
        let diff = Float::with_val(c.bits(), z.real() - &expect).abs();
        assert!(diff < c.pow10(-38), "diff = {diff}");
        assert!(Float::with_val(c.bits(), z.imag()).abs() < c.pow10(-38));
    }

    #[test]
    fn zeta_zero_is_minus_half() {
        let c = ctx();
        let z = zeta_raw(&c.complex((0, 0)), &c).unwrap();
        let diff = Float::with_val(c.bits(), z.real() + 0.5f64).abs();
        assert!(diff < c.pow10(-38), "diff = {diff}");
    }

    #[test]
    fn pole_rejected() {
        let c = ctx();
        assert!(matches!(
            zeta_raw(&c.complex((1, 0)), &c),
            Err(Error::PoleAtOne)
        ));
    }

    #[test]
    fn matches_dirichlet_series_at_sigma_3() {
        let c = ctx();
        let s = c.complex((3, 0.7));
        let z = zeta_raw(&s, &c).unwrap();
        // Direct Dirichlet sum with integral tail bound: tail < M^(1-3)/2.
        let prec = c.bits();
        let mut acc = Complex::new(prec);
        let m_max = 40_000u64; // tail ~ 3e-10; compare loosely below
        for m in 1..=m_max {
            let lm = Float::with_val(prec, m).ln();
            let mut t = Complex::with_val(prec, &s * &lm);
            t = -t;
            t.exp_mut();
            acc += t;
        }
        let diff = cx::cabs(&Complex::with_val(prec, &z - &acc));
        assert!(diff < c.float(1e-8), "diff = {diff}");
    }
}
