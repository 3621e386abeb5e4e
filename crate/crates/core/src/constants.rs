//! Laurent coefficients about s = 1: C_j for zeta and A_j for zeta'/zeta,
//! with two independent routes (Cauchy integrals and Israilov's recursion)
//! cross-validating each other.

use crate::error::{Error, Result};
use crate::numkern::{self, circle_derivatives};
use crate::precision::PrecisionContext;
use once_cell::sync::Lazy;
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub const J_MAX_SUPPORTED: u32 = 20;

/// C_j and A_j to index j_max at a fixed precision.
#[derive(Debug, Clone)]
pub struct LaurentTable {
    c: Vec<Float>,
    a: Vec<Float>,
    j_max: u32,
    digits: u32,
}

impl LaurentTable {
    pub fn c(&self) -> &[Float] {
        &self.c
    }

    pub fn a(&self) -> &[Float] {
        &self.a
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn require(&self, j: u32) -> Result<()> {
        if j > self.j_max {
            Err(Error::TablesTooShallow(format!(
                "need Laurent coefficients to index {j}, table holds {}",
                self.j_max
            )))
        } else {
            Ok(())
        }
    }
}

/// Taylor coefficients of f about s = 1 on a circle of the given radius.
fn taylor_coefficients_about_one(
    f: impl FnMut(&Complex) -> Result<Complex>,
    j_max: u32,
    radius: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    let prec = ctx.bits();
    let center = ctx.complex((1, 0));
    let r = ctx.float(radius);
    let m = 64 * ctx.digits().div_ceil(15) * 4;
    let derivs = circle_derivatives(f, &center, &r, j_max, m, ctx)?;
    let mut fact = Float::with_val(prec, 1);
    derivs
        .into_iter()
        .enumerate()
        .map(|(j, d)| {
            if j > 1 {
                fact *= Float::with_val(prec, j as u64);
            }
            // Coefficient = f^(j)(1)/j!; the imaginary part must vanish.
            let coeff = Complex::with_val(prec, &d / &fact);
            let imag_mag = Float::with_val(prec, coeff.imag()).abs();
            if imag_mag > ctx.pow10(-(ctx.digits() as i32)) {
                return Err(Error::PrecisionUnachievable(format!(
                    "Laurent coefficient {j} has imaginary residue {:.2e}",
                    imag_mag.to_f64()
                )));
            }
            Ok(Float::with_val(prec, coeff.real()))
        })
        .collect()
}

/// C_j from the Cauchy integral of zeta(s) - 1/(s-1) about s = 1.
pub fn stieltjes_c(j_max: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    stieltjes_c_radius(j_max, 0.5, ctx)
}

pub(crate) fn stieltjes_c_radius(
    j_max: u32,
    radius: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    if j_max > J_MAX_SUPPORTED {
        return Err(Error::InvalidInput(format!(
            "j_max {j_max} beyond supported {J_MAX_SUPPORTED}"
        )));
    }
    let prec = ctx.bits();
    taylor_coefficients_about_one(
        |z| {
            let zeta = numkern::zeta_raw(z, ctx)?;
            let pole = Complex::with_val(prec, z - &Complex::with_val(prec, (1, 0))).recip();
            Ok(Complex::with_val(prec, &zeta - &pole))
        },
        j_max,
        radius,
        ctx,
    )
}

/// A_j from C_j by Israilov's recursion:
/// A_0 = C_0; A_j = (j+1) C_j - sum_{k<j} A_k C_{j-1-k}.
pub fn israilov_a(c: &[Float], j_max: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if c.len() <= j_max as usize {
        return Err(Error::TablesTooShallow(format!(
            "recursion to {j_max} needs C_0..C_{j_max}, got {}",
            c.len()
        )));
    }
    let prec = ctx.bits();
    let mut a: Vec<Float> = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max as usize {
        if j == 0 {
            a.push(c[0].clone());
            continue;
        }
        let mut v = Float::with_val(prec, &c[j] * (j as u64 + 1));
        for k in 0..j {
            v -= Float::with_val(prec, &a[k] * &c[j - 1 - k]);
        }
        a.push(v);
    }
    let _ = ctx;
    Ok(a)
}

/// A_j directly from the Cauchy integral of zeta'/zeta(s) + 1/(s-1):
/// independent of the recursion, used as its cross-check.
pub fn a_oracle(j_max: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if j_max > J_MAX_SUPPORTED {
        return Err(Error::InvalidInput(format!(
            "j_max {j_max} beyond supported {J_MAX_SUPPORTED}"
        )));
    }
    let prec = ctx.bits();
    taylor_coefficients_about_one(
        |z| {
            let zeta = numkern::zeta_raw(z, ctx)?;
            let dz = numkern::zeta_derivs_raw(1, z, ctx)?.pop().expect("zeta'");
            let log_deriv = Complex::with_val(prec, &dz / &zeta);
            let pole = Complex::with_val(prec, z - &Complex::with_val(prec, (1, 0))).recip();
            Ok(Complex::with_val(prec, &log_deriv + &pole))
        },
        j_max,
        0.5,
        ctx,
    )
}

/// Build (or fetch from the process-wide cache) the table to j_max.
pub fn laurent_table(j_max: u32, ctx: &PrecisionContext) -> Result<Arc<LaurentTable>> {
    static CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<LaurentTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    // Build a little deeper than asked so nearby requests share one entry.
    let build_j = j_max.max(8).min(J_MAX_SUPPORTED);
    let key = (build_j, ctx.bits());
    {
        let cache = CACHE.lock().unwrap();
        if let Some(t) = cache.get(&key) {
            return Ok(Arc::clone(t));
        }
    }
    let c = stieltjes_c(build_j, ctx)?;
    let a = israilov_a(&c, build_j, ctx)?;
    let table = Arc::new(LaurentTable {
        c,
        a,
        j_max: build_j,
        digits: ctx.digits(),
    });
    CACHE.lock().unwrap().insert(key, Arc::clone(&table));
    Ok(table)
}

/// Euler-Mascheroni constant as the Richardson-accelerated limit of
/// H_N - log N. Test oracle for C_0, independent of the contour route.
pub fn harmonic_gamma_oracle(ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    // a(N) = H_N - ln N = gamma + 1/(2N) - sum B_{2k}/(2k N^2k): a power
    // series in h = 1/N, so polynomial (Neville) extrapolation at h -> 0
    // over N, 2N, 4N, ... converges geometrically.
    let levels = 12usize;
    let n0 = 512u64;
    let mut h: Vec<Float> = Vec::with_capacity(levels);
    let mut val: Vec<Float> = Vec::with_capacity(levels);
    let mut harmonic = Float::new(prec);
    let mut m = 0u64;
    for lev in 0..levels {
        let n = n0 << lev;
        while m < n {
            m += 1;
            harmonic += Float::with_val(prec, m).recip();
        }
        let mut a = harmonic.clone();
        a -= Float::with_val(prec, n).ln();
        h.push(Float::with_val(prec, n).recip());
        val.push(a);
    }
    // Neville tableau at h = 0.
    let mut tab = val;
    for k in 1..levels {
        for i in (k..levels).rev() {
            // tab[i] = (h[i-k]*tab[i] - h[i]*tab[i-1]) / (h[i-k] - h[i])
            let mut num = Float::with_val(prec, &h[i - k] * &tab[i]);
            num -= Float::with_val(prec, &h[i] * &tab[i - 1]);
            let den = Float::with_val(prec, &h[i - k] - &h[i]);
            tab[i] = num / den;
        }
    }
    let gamma = tab[levels - 1].clone();
    if !gamma.is_finite() {
        return Err(Error::NonFinite("harmonic gamma oracle".into()));
    }
    Ok(gamma)
}

/// The classical limits gamma_j = lim (sum_{k<=N} log^j k / k - log^{j+1} N/(j+1)),
/// evaluated with Euler-Maclaurin tail corrections for f(x) = log^j(x)/x.
/// Relates to the Laurent coefficients by C_j = (-1)^j gamma_j / j!.
pub fn stieltjes_gamma_oracle(j: u32, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let n = 10_000u64 + 200 * u64::from(j);
    let lns = crate::numkern::zeta::ln_table(prec, n as usize);
    // Direct partial sum.
    let mut partial = Float::new(prec);
    for m in 1..=n {
        let lj = crate::arith::int_pow(&lns[m as usize], j, ctx);
        partial += lj / Float::with_val(prec, m);
    }
    let ln_n = lns[n as usize].clone();
    partial -= crate::arith::int_pow(&ln_n, j + 1, ctx) / Float::with_val(prec, j + 1);
    // Euler-Maclaurin corrections at the endpoint N for f(x) = log^j(x)/x:
    // gamma_j = partial - f(N)/2 + sum_k B_2k/(2k)! f^(2k-1)(N) (+ tail).
    // Derivatives: f^(m)(x) = sum_i coef[i] log^i(x) / x^(m+1), built by the
    // recurrence coef' shifts from differentiating log powers and 1/x^(m+1).
    let f_n = crate::arith::int_pow(&ln_n, j, ctx) / Float::with_val(prec, n);
    partial -= Float::with_val(prec, &f_n / 2u32);

    // Polynomial-in-log coefficient vectors for successive derivatives.
    let mut coef: Vec<Float> = vec![Float::new(prec); j as usize + 1];
    coef[j as usize] = Float::with_val(prec, 1);
    let mut order = 0u32; // current derivative order of f
    let scaled = crate::numkern::bernoulli_scaled(prec, 64);
    let inv_n = Float::with_val(prec, n).recip();
    let mut n_pow = inv_n.clone(); // N^-(order+1)
    let mut correction_applied = 0usize;
    for k in 1..=40u32 {
        // Need f^(2k-1): differentiate from current order to 2k-1.
        while order < 2 * k - 1 {
            // d/dx [ log^i x / x^(m+1) ] = i log^(i-1)/x^(m+2) - (m+1) log^i/x^(m+2)
            let mut next = vec![Float::new(prec); coef.len()];
            for (i, c) in coef.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i > 0 {
                    let add = Float::with_val(prec, c * (i as u64));
                    next[i - 1] += add;
                }
                let sub = Float::with_val(prec, c * (order as u64 + 1));
                next[i] -= sub;
            }
            coef = next;
            order += 1;
            n_pow *= &inv_n;
        }
        // f^(2k-1)(N) = sum_i coef[i] log^i(N) * N^-(2k)
        let mut fv = Float::new(prec);
        let mut lp = Float::with_val(prec, 1);
        for c in coef.iter() {
            fv += Float::with_val(prec, c * &lp);
            lp *= &ln_n;
        }
        fv *= &n_pow;
        // gamma_j = [partial sum - integral] - f(N)/2 - sum B_2k/(2k)! f^(2k-1)(N)
        let term = Float::with_val(prec, &scaled.over_fact[k as usize] * &fv);
        let mag = term.clone().abs();
        partial -= term;
        correction_applied += 1;
        if mag < ctx.pow10(-(ctx.work_digits() as i32)) {
            break;
        }
    }
    if correction_applied == 0 {
        return Err(Error::PrecisionUnachievable("no E-M corrections applied".into()));
    }
    if !partial.is_finite() {
        return Err(Error::NonFinite("stieltjes gamma oracle".into()));
    }
    Ok(partial)
}
