//! Arithmetic building blocks: the von Mangoldt function, the integer
//! indicator Delta(X), divisor-convolution sums, and the oscillatory
//! exponential sums that appear on the explicit side of the expansions.
//!
//! X is carried as an exact rational throughout, so Delta(X) is decidable
//! exactly and e^(2 pi i m X) reduces its argument in rational arithmetic
//! before any transcendental evaluation.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::sieve::with_spf;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

/// The prime p if m = p^k, None otherwise (Lambda's support).
pub fn prime_power_base(m: u64) -> Result<Option<u64>> {
    if m < 2 {
        return Ok(None);
    }
    with_spf(m as usize, |spf| {
        let p = spf[m as usize] as u64;
        let mut rest = m;
        while rest % p == 0 {
            rest /= p;
        }
        if rest == 1 {
            Some(p)
        } else {
            None
        }
    })
}

/// Lambda(m) = log p when m = p^k, else 0.
pub fn von_mangoldt(m: u64, ctx: &PrecisionContext) -> Result<Float> {
    Ok(match prime_power_base(m)? {
        Some(p) => ctx.float(p).ln(),
        None => ctx.zero(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Approximated,
}

/// Positive rational X in lowest terms, with a flag recording whether it is
/// exact or was rounded from non-rational input.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalX {
    value: Rational,
    exactness: Exactness,
}

impl RationalX {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInput("X must be a positive rational".into()));
        }
        Ok(RationalX {
            value: Rational::from((num, den)),
            exactness: Exactness::Exact,
        })
    }

    pub fn from_rational(value: Rational, exactness: Exactness) -> Result<Self> {
        if value <= 0u32 {
            return Err(Error::InvalidInput("X must be positive".into()));
        }
        Ok(RationalX { value, exactness })
    }

    /// Parse "p/q", an integer, or a decimal literal (taken as an exact
    /// decimal fraction).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: Integer = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
            let d: Integer = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
            if d == 0 {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            return Self::from_rational(Rational::from((n, d)), Exactness::Exact);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let digits: String = format!("{int_part}{frac_part}");
            let n: Integer = digits
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad decimal {s:?}")))?;
            let d = Integer::from(10u32).pow(frac_part.len() as u32);
            return Self::from_rational(Rational::from((n, d)), Exactness::Exact);
        }
        let n: Integer = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
        Self::from_rational(Rational::from(n), Exactness::Exact)
    }

    pub fn numer(&self) -> &Integer {
        self.value.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.value.denom()
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn rational(&self) -> &Rational {
        &self.value
    }

    pub fn is_integer(&self) -> bool {
        *self.value.denom() == 1
    }

    /// Integer value when den = 1 and the numerator fits u64.
    pub fn as_integer(&self) -> Option<u64> {
        if self.is_integer() {
            self.value.numer().to_u64()
        } else {
            None
        }
    }

    pub fn to_float(&self, ctx: &PrecisionContext) -> Float {
        ctx.float(&self.value)
    }

    pub fn ln(&self, ctx: &PrecisionContext) -> Float {
        self.to_float(ctx).ln()
    }
}

impl std::fmt::Display for RationalX {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Delta(X): 1 iff X is a positive integer. Requires exactness, by design:
/// the indicator must not depend on floating-point thresholds.
pub fn delta_indicator(x: &RationalX) -> Result<u8> {
    if x.exactness() == Exactness::Approximated {
        return Err(Error::InexactX);
    }
    Ok(u8::from(x.is_integer()))
}

/// Lambda(X) extended to rationals: zero off the positive integers.
pub fn von_mangoldt_rational(x: &RationalX, ctx: &PrecisionContext) -> Result<Float> {
    match x.as_integer() {
        Some(m) => von_mangoldt(m, ctx),
        None => Ok(ctx.zero()),
    }
}

/// sum over ordered factorizations m*r = X of Lambda(r) log^n m; empty (0)
/// for non-integer X, matching the Delta(X) gating in the expansions.
pub fn conv_sum_at_x(n: u32, x: &RationalX, ctx: &PrecisionContext) -> Result<Float> {
    let Some(xi) = x.as_integer() else {
        return Ok(ctx.zero());
    };
    let mut acc = ctx.zero();
    // Enumerate divisors r of X; m = X / r.
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d * d <= xi {
        if xi % d == 0 {
            divisors.push(d);
            if d != xi / d {
                divisors.push(xi / d);
            }
        }
        d += 1;
    }
    for r in divisors {
        if let Some(p) = prime_power_base(r)? {
            let m = xi / r;
            let lam = ctx.float(p).ln();
            let term = if n == 0 {
                lam
            } else {
                let lm = ctx.float(m).ln();
                lam * int_pow(&lm, n, ctx)
            };
            acc += term;
        }
    }
    Ok(acc)
}

/// x^e with the convention x^0 = 1 (also at x = 0).
pub(crate) fn int_pow(x: &Float, e: u32, ctx: &PrecisionContext) -> Float {
    let mut acc = ctx.float(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Number of full terms m = 1..=M with m <= y.
fn floor_count(y: &Float) -> u64 {
    if !y.is_finite() || y.is_sign_negative() {
        return 0;
    }
    y.clone().floor().to_f64() as u64
}

/// e^(2 pi i c / q), table-backed for small q, direct otherwise.
enum UnityRoots {
    Table(Vec<Complex>),
    Direct { q: u64 },
}

impl UnityRoots {
    fn new(q: u64, ctx: &PrecisionContext) -> Self {
        if q <= 65_536 {
            let prec = ctx.bits();
            let two_pi = ctx.two_pi();
            UnityRoots::Table(
                (0..q)
                    .map(|j| {
                        let theta = Float::with_val(prec, &two_pi * j) / q;
                        let (s, c) = theta.sin_cos(Float::new(prec));
                        Complex::with_val(prec, (c, s))
                    })
                    .collect(),
            )
        } else {
            UnityRoots::Direct { q }
        }
    }

    fn get(&self, c: u64, ctx: &PrecisionContext) -> Complex {
        match self {
            UnityRoots::Table(t) => t[c as usize].clone(),
            UnityRoots::Direct { q } => {
                let prec = ctx.bits();
                let theta = Float::with_val(prec, &ctx.two_pi() * c) / *q;
                let (s, co) = theta.sin_cos(Float::new(prec));
                Complex::with_val(prec, (co, s))
            }
        }
    }
}

/// sum_{m <= Y} e^(2 pi i m X), exactly: complete residue periods cancel,
/// leaving at most (floor(Y) mod q) explicit terms.
pub fn exp_sum(x: &RationalX, y: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    let m_max = floor_count(y);
    if m_max == 0 {
        return Ok(Complex::new(prec));
    }
    let q = x
        .denom()
        .to_u64()
        .ok_or_else(|| Error::SumTooLarge("denominator of X too large".into()))?;
    if q == 1 {
        return Ok(Complex::with_val(prec, (m_max, 0)));
    }
    let p = x
        .numer()
        .clone()
        .modulo(&Integer::from(q))
        .to_u64()
        .expect("residue fits");
    let roots = UnityRoots::new(q, ctx);
    let tail = m_max % q;
    let mut acc = Complex::new(prec);
    let mut c = 0u64;
    for _ in 0..tail {
        c = (c + p) % q;
        acc += roots.get(c, ctx);
    }
    Ok(acc)
}

/// sum_{m <= Y} e^(2 pi i m X) log m, term by term with exact rational
/// argument reduction.
pub fn exp_log_sum(x: &RationalX, y: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.bits();
    let m_max = floor_count(y);
    if m_max < 2 {
        return Ok(Complex::new(prec));
    }
    if m_max > 4_000_000 {
        return Err(Error::SumTooLarge(format!(
            "exp_log_sum over {m_max} terms exceeds the supported range"
        )));
    }
    let q = x
        .denom()
        .to_u64()
        .ok_or_else(|| Error::SumTooLarge("denominator of X too large".into()))?;
    // The shared log cache pays off only at the scales the expansions use.
    let lns = if m_max <= 10_000 {
        Some(crate::numkern::zeta::ln_table(prec, m_max as usize))
    } else {
        None
    };
    let ln_of = |m: u64| -> Float {
        match &lns {
            Some(t) => t[m as usize].clone(),
            None => Float::with_val(prec, m).ln(),
        }
    };
    if q == 1 {
        let mut acc = Float::new(prec);
        for m in 2..=m_max {
            acc += ln_of(m);
        }
        return Ok(Complex::with_val(prec, (acc, Float::new(prec))));
    }
    let p = x
        .numer()
        .clone()
        .modulo(&Integer::from(q))
        .to_u64()
        .expect("residue fits");
    let roots = UnityRoots::new(q, ctx);
    let mut acc = Complex::new(prec);
    let mut c = p % q; // residue for m = 1; log 1 = 0 so skip adding
    for m in 2..=m_max {
        c = (c + p) % q;
        acc += Complex::with_val(prec, &roots.get(c, ctx) * &ln_of(m));
    }
    Ok(acc)
}

/// Prime powers r <= y with their Lambda base p.
fn prime_powers_up_to(y: &Float) -> Result<Vec<(u64, u64)>> {
    let limit = floor_count(y);
    if limit < 2 {
        return Ok(Vec::new());
    }
    with_spf(limit as usize, |spf| {
        let mut out = Vec::new();
        for p in 2..=limit {
            if spf[p as usize] == p as u32 {
                let mut r = p;
                loop {
                    out.push((r, p));
                    match r.checked_mul(p) {
                        Some(next) if next <= limit => r = next,
                        _ => break,
                    }
                }
            }
        }
        out.sort_unstable();
        out
    })
}

/// sum_{m r <= Y} e^(2 pi i m r X) Lambda(r) log^n(r X): the inner m-sum is
/// a pure exponential sum at the rational rX and collapses by periodicity.
pub fn mangoldt_exp_sum(
    n: u32,
    x: &RationalX,
    y: &Float,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    mangoldt_weighted_sum(x, y, ctx, |r, p, c| {
        let lam = c.float(p).ln();
        let mut lrx = c.float(r).ln();
        lrx += x.ln(c);
        lam * int_pow(&lrx, n, c)
    })
}

/// sum_{m r <= Y} e^(2 pi i m r X) Lambda(r) log^k r  (the binomial pieces
/// of the Explicit2 form).
pub fn mangoldt_exp_sum_powers(
    k: u32,
    x: &RationalX,
    y: &Float,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    mangoldt_weighted_sum(x, y, ctx, |r, p, c| {
        let lam = c.float(p).ln();
        let lr = c.float(r).ln();
        lam * int_pow(&lr, k, c)
    })
}

fn mangoldt_weighted_sum(
    x: &RationalX,
    y: &Float,
    ctx: &PrecisionContext,
    weight: impl Fn(u64, u64, &PrecisionContext) -> Float,
) -> Result<Complex> {
    let prec = ctx.bits();
    let mut acc = Complex::new(prec);
    for (r, p) in prime_powers_up_to(y)? {
        let inner_y = Float::with_val(prec, y / r);
        let rx = RationalX::from_rational(
            Rational::from((Integer::from(r) * x.numer(), x.denom().clone())),
            x.exactness(),
        )?;
        let inner = exp_sum(&rx, &inner_y, ctx)?;
        let w = weight(r, p, ctx);
        acc += inner * &w;
    }
    if !crate::numkern::cx::is_finite(&acc) {
        return Err(Error::NonFinite("mangoldt exponential sum".into()));
    }
    Ok(acc)
}

/// sum_{m r <= Y} Lambda(r) log^k r (unsigned; callers apply the (-1)^(k+1)
/// sign of the S-sum).
pub fn s_direct(k: u32, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let mut acc = Float::new(prec);
    for (r, p) in prime_powers_up_to(y)? {
        let count = floor_count(&Float::with_val(prec, y / r));
        if count == 0 {
            continue;
        }
        let lam = ctx.float(p).ln();
        let lr = ctx.float(r).ln();
        let mut term = lam * int_pow(&lr, k, ctx);
        term *= Float::with_val(prec, count);
        acc += term;
    }
    Ok(acc)
}
