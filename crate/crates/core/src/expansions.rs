//! Right-hand-side expansions: the general explicit formula for
//! sum zeta^(n)(rho) X^rho, its binomial rewrite, the integer-X special
//! case with Laurent-coefficient main terms, the X = 1 theorem, the S-sum
//! asymptotic, and the two classical n = 1 baselines.
//!
//! Every formula is evaluated term by term into an `ExpansionBreakdown`
//! whose labelled parts sum to the total, with the error envelope evaluated
//! numerically (without its implied constant) alongside.

use crate::arith::{
    self, conv_sum_at_x, delta_indicator, exp_log_sum, exp_sum, int_pow, mangoldt_exp_sum,
    mangoldt_exp_sum_powers, RationalX,
};
use crate::constants::LaurentTable;
use crate::error::{Error, Result};
use crate::numkern::binomial_u64;
use crate::precision::{format_float, CValue, PrecisionContext};
use rug::{Complex, Float};

/// Shape of the error envelope reported next to a breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorShape {
    /// T * exp(-C sqrt(log T)) with C = 1; shape only, the paper's constant
    /// is unspecified.
    Unconditional,
    /// sqrt(T) * log^(n+2) T (the RH-conditional envelope).
    #[default]
    RiemannHypothesis,
}

impl ErrorShape {
    pub fn label(&self) -> &'static str {
        match self {
            ErrorShape::Unconditional => "unconditional-shape-only",
            ErrorShape::RiemannHypothesis => "rh",
        }
    }

    /// Envelope for derivative order n at height t.
    pub fn scale(&self, n: u32, t: &Float, ctx: &PrecisionContext) -> Float {
        let prec = ctx.bits();
        let ln_t = Float::with_val(prec, t.ln_ref());
        match self {
            ErrorShape::RiemannHypothesis => {
                let mut v = Float::with_val(prec, t.sqrt_ref());
                v *= int_pow(&ln_t, n + 2, ctx);
                v
            }
            ErrorShape::Unconditional => {
                let mut e = Float::with_val(prec, ln_t.sqrt_ref());
                e = -e;
                e.exp_mut();
                Float::with_val(prec, t * &e)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BreakdownMeta {
    pub formula: String,
    pub n: u32,
    pub x: String,
    pub t: String,
    pub digits: u32,
    pub error_shape: String,
}

/// Per-term decomposition of one right-hand side: every displayed summand
/// valued separately, their sum, and the error envelope.
#[derive(Debug, Clone)]
pub struct ExpansionBreakdown {
    pub terms: Vec<(String, CValue)>,
    pub total: CValue,
    pub error_scale: Float,
    pub meta: BreakdownMeta,
}

impl ExpansionBreakdown {
    fn build(
        terms: Vec<(&'static str, Complex)>,
        error_scale: Float,
        meta: BreakdownMeta,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let prec = ctx.bits();
        let mut total = Complex::new(prec);
        for (_, v) in &terms {
            total += v;
        }
        if !error_scale.is_finite() || error_scale <= 0u32 {
            return Err(Error::NonFinite(format!(
                "error scale for {}",
                meta.formula
            )));
        }
        Ok(ExpansionBreakdown {
            terms: terms
                .into_iter()
                .map(|(k, v)| CValue::checked(v, k).map(|cv| (k.to_string(), cv)))
                .collect::<Result<Vec<_>>>()?,
            total: CValue::checked(total, "breakdown total")?,
            error_scale,
            meta,
        })
    }

    pub fn term(&self, label: &str) -> Option<&CValue> {
        self.terms.iter().find(|(k, _)| k == label).map(|(_, v)| v)
    }
}

fn meta(
    formula: &str,
    n: u32,
    x: &str,
    t: &Float,
    shape: ErrorShape,
    ctx: &PrecisionContext,
) -> BreakdownMeta {
    BreakdownMeta {
        formula: formula.to_string(),
        n,
        x: x.to_string(),
        t: format_float(t, ctx.digits()),
        digits: ctx.digits(),
        error_shape: shape.label().to_string(),
    }
}

fn sign(parity: u32, ctx: &PrecisionContext) -> Float {
    if parity % 2 == 0 {
        ctx.float(1)
    } else {
        ctx.float(-1)
    }
}

fn factorial(k: u32, ctx: &PrecisionContext) -> Float {
    let mut f = ctx.float(1);
    for i in 2..=k.max(1) {
        f *= i;
    }
    f
}

fn binom_f(n: u32, k: u32, ctx: &PrecisionContext) -> Float {
    ctx.float(binomial_u64(n, k))
}

/// -1 + sum_{j<=l} (-1)^j C_j, the Laurent combination in the main terms.
fn laurent_d(l: u32, tables: &LaurentTable, ctx: &PrecisionContext) -> Float {
    let mut d = ctx.float(-1);
    for j in 0..=l as usize {
        if j % 2 == 0 {
            d += &tables.c()[j];
        } else {
            d -= &tables.c()[j];
        }
    }
    d
}

fn require_rhs_order(n: u32) -> Result<()> {
    if n == 0 {
        // The right-hand sides are stated for n >= 1; at n = 0 the zero sum
        // vanishes identically and the expansions are out of contract.
        return Err(Error::InvalidInput(
            "expansion formulas require n >= 1 (the n = 0 zero sum vanishes)".into(),
        ));
    }
    Ok(())
}

/// The general explicit formula for a fixed positive real X:
///
///   (-1)^n { Delta(X) T/2pi (log^n X (log(T/2pi)/2 - 1/2 + pi i/4)
///                            - sum_{mr=X} Lambda(r) log^n m)
///          + X log^n X (log X/2 - pi i/4) sum_{m<=Y} e(mX)
///          + X/2 log^n X sum_{m<=Y} e(mX) log m
///          - X sum_{mr<=Y} e(mrX) Lambda(r) log^n(rX) }
///
/// with Y = T/(2 pi X) and envelope sqrt(T) log^(n+2) T.
pub fn theorem1_rhs(
    n: u32,
    x: &RationalX,
    t: &Float,
    ctx: &PrecisionContext,
) -> Result<ExpansionBreakdown> {
    rhs_real_x(n, x, t, ctx, false)
}

/// The binomial rewrite of `theorem1_rhs`: identical totals, with the
/// oscillatory Mangoldt sum decomposed through log^k r pieces so that no
/// exponential sum carries powers of log X.
pub fn explicit2_rhs(
    n: u32,
    x: &RationalX,
    t: &Float,
    ctx: &PrecisionContext,
) -> Result<ExpansionBreakdown> {
    rhs_real_x(n, x, t, ctx, true)
}

fn rhs_real_x(
    n: u32,
    x: &RationalX,
    t: &Float,
    ctx: &PrecisionContext,
    binomial_split: bool,
) -> Result<ExpansionBreakdown> {
    require_rhs_order(n)?;
    let prec = ctx.bits();
    let x_f = x.to_float(ctx);
    let two_pi_x = Float::with_val(prec, &ctx.two_pi() * &x_f);
    if *t < two_pi_x {
        return Err(Error::InvalidInput(format!(
            "theorem requires T >= 2 pi X = {:.6}",
            two_pi_x.to_f64()
        )));
    }
    let delta = delta_indicator(x)?;
    let delta_f = ctx.float(delta);
    let a = sign(n, ctx);
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let ell = x.ln(ctx);
    let ell_n = int_pow(&ell, n, ctx);
    let y = Float::with_val(prec, t / &two_pi_x);

    // Delta-gated main term: computed in full, then gated, so the breakdown
    // stays inspectable for non-integer X.
    let quarter_pi = Float::with_val(prec, &ctx.pi() / 4u32);
    let mut bracket = Complex::with_val(
        prec,
        (
            Float::with_val(prec, &big_l / 2u32) - Float::with_val(prec, 0.5),
            quarter_pi.clone(),
        ),
    );
    bracket *= &ell_n;
    let mut delta_main = Complex::with_val(prec, (&t_over_2pi, &Float::new(prec)));
    delta_main *= &bracket;
    delta_main *= &a;
    delta_main *= &delta_f;

    let conv = conv_sum_at_x(n, x, ctx)?;
    let mut delta_conv = Complex::with_val(prec, (&conv, &Float::new(prec)));
    delta_conv *= &t_over_2pi;
    delta_conv *= &a;
    delta_conv *= &delta_f;
    delta_conv = -delta_conv;

    let e0 = exp_sum(x, &y, ctx)?;
    let mut coeff = Complex::with_val(
        prec,
        (Float::with_val(prec, &ell / 2u32), -quarter_pi.clone()),
    );
    coeff *= &ell_n;
    coeff *= &x_f;
    let mut expsum_plain = Complex::with_val(prec, &e0 * &coeff);
    expsum_plain *= &a;

    let e1 = exp_log_sum(x, &y, ctx)?;
    let mut expsum_log = Complex::with_val(prec, &e1 * &ell_n);
    expsum_log *= Float::with_val(prec, &x_f / 2u32);
    expsum_log *= &a;

    let mangoldt_osc = if binomial_split {
        let mut acc = Complex::new(prec);
        for k in 0..=n {
            let piece = mangoldt_exp_sum_powers(k, x, &y, ctx)?;
            let mut w = Float::with_val(prec, &binom_f(n, k, ctx) * &int_pow(&ell, n - k, ctx));
            w *= &x_f;
            acc += Complex::with_val(prec, &piece * &w);
        }
        acc *= &a;
        -acc
    } else {
        let mut m = mangoldt_exp_sum(n, x, &y, ctx)?;
        m *= &x_f;
        m *= &a;
        -m
    };

    let shape = ErrorShape::RiemannHypothesis;
    let error_scale = shape.scale(n, t, ctx);
    let formula = if binomial_split { "explicit2" } else { "theorem1" };
    ExpansionBreakdown::build(
        vec![
            ("delta_main", delta_main),
            ("delta_conv", delta_conv),
            ("expsum_plain", expsum_plain),
            ("expsum_log", expsum_log),
            ("mangoldt_osc", mangoldt_osc),
        ],
        error_scale,
        meta(formula, n, &x.to_string(), t, shape, ctx),
        ctx,
    )
}

/// Integer-X main-term expansion. The grouped displays fold log^n X into
/// each sum (exponent n - k + u >= 0 throughout), the boundary piece keeps
/// the convolution sum outside the log^n X prefactor, and the inner
/// binomial carries (-1)^u; this grouping is pinned by agreement with the
/// pre-binomial route and the n = 1 baseline.
pub fn corollary_integer_rhs(
    n: u32,
    x: &RationalX,
    t: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    shape: ErrorShape,
) -> Result<ExpansionBreakdown> {
    require_rhs_order(n)?;
    let xi = x.as_integer().ok_or(Error::XNotInteger)?;
    if xi == 0 {
        return Err(Error::XNotInteger);
    }
    if xi == 1 {
        // The displayed regrouping is 0*inf-indeterminate at X = 1; the
        // X = 1 sum is the subject of the dedicated theorem below.
        return general_sc_rhs(n, t, tables, ctx, shape);
    }
    tables.require(n)?;
    let prec = ctx.bits();
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let ell = x.ln(ctx);
    let pref = Float::with_val(prec, &sign(n + 1, ctx) * &t_over_2pi);

    // G1: sum_{k,u} C(n,k) C(k+1,u) (-1)^u/(k+1) L^(k+1-u) ell^(n-k+u)
    let mut g1 = Float::new(prec);
    for k in 0..=n {
        for u in 0..=k + 1 {
            let mut term = Float::with_val(prec, &binom_f(n, k, ctx) * &binom_f(k + 1, u, ctx));
            term *= sign(u, ctx);
            term /= k + 1;
            term *= int_pow(&big_l, k + 1 - u, ctx);
            term *= int_pow(&ell, n - k + u, ctx);
            g1 += term;
        }
    }

    // G2: sum_{k,l,u} C(n,k) C(k,l) C(k-l,u) (-1)^(l+u) l! D_l
    //                 L^(k-l-u) ell^(n-k+u)
    let mut g2 = Float::new(prec);
    for k in 0..=n {
        for l in 0..=k {
            let d_l = laurent_d(l, tables, ctx);
            for u in 0..=k - l {
                let mut term = Float::with_val(prec, &binom_f(n, k, ctx) * &binom_f(k, l, ctx));
                term *= binom_f(k - l, u, ctx);
                term *= sign(l + u, ctx);
                term *= factorial(l, ctx);
                term *= &d_l;
                term *= int_pow(&big_l, k - l - u, ctx);
                term *= int_pow(&ell, n - k + u, ctx);
                g2 += term;
            }
        }
    }

    // G3: sum_k C(n,k) (-1)^(k+1) k! A_k ell^(n-k)
    let mut g3 = Float::new(prec);
    for k in 0..=n {
        let mut term = Float::with_val(prec, &binom_f(n, k, ctx) * &factorial(k, ctx));
        term *= sign(k + 1, ctx);
        term *= &tables.a()[k as usize];
        term *= int_pow(&ell, n - k, ctx);
        g3 += term;
    }

    // Boundary: -(ell^n (L - 1) - V_n).
    let v_n = conv_sum_at_x(n, x, ctx)?;
    let mut boundary = Float::with_val(prec, &big_l - &Float::with_val(prec, 1));
    boundary *= int_pow(&ell, n, ctx);
    boundary -= &v_n;
    boundary = -boundary;

    let real_term =
        |v: Float| -> Complex { Complex::with_val(prec, (Float::with_val(prec, &v * &pref), Float::new(prec))) };

    let error_scale = shape.scale(n, t, ctx);
    ExpansionBreakdown::build(
        vec![
            ("double_sum", real_term(g1)),
            ("triple_sum", real_term(g2)),
            ("a_series", real_term(g3)),
            ("boundary", real_term(boundary)),
        ],
        error_scale,
        meta("integer", n, &x.to_string(), t, shape, ctx),
        ctx,
    )
}

/// The pre-binomial intermediate route: Explicit2 with the integer-X
/// collapses of its exponential sums substituted directly, before any
/// regrouping in powers of log(T/2pi) and log X. Testing ground for every
/// binomial step of the grouped form.
pub fn corollary_integer_rhs_unexpanded(
    n: u32,
    x: &RationalX,
    t: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    shape: ErrorShape,
) -> Result<ExpansionBreakdown> {
    require_rhs_order(n)?;
    let xi = x.as_integer().ok_or(Error::XNotInteger)?;
    if xi < 2 {
        return Err(Error::InvalidInput(
            "pre-binomial route needs X >= 2; X = 1 is the dedicated theorem".into(),
        ));
    }
    tables.require(n)?;
    let prec = ctx.bits();
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let ell = x.ln(ctx);
    let log_y = Float::with_val(prec, &big_l - &ell); // log(T/(2 pi X))

    // (-1)^n (T/2pi) (ell^n (L - 1) - V_n)
    let v_n = conv_sum_at_x(n, x, ctx)?;
    let mut boundary = Float::with_val(prec, &big_l - &Float::with_val(prec, 1));
    boundary *= int_pow(&ell, n, ctx);
    boundary -= &v_n;
    boundary *= &t_over_2pi;
    boundary *= sign(n, ctx);

    // (-1)^(n+1) (T/2pi) sum_k C(n,k) ell^(n-k) [ (L-ell)^(k+1)/(k+1)
    //     + sum_l C(k,l) (-1)^l l! D_l (L-ell)^(k-l) + (-1)^(k+1) k! A_k ]
    let mut substituted = Float::new(prec);
    for k in 0..=n {
        let mut inner = int_pow(&log_y, k + 1, ctx);
        inner /= k + 1;
        for l in 0..=k {
            let mut term = Float::with_val(prec, &binom_f(k, l, ctx) * &factorial(l, ctx));
            term *= sign(l, ctx);
            term *= laurent_d(l, tables, ctx);
            term *= int_pow(&log_y, k - l, ctx);
            inner += term;
        }
        let mut a_term = Float::with_val(prec, &factorial(k, ctx) * &tables.a()[k as usize]);
        a_term *= sign(k + 1, ctx);
        inner += a_term;

        let mut w = Float::with_val(prec, &binom_f(n, k, ctx) * &int_pow(&ell, n - k, ctx));
        w *= inner;
        substituted += w;
    }
    substituted *= &t_over_2pi;
    substituted *= sign(n + 1, ctx);

    let as_c = |v: Float| Complex::with_val(prec, (v, Float::new(prec)));
    let error_scale = shape.scale(n, t, ctx);
    ExpansionBreakdown::build(
        vec![
            ("boundary", as_c(boundary)),
            ("s_substitution", as_c(substituted)),
        ],
        error_scale,
        meta("integer-unexpanded", n, &x.to_string(), t, shape, ctx),
        ctx,
    )
}

/// The X = 1 expansion:
///
///   (-1)^(n+1)/(n+1) (T/2pi) log^(n+1)(T/2pi)
///   + (-1)^(n+1) sum_k C(n,k) (-1)^k k! (-1 + sum_{j<=k} (-1)^j C_j)
///       (T/2pi) log^(n-k)(T/2pi)
///   + n! A_n (T/2pi)
pub fn general_sc_rhs(
    n: u32,
    t: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    shape: ErrorShape,
) -> Result<ExpansionBreakdown> {
    require_rhs_order(n)?;
    tables.require(n)?;
    let prec = ctx.bits();
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();

    let mut leading = int_pow(&big_l, n + 1, ctx);
    leading /= n + 1;
    leading *= &t_over_2pi;
    leading *= sign(n + 1, ctx);

    let mut laurent_sum = Float::new(prec);
    for k in 0..=n {
        let mut term = Float::with_val(prec, &binom_f(n, k, ctx) * &factorial(k, ctx));
        term *= sign(k, ctx);
        term *= laurent_d(k, tables, ctx);
        term *= int_pow(&big_l, n - k, ctx);
        laurent_sum += term;
    }
    laurent_sum *= &t_over_2pi;
    laurent_sum *= sign(n + 1, ctx);

    let mut a_term = Float::with_val(prec, &factorial(n, ctx) * &tables.a()[n as usize]);
    a_term *= &t_over_2pi;

    let as_c = |v: Float| Complex::with_val(prec, (v, Float::new(prec)));
    let error_scale = shape.scale(n, t, ctx);
    ExpansionBreakdown::build(
        vec![
            ("leading", as_c(leading)),
            ("laurent_sum", as_c(laurent_sum)),
            ("a_term", as_c(a_term)),
        ],
        error_scale,
        meta("general-sc", n, "1", t, shape, ctx),
        ctx,
    )
}

/// Expansion of S = (-1)^(k+1) sum_{mr<=Y} Lambda(r) log^k r:
///
///   (-1)^(k+1)/(k+1) Y log^(k+1) Y
///   + (-1)^(k+1) sum_l C(k,l) (-1)^l l! D_l Y log^(k-l) Y + k! A_k Y
pub fn s_asymptotic(
    k: u32,
    y: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
) -> Result<ExpansionBreakdown> {
    if *y < 2.0f64 {
        return Err(Error::InvalidInput("S-sum expansion needs Y >= 2".into()));
    }
    tables.require(k)?;
    let prec = ctx.bits();
    let ln_y = Float::with_val(prec, y.ln_ref());

    let mut leading = int_pow(&ln_y, k + 1, ctx);
    leading /= k + 1;
    leading *= y;
    leading *= sign(k + 1, ctx);

    let mut laurent_sum = Float::new(prec);
    for l in 0..=k {
        let mut term = Float::with_val(prec, &binom_f(k, l, ctx) * &factorial(l, ctx));
        term *= sign(l, ctx);
        term *= laurent_d(l, tables, ctx);
        term *= int_pow(&ln_y, k - l, ctx);
        laurent_sum += term;
    }
    laurent_sum *= y;
    laurent_sum *= sign(k + 1, ctx);

    let mut a_term = Float::with_val(prec, &factorial(k, ctx) * &tables.a()[k as usize]);
    a_term *= y;

    let as_c = |v: Float| Complex::with_val(prec, (v, Float::new(prec)));
    let error_scale = ErrorShape::RiemannHypothesis.scale(k, y, ctx);
    ExpansionBreakdown::build(
        vec![
            ("leading", as_c(leading)),
            ("laurent_sum", as_c(laurent_sum)),
            ("a_term", as_c(a_term)),
        ],
        error_scale,
        meta("s-asym", k, "-", y, ErrorShape::RiemannHypothesis, ctx),
        ctx,
    )
}

/// n = 1, X = 1 baseline:
/// T/4pi log^2(T/2pi) + (-1+C_0) T/2pi log(T/2pi) + (1-C_0-C_0^2+3C_1) T/2pi.
pub fn fujii_shanks_rhs(
    t: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    shape: ErrorShape,
) -> Result<ExpansionBreakdown> {
    tables.require(1)?;
    let prec = ctx.bits();
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let c0 = &tables.c()[0];
    let c1 = &tables.c()[1];

    let mut main = Float::with_val(prec, &big_l * &big_l);
    main *= &t_over_2pi;
    main /= 2u32;

    let mut sub = Float::with_val(prec, c0 - &Float::with_val(prec, 1));
    sub *= &t_over_2pi;
    sub *= &big_l;

    let mut constant = Float::with_val(prec, 1);
    constant -= c0;
    constant -= Float::with_val(prec, c0 * c0);
    constant += Float::with_val(prec, c1 * 3u32);
    constant *= &t_over_2pi;

    let as_c = |v: Float| Complex::with_val(prec, (v, Float::new(prec)));
    let error_scale = shape.scale(1, t, ctx);
    ExpansionBreakdown::build(
        vec![
            ("main", as_c(main)),
            ("sub", as_c(sub)),
            ("constant", as_c(constant)),
        ],
        error_scale,
        meta("fujii2", 1, "1", t, shape, ctx),
        ctx,
    )
}

/// n = 1 integer-X baseline:
/// T/4pi log^2(T/2pi) + (-1+C_0-log X) T/2pi log(T/2pi)
/// + T/2pi (1-C_0-C_0^2+3C_1 + sum_{X=mn} Lambda(n) log m
///          - (C_0 - 1 + log X/2) log X).
pub fn fujii_integer_rhs(
    x: &RationalX,
    t: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    shape: ErrorShape,
) -> Result<ExpansionBreakdown> {
    let _ = x.as_integer().ok_or(Error::XNotInteger)?;
    tables.require(1)?;
    let prec = ctx.bits();
    let t_over_2pi = Float::with_val(prec, t / &ctx.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let ell = x.ln(ctx);
    let c0 = &tables.c()[0];
    let c1 = &tables.c()[1];

    let mut main = Float::with_val(prec, &big_l * &big_l);
    main *= &t_over_2pi;
    main /= 2u32;

    let mut sub = Float::with_val(prec, c0 - &Float::with_val(prec, 1));
    sub -= &ell;
    sub *= &t_over_2pi;
    sub *= &big_l;

    let v1 = conv_sum_at_x(1, x, ctx)?;
    let mut constant = Float::with_val(prec, 1);
    constant -= c0;
    constant -= Float::with_val(prec, c0 * c0);
    constant += Float::with_val(prec, c1 * 3u32);
    constant += &v1;
    let mut ell_part = Float::with_val(prec, c0 - &Float::with_val(prec, 1));
    ell_part += Float::with_val(prec, &ell / 2u32);
    ell_part *= &ell;
    constant -= ell_part;
    constant *= &t_over_2pi;

    let as_c = |v: Float| Complex::with_val(prec, (v, Float::new(prec)));
    let error_scale = shape.scale(1, t, ctx);
    ExpansionBreakdown::build(
        vec![
            ("main", as_c(main)),
            ("sub", as_c(sub)),
            ("constant", as_c(constant)),
        ],
        error_scale,
        meta("fujii4", 1, &x.to_string(), t, shape, ctx),
        ctx,
    )
}

/// Landau's main term: -(T/2pi) Lambda(X), zero off the prime powers.
pub fn landau_rhs(x: &RationalX, t: &Float, ctx: &PrecisionContext) -> Result<CValue> {
    if *x.rational() <= 1u32 {
        return Err(Error::InvalidInput("Landau's formula needs X > 1".into()));
    }
    let prec = ctx.bits();
    let lam = arith::von_mangoldt_rational(x, ctx)?;
    let mut v = Float::with_val(prec, t / &ctx.two_pi());
    v *= &lam;
    v = -v;
    CValue::checked(Complex::with_val(prec, (v, Float::new(prec))), "landau_rhs")
}

/// Formula selector shared by the CLI and the comparison driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    Theorem1,
    Explicit2,
    Integer,
    GeneralSc,
    Fujii2,
    Fujii4,
    Landau,
    SAsym,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::Theorem1 => "theorem1",
            FormulaId::Explicit2 => "explicit2",
            FormulaId::Integer => "integer",
            FormulaId::GeneralSc => "general-sc",
            FormulaId::Fujii2 => "fujii2",
            FormulaId::Fujii4 => "fujii4",
            FormulaId::Landau => "landau",
            FormulaId::SAsym => "s-asym",
        }
    }
}

impl std::str::FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem1" => FormulaId::Theorem1,
            "explicit2" => FormulaId::Explicit2,
            "integer" => FormulaId::Integer,
            "general-sc" => FormulaId::GeneralSc,
            "fujii2" => FormulaId::Fujii2,
            "fujii4" => FormulaId::Fujii4,
            "landau" => FormulaId::Landau,
            "s-asym" => FormulaId::SAsym,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown formula {other:?}; expected one of theorem1, explicit2, \
                     integer, general-sc, fujii2, fujii4, landau, s-asym"
                )))
            }
        })
    }
}

#[cfg(test)]
mod tests;
