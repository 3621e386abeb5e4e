use super::*;
use crate::arith::{exp_log_sum, exp_sum};
use crate::constants::laurent_table;
use crate::numkern::cx;
use crate::precision::PrecisionContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

fn x_of(p: u64, q: u64) -> RationalX {
    RationalX::new(p, q).unwrap()
}

fn rel_close(a: &Complex, b: &Complex, tol_exp: i32, c: &PrecisionContext) -> bool {
    let prec = c.bits();
    let d = cx::cabs(&Complex::with_val(prec, a - b));
    let scale = cx::cabs(a) + 1u32;
    Float::with_val(prec, &d / &scale) < c.pow10(tol_exp)
}

/// The n = 1 baseline written exactly as its original display: a
/// transcription independent of `theorem1_rhs`, equal to it as finite sums
/// via the Chebyshev identity.
fn fujii3_oracle(x: &RationalX, t: &Float, c: &PrecisionContext) -> Complex {
    let prec = c.bits();
    let x_f = x.to_float(c);
    let t_over_2pi = Float::with_val(prec, t / &c.two_pi());
    let big_l = t_over_2pi.clone().ln();
    let ell = x.ln(c);
    let y = Float::with_val(prec, &t_over_2pi / &x_f);
    let delta = c.float(crate::arith::delta_indicator(x).unwrap());
    let quarter_pi = Float::with_val(prec, &c.pi() / 4u32);

    // -Delta (T/2pi) (log X (L/2 - 1/2 + pi i/4) - sum_{mr=X} Lambda log m)
    let mut bracket = Complex::with_val(
        prec,
        (
            Float::with_val(prec, &big_l / 2u32) - Float::with_val(prec, 0.5),
            quarter_pi.clone(),
        ),
    );
    bracket *= &ell;
    bracket -= Complex::with_val(
        prec,
        (
            &crate::arith::conv_sum_at_x(1, x, c).unwrap(),
            &Float::new(prec),
        ),
    );
    bracket *= &t_over_2pi;
    bracket *= &delta;
    let mut total = -bracket;

    // + X sum e(mX) log^2 m (term-by-term; no library routine for log^2 m)
    let m_max = y.to_f64().floor() as u64;
    let mut e2 = Complex::new(prec);
    for m in 2..=m_max {
        let frac = rug::Rational::from((x.numer().clone() * m, x.denom().clone()))
            .fract_floor(rug::Integer::new())
            .0;
        let theta = Float::with_val(prec, &c.two_pi() * &Float::with_val(prec, &frac));
        let (s, co) = theta.sin_cos(Float::new(prec));
        let lm = c.float(m).ln();
        let l2 = Float::with_val(prec, &lm * &lm);
        e2 += Complex::with_val(prec, (Float::with_val(prec, &co * &l2), Float::with_val(prec, &s * &l2)));
    }
    e2 *= &x_f;
    total += &e2;

    // + (X/2) log X sum e(mX) log m
    let mut e1 = exp_log_sum(x, &y, c).unwrap();
    e1 *= Float::with_val(prec, &x_f / 2u32);
    e1 *= &ell;
    total += &e1;

    // - (X log^2 X / 2 - (pi i/4) X log X) sum e(mX)
    let mut coeff_re = Float::with_val(prec, &ell * &ell);
    coeff_re *= &x_f;
    coeff_re /= 2u32;
    let mut coeff_im = Float::with_val(prec, &quarter_pi * &x_f);
    coeff_im *= &ell;
    coeff_im = -coeff_im;
    let coeff = Complex::with_val(prec, (coeff_re, coeff_im));
    let e0 = exp_sum(x, &y, c).unwrap();
    total -= Complex::with_val(prec, &coeff * &e0);

    // - X sum_{mr<=Y} e(mrX) Lambda(r) log m
    //   = - X sum_r Lambda(r) exp_log_sum(rX, Y/r)
    let mut mang = Complex::new(prec);
    let mut r = 2u64;
    while (r as f64) <= y.to_f64() {
        if let Some(p) = crate::arith::prime_power_base(r).unwrap() {
            let rx = RationalX::from_rational(
                rug::Rational::from((x.numer().clone() * r, x.denom().clone())),
                crate::arith::Exactness::Exact,
            )
            .unwrap();
            let inner_y = Float::with_val(prec, &y / r);
            let inner = exp_log_sum(&rx, &inner_y, c).unwrap();
            let lam = c.float(p).ln();
            mang += Complex::with_val(prec, &inner * &lam);
        }
        r += 1;
    }
    mang *= &x_f;
    total -= &mang;
    total
}

#[test]
fn theorem1_collapses_at_x1_t_2pi() {
    let c = ctx();
    let t = c.two_pi();
    let b = theorem1_rhs(1, &x_of(1, 1), &t, &c).unwrap();
    assert!(b.total.abs() < c.pow10(-38), "total = {:?}", b.total.abs());
}

#[test]
fn theorem1_n1_equals_fujii3_exactly() {
    // The two displays differ by sum_m e(mX) log m log(mX) versus
    // sum_{mr} e(mrX) Lambda(r) log(mrX), equal term-for-term by the
    // Chebyshev identity, so totals must agree to round-off.
    let c = ctx();
    for (p, q, t) in [(2u64, 1u64, 300.0), (5, 2, 300.0), (1, 3, 150.0), (1, 1, 100.0)] {
        let x = x_of(p, q);
        let t = c.float(t);
        let b = theorem1_rhs(1, &x, &t, &c).unwrap();
        let oracle = fujii3_oracle(&x, &t, &c);
        assert!(
            rel_close(b.total.as_complex(), &oracle, -38, &c),
            "X = {p}/{q}"
        );
    }
}

#[test]
fn theorem1_equals_explicit2() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let n = rng.gen_range(1..=4u32);
        let p = rng.gen_range(1..=20u64);
        let q = rng.gen_range(1..=4u64);
        let x = x_of(p, q);
        let lo = 7.0 * x.to_float(&c).to_f64();
        let t = c.float(rng.gen_range(lo.max(20.0)..2000.0));
        let a = theorem1_rhs(n, &x, &t, &c).unwrap();
        let b = explicit2_rhs(n, &x, &t, &c).unwrap();
        assert!(
            rel_close(a.total.as_complex(), b.total.as_complex(), -32, &c),
            "n={n} X={p}/{q} T={}",
            t.to_f64()
        );
        // Only the oscillatory Mangoldt piece differs between the routes.
        for label in ["delta_main", "delta_conv", "expsum_plain", "expsum_log"] {
            let av = a.term(label).unwrap();
            let bv = b.term(label).unwrap();
            assert!(rel_close(av.as_complex(), bv.as_complex(), -38, &c));
        }
    }
}

#[test]
fn corollary_matches_prebinomial_route() {
    let c = ctx();
    let tables = laurent_table(4, &c).unwrap();
    for (n, x, t) in [
        (1u32, 2u64, 100.0),
        (2, 3, 1000.0),
        (3, 5, 400.0),
        (2, 12, 250.0),
    ] {
        let x = x_of(x, 1);
        let t = c.float(t);
        let grouped = corollary_integer_rhs(n, &x, &t, &tables, &c, ErrorShape::RiemannHypothesis)
            .unwrap();
        let pre = corollary_integer_rhs_unexpanded(
            n,
            &x,
            &t,
            &tables,
            &c,
            ErrorShape::RiemannHypothesis,
        )
        .unwrap();
        assert!(
            rel_close(grouped.total.as_complex(), pre.total.as_complex(), -32, &c),
            "n={n} X={x} T={}",
            t.to_f64()
        );
    }
}

#[test]
fn corollary_n1_equals_fujii_integer() {
    let c = ctx();
    let tables = laurent_table(2, &c).unwrap();
    // X = 4 exercises the convolution term (4 = 2^2).
    for (x, t) in [(2u64, 1000.0), (4, 500.0), (6, 300.0)] {
        let x = x_of(x, 1);
        let t = c.float(t);
        let a = corollary_integer_rhs(1, &x, &t, &tables, &c, ErrorShape::RiemannHypothesis)
            .unwrap();
        let b = fujii_integer_rhs(&x, &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
        assert!(
            rel_close(a.total.as_complex(), b.total.as_complex(), -34, &c),
            "X = {x}"
        );
    }
}

#[test]
fn fujii_collapses() {
    let c = ctx();
    let tables = laurent_table(2, &c).unwrap();
    let t = c.float(750);
    let shanks = fujii_shanks_rhs(&t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
    let integer1 =
        fujii_integer_rhs(&x_of(1, 1), &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
    assert!(rel_close(
        shanks.total.as_complex(),
        integer1.total.as_complex(),
        -38,
        &c
    ));
    let general = general_sc_rhs(1, &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
    assert!(rel_close(
        shanks.total.as_complex(),
        general.total.as_complex(),
        -34,
        &c
    ));
}

#[test]
fn general_sc_coefficient_triple() {
    // Leading, sub-leading and constant coefficients at n = 1 are
    // (1/2, -1 + C_0, 1 - C_0 - C_0^2 + 3 C_1) in units of T/2pi.
    let c = ctx();
    let prec = c.bits();
    let tables = laurent_table(2, &c).unwrap();
    let c0 = &tables.c()[0];
    let c1 = &tables.c()[1];
    for t_val in [50.0, 120.0, 400.0, 900.0, 1700.0] {
        let t = c.float(t_val);
        let b = general_sc_rhs(1, &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
        let t_over_2pi = Float::with_val(prec, &t / &c.two_pi());
        let big_l = t_over_2pi.clone().ln();

        let lead = b.term("leading").unwrap().re();
        let mut unit = Float::with_val(prec, &t_over_2pi * &big_l);
        unit *= &big_l;
        let ratio = Float::with_val(prec, lead / &unit);
        let d = Float::with_val(prec, &ratio - &Float::with_val(prec, 0.5)).abs();
        assert!(d < c.pow10(-30), "leading ratio off by {d}");

        let sub = b.term("laurent_sum").unwrap().re();
        // laurent_sum = (-1+C_0)(T/2pi) L + (1 - C_0 + C_1)(T/2pi)
        let mut expect = Float::with_val(prec, c0 - &c.float(1));
        expect *= &t_over_2pi;
        expect *= &big_l;
        let mut const_part = Float::with_val(prec, 1u32);
        const_part -= c0;
        const_part += c1;
        const_part *= &t_over_2pi;
        expect += const_part;
        let d = Float::with_val(prec, sub - &expect).abs();
        assert!(d < c.pow10(-28), "laurent term off by {d}");

        // Total constant block: compare the full total against the frozen
        // triple assembled directly from C_0, C_1.
        let mut triple = Float::with_val(prec, &big_l * &big_l) / 2u32;
        let mut mid = Float::with_val(prec, c0 - &c.float(1));
        mid *= &big_l;
        triple += mid;
        let mut tail = Float::with_val(prec, 1u32);
        tail -= c0;
        tail -= Float::with_val(prec, c0 * c0);
        tail += Float::with_val(prec, c1 * 3u32);
        triple += tail;
        triple *= &t_over_2pi;
        let d = Float::with_val(prec, b.total.re() - &triple).abs();
        let scale = triple.clone().abs() + 1u32;
        assert!(
            Float::with_val(prec, &d / &scale) < c.pow10(-32),
            "total vs triple: {d}"
        );
    }
}

#[test]
fn general_sc_at_t_2pi() {
    // L = 0 kills the leading term; the total is the constant triple.
    let c = ctx();
    let prec = c.bits();
    let tables = laurent_table(2, &c).unwrap();
    let t = c.two_pi();
    let b = general_sc_rhs(1, &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
    assert!(b.term("leading").unwrap().abs() < c.pow10(-38));
    let c0 = &tables.c()[0];
    let c1 = &tables.c()[1];
    let mut expect = Float::with_val(prec, 1u32);
    expect -= c0;
    expect -= Float::with_val(prec, c0 * c0);
    expect += Float::with_val(prec, c1 * 3u32);
    let d = Float::with_val(prec, b.total.re() - &expect).abs();
    assert!(d < c.pow10(-35), "constant block off by {d}");
}

#[test]
fn corollary_routes_x1_to_general_sc() {
    let c = ctx();
    let tables = laurent_table(3, &c).unwrap();
    let t = c.float(500);
    let a = corollary_integer_rhs(2, &x_of(1, 1), &t, &tables, &c, ErrorShape::RiemannHypothesis)
        .unwrap();
    let b = general_sc_rhs(2, &t, &tables, &c, ErrorShape::RiemannHypothesis).unwrap();
    assert_eq!(a.meta.formula, "general-sc");
    assert_eq!(a.total.as_complex(), b.total.as_complex());
}

#[test]
fn s_asymptotic_tracks_s_direct() {
    let c = ctx();
    let prec = c.bits();
    let tables = laurent_table(3, &c).unwrap();
    for k in 0..=2u32 {
        let y = c.float(10_000);
        let asym = s_asymptotic(k, &y, &tables, &c).unwrap();
        let direct = crate::arith::s_direct(k, &y, &c).unwrap();
        let mut signed = direct.clone();
        if k % 2 == 0 {
            signed = -signed;
        }
        let d = Float::with_val(prec, asym.total.re() - &signed).abs();
        let rel = Float::with_val(prec, &d / &direct.clone().abs());
        assert!(rel < 0.05f64, "k = {k}: rel = {rel}");
    }
}

#[test]
fn landau_values() {
    let c = ctx();
    let prec = c.bits();
    // X = 2, T = 2 pi: -(T/2pi) Lambda(2) = -log 2.
    let t = c.two_pi();
    let v = landau_rhs(&x_of(2, 1), &t, &c).unwrap();
    let expect = -c.float(2).ln();
    let d = Float::with_val(prec, v.re() - &expect).abs();
    assert!(d < c.pow10(-40));
    // Lambda vanishes off prime powers and off the integers.
    assert!(landau_rhs(&x_of(6, 1), &c.float(333), &c).unwrap().abs() < c.pow10(-45));
    assert!(landau_rhs(&x_of(3, 2), &c.float(333), &c).unwrap().abs() < c.pow10(-45));
    // Precondition X > 1.
    assert!(landau_rhs(&x_of(1, 2), &c.float(333), &c).is_err());
}

#[test]
fn breakdown_totals_and_delta_imaginary_part() {
    let c = ctx();
    let prec = c.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3u32);
        let p = rng.gen_range(1..=8u64);
        let q = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=3u64) };
        let x = x_of(p, q);
        let t = c.float(rng.gen_range(60.0..800.0));
        if t < Float::with_val(prec, &c.two_pi() * &x.to_float(&c)) {
            continue;
        }
        let b = theorem1_rhs(n, &x, &t, &c).unwrap();
        // total = sum of terms to round-off.
        let mut sum = Complex::new(prec);
        for (_, v) in &b.terms {
            sum += v.as_complex();
        }
        assert!(rel_close(&sum, b.total.as_complex(), -45, &c));
        // Im(delta_main) = (-1)^n Delta(X) (T/2pi) log^n X * pi/4, as
        // transcribed.
        let delta = crate::arith::delta_indicator(&x).unwrap();
        let ell = x.ln(&c);
        let mut expect = Float::with_val(prec, &t / &c.two_pi());
        expect *= int_pow(&ell, n, &c);
        expect *= Float::with_val(prec, &c.pi() / 4u32);
        expect *= delta;
        if n % 2 == 1 {
            expect = -expect;
        }
        let d = Float::with_val(prec, b.term("delta_main").unwrap().im() - &expect).abs();
        assert!(d < c.pow10(-38), "delta_main imaginary part off by {d}");
    }
}

#[test]
fn preconditions_enforced() {
    let c = ctx();
    let tables = laurent_table(2, &c).unwrap();
    // n = 0 is out of contract for the expansions.
    assert!(theorem1_rhs(0, &x_of(2, 1), &c.float(100), &c).is_err());
    assert!(general_sc_rhs(0, &c.float(100), &tables, &c, ErrorShape::RiemannHypothesis).is_err());
    // T below 2 pi X.
    assert!(theorem1_rhs(1, &x_of(100, 1), &c.float(100), &c).is_err());
    // Non-integer X for the integer corollary.
    assert!(matches!(
        corollary_integer_rhs(1, &x_of(5, 2), &c.float(100), &tables, &c, ErrorShape::RiemannHypothesis),
        Err(Error::XNotInteger)
    ));
    // Laurent table too shallow.
    assert!(matches!(
        general_sc_rhs(tables.j_max() + 1, &c.float(100), &tables, &c, ErrorShape::RiemannHypothesis),
        Err(Error::TablesTooShallow(_))
    ));
}

#[test]
fn error_shapes() {
    let c = ctx();
    let t = c.float(1000);
    let rh = ErrorShape::RiemannHypothesis.scale(1, &t, &c);
    // sqrt(1000) log^3 1000
    let prec = c.bits();
    let ln_t = c.float(1000).ln();
    let mut expect = c.float(1000).sqrt();
    expect *= int_pow(&ln_t, 3, &c);
    assert!(Float::with_val(prec, &rh - &expect).abs() < c.pow10(-30));
    let un = ErrorShape::Unconditional.scale(1, &t, &c);
    assert!(un > 0u32);
    assert_eq!(ErrorShape::Unconditional.label(), "unconditional-shape-only");
}

#[test]
fn formula_id_round_trip() {
    for name in [
        "theorem1",
        "explicit2",
        "integer",
        "general-sc",
        "fujii2",
        "fujii4",
        "landau",
        "s-asym",
    ] {
        let id: FormulaId = name.parse().unwrap();
        assert_eq!(id.as_str(), name);
    }
    assert!("nope".parse::<FormulaId>().is_err());
}
