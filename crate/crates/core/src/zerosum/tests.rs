use super::*;
use crate::constants::laurent_table;
use crate::precision::PrecisionContext;
use crate::zeros::find_zeros;
use once_cell::sync::Lazy;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

static TABLE101: Lazy<ZeroTable> = Lazy::new(|| {
    let c = ctx();
    find_zeros(&c.float(101.5), &c).unwrap()
});

fn x_of(p: u64, q: u64) -> RationalX {
    RationalX::new(p, q).unwrap()
}

#[test]
fn empty_sum_below_first_ordinate() {
    let c = ctx();
    let v = lhs_zero_sum(2, &x_of(3, 1), &c.float(10), &TABLE101, &c).unwrap();
    assert!(v.abs().is_zero());
}

#[test]
fn n0_sum_vanishes() {
    // sum zeta(rho) X^rho is 0 to the ordinate-accuracy floor: certifies
    // the table and the derivative kernel jointly.
    let c = ctx();
    for (p, q) in [(1u64, 1u64), (2, 1), (7, 2)] {
        let v = lhs_zero_sum(0, &x_of(p, q), &c.float(100), &TABLE101, &c).unwrap();
        let bound = Float::with_val(
            c.bits(),
            &c.pow10(-25) * &x_of(p, q).to_float(&c).sqrt(),
        );
        assert!(v.abs() < bound, "X = {p}/{q}: |sum| = {:?}", v.abs().to_f64());
    }
}

#[test]
fn additivity_over_height_split() {
    let c = ctx();
    let prec = c.bits();
    let x = x_of(2, 1);
    let derivs = zeta_derivatives_at_zeros(&TABLE101, 1, &c).unwrap();
    let low = lhs_from_derivatives(&derivs, 1, &x, &c.float(50), &TABLE101, &c).unwrap();
    let full = lhs_from_derivatives(&derivs, 1, &x, &c.float(100), &TABLE101, &c).unwrap();
    // Slice (50, 100] summed separately.
    let lo_count = TABLE101.count_up_to(&c.float(50));
    let hi_count = TABLE101.count_up_to(&c.float(100));
    let sqrt_x = x.to_float(&c).sqrt();
    let ln_x = x.ln(&c);
    let mut slice = Complex::new(prec);
    for i in lo_count..hi_count {
        let g = &TABLE101.ordinates()[i];
        let xr = x_to_rho(&sqrt_x, &ln_x, g, prec);
        slice += Complex::with_val(prec, &derivs.per_zero[i][1] * &xr);
    }
    let mut recombined = Complex::with_val(prec, low.as_complex() + &slice);
    recombined -= full.as_complex();
    assert!(cx::cabs(&recombined) < c.pow10(-30));
}

#[test]
fn derivative_cache_matches_direct_path() {
    let c = ctx();
    let x = x_of(5, 2);
    let derivs = zeta_derivatives_at_zeros(&TABLE101, 2, &c).unwrap();
    let a = lhs_from_derivatives(&derivs, 2, &x, &c.float(80), &TABLE101, &c).unwrap();
    let b = lhs_zero_sum(2, &x, &c.float(80), &TABLE101, &c).unwrap();
    let d = cx::cabs(&Complex::with_val(c.bits(), a.as_complex() - b.as_complex()));
    assert!(d < c.pow10(-30), "paths differ by {d}");
}

#[test]
fn precision_stability_on_doubling() {
    let c30 = PrecisionContext::new(30).unwrap();
    let c60 = PrecisionContext::new(60).unwrap();
    let x = x_of(2, 1);
    let t30 = find_zeros(&c30.float(50), &c30).unwrap();
    let t60 = find_zeros(&c60.float(50), &c60).unwrap();
    let a = lhs_zero_sum(1, &x, &c30.float(50), &t30, &c30).unwrap();
    let b = lhs_zero_sum(1, &x, &c60.float(50), &t60, &c60).unwrap();
    let d = cx::cabs(&Complex::with_val(
        c60.bits(),
        &Complex::with_val(c60.bits(), a.as_complex()) - b.as_complex(),
    ));
    assert!(d < c30.pow10(-15), "doubling digits moved the sum by {d}");
}

#[test]
fn landau_sanity_at_100() {
    let c = ctx();
    let prec = c.bits();
    for p in [2u64, 3, 4, 5] {
        let x = x_of(p, 1);
        let t_eff = crate::zeros::safe_truncation_height(&c.float(100), &TABLE101, &c).unwrap();
        let lhs = landau_lhs(&x, &t_eff, &TABLE101, &c).unwrap();
        let rhs = crate::expansions::landau_rhs(&x, &t_eff, &c).unwrap();
        let d = cx::cabs(&Complex::with_val(prec, lhs.as_complex() - rhs.as_complex()));
        let bound = Float::with_val(prec, c.float(100).ln() * 10u32);
        assert!(d < bound, "X = {p}: |diff| = {} vs {}", d.to_f64(), bound.to_f64());
    }
}

#[test]
fn single_point_grid_report() {
    let c = ctx();
    let tables = laurent_table(3, &c).unwrap();
    let grid = [c.float(100)];
    let out = compare(
        1,
        &x_of(1, 1),
        &grid,
        FormulaId::GeneralSc,
        &TABLE101,
        &tables,
        &c,
        None,
    )
    .unwrap();
    assert_eq!(out.reports.len(), 1);
    let r = &out.reports[0];
    // residual = lhs - rhs exactly.
    let mut expect = Complex::with_val(c.bits(), r.lhs.as_complex() - r.rhs.as_complex());
    expect -= r.residual.as_complex();
    assert!(cx::cabs(&expect).is_zero());
    assert_eq!(r.meta.zero_count, 29);
    assert_eq!(out.summary.c_hat, r.normalized_residual);
}

#[test]
fn compare_validates_inputs() {
    let c = ctx();
    let tables = laurent_table(3, &c).unwrap();
    let grid = [c.float(50), c.float(100)];
    // general-sc needs X = 1.
    assert!(compare(
        1,
        &x_of(2, 1),
        &grid,
        FormulaId::GeneralSc,
        &TABLE101,
        &tables,
        &c,
        None
    )
    .is_err());
    // fujii4 needs n = 1.
    assert!(compare(
        2,
        &x_of(2, 1),
        &grid,
        FormulaId::Fujii4,
        &TABLE101,
        &tables,
        &c,
        None
    )
    .is_err());
    // landau needs X > 1.
    assert!(compare(
        1,
        &x_of(1, 1),
        &grid,
        FormulaId::Landau,
        &TABLE101,
        &tables,
        &c,
        None
    )
    .is_err());
    // descending grid rejected.
    let bad = [c.float(100), c.float(50)];
    assert!(compare(
        1,
        &x_of(1, 1),
        &bad,
        FormulaId::GeneralSc,
        &TABLE101,
        &tables,
        &c,
        None
    )
    .is_err());
}

#[test]
fn insufficient_table_is_reported() {
    let c = ctx();
    match lhs_zero_sum(1, &x_of(1, 1), &c.float(200), &TABLE101, &c) {
        Err(Error::InsufficientTable(_)) => {}
        other => panic!("expected InsufficientTable, got {other:?}"),
    }
}

#[test]
fn s_sum_comparison_path() {
    let c = ctx();
    let tables = laurent_table(3, &c).unwrap();
    let grid = [c.float(5_000), c.float(20_000)];
    let out = compare(
        1,
        &x_of(1, 1),
        &grid,
        FormulaId::SAsym,
        &TABLE101,
        &tables,
        &c,
        None,
    )
    .unwrap();
    assert_eq!(out.reports.len(), 2);
    for r in &out.reports {
        assert!(r.normalized_residual < 0.05f64);
        assert_eq!(r.meta.zero_count, 0);
    }
}

#[test]
fn csv_rendering_shape() {
    let c = ctx();
    let tables = laurent_table(3, &c).unwrap();
    let grid = [c.float(60), c.float(100)];
    let out = compare(
        1,
        &x_of(2, 1),
        &grid,
        FormulaId::Theorem1,
        &TABLE101,
        &tables,
        &c,
        None,
    )
    .unwrap();
    let csv = compare_csv(&out, c.digits());
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "T_effective,zero_count,lhs_re,lhs_im,rhs_re,rhs_im,resid_abs,resid_norm"
    );
    let data_rows = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("T_effective"))
        .count();
    assert_eq!(data_rows, 2);
    assert!(csv.contains("# c_hat = "));
    assert!(csv.contains("# resid_norm_trend = "));
}
