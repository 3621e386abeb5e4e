//! Direct evaluation of the left-hand sides over nontrivial zeros and the
//! residual comparison against the explicit expansions.
//!
//! The summation runs on the critical line (beta = 1/2 for every tabled
//! ordinate; exact at desk-scale heights and matching the RH-conditional
//! error discussion). Zero lists are partitioned into fixed contiguous
//! blocks processed concurrently and reduced in ascending order, so results
//! are deterministic regardless of thread count.

use crate::arith::{self, RationalX};
use crate::constants::LaurentTable;
use crate::error::{Error, Result};
use crate::expansions::{self, ErrorShape, FormulaId};
use crate::numkern::{self, cx};
use crate::precision::{format_float, CValue, PrecisionContext};
use crate::zeros::{safe_truncation_height, ZeroTable};
use rayon::prelude::*;
use rug::{Complex, Float};

const BLOCK: usize = 8;

/// zeta^(k)(rho) for k = 0..=n_max at every tabled zero, computed once and
/// reused across different X and truncation heights.
pub struct ZeroDerivatives {
    n_max: u32,
    digits: u32,
    per_zero: Vec<Vec<Complex>>,
}

impl ZeroDerivatives {
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.per_zero.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_zero.is_empty()
    }
}

/// Evaluate zeta and derivatives at every ordinate of the table.
pub fn zeta_derivatives_at_zeros(
    table: &ZeroTable,
    n_max: u32,
    ctx: &PrecisionContext,
) -> Result<ZeroDerivatives> {
    let prec = ctx.bits();
    let per_zero: Vec<Vec<Complex>> = table
        .ordinates()
        .par_chunks(BLOCK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|g| {
                    let rho = Complex::with_val(prec, (Float::with_val(prec, 0.5), g));
                    numkern::zeta_derivs_raw(n_max, &rho, ctx)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ZeroDerivatives {
        n_max,
        digits: ctx.digits(),
        per_zero,
    })
}

/// X^rho = sqrt(X) e^(i gamma log X) at working precision.
fn x_to_rho(sqrt_x: &Float, ln_x: &Float, gamma: &Float, prec: u32) -> Complex {
    let phase = Float::with_val(prec, gamma * ln_x);
    let (s, c) = phase.sin_cos(Float::new(prec));
    let mut v = Complex::with_val(prec, (c, s));
    v *= sqrt_x;
    v
}

/// sum_{0 < gamma <= T} zeta^(n)(rho) X^rho over the tabled zeros.
pub fn lhs_zero_sum(
    n: u32,
    x: &RationalX,
    t: &Float,
    table: &ZeroTable,
    ctx: &PrecisionContext,
) -> Result<CValue> {
    check_height(t, table)?;
    let prec = ctx.bits();
    let count = table.count_up_to(t);
    let gammas = &table.ordinates()[..count];
    let sqrt_x = x.to_float(ctx).sqrt();
    let ln_x = x.ln(ctx);

    let block_sums: Vec<Complex> = gammas
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = Complex::new(prec);
            for g in chunk {
                let rho = Complex::with_val(prec, (Float::with_val(prec, 0.5), g));
                let dv = numkern::zeta_derivs_raw(n, &rho, ctx)?
                    .pop()
                    .expect("derivative present");
                let xr = x_to_rho(&sqrt_x, &ln_x, g, prec);
                acc += Complex::with_val(prec, &dv * &xr);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = Complex::new(prec);
    for b in block_sums {
        total += b;
    }
    CValue::checked(total, "lhs_zero_sum")
}

/// Same sum assembled from precomputed derivatives.
pub fn lhs_from_derivatives(
    derivs: &ZeroDerivatives,
    n: u32,
    x: &RationalX,
    t: &Float,
    table: &ZeroTable,
    ctx: &PrecisionContext,
) -> Result<CValue> {
    check_height(t, table)?;
    if n > derivs.n_max {
        return Err(Error::InvalidInput(format!(
            "derivative cache holds orders up to {}, requested {n}",
            derivs.n_max
        )));
    }
    if derivs.per_zero.len() != table.len() || derivs.digits != ctx.digits() {
        return Err(Error::InvalidInput(
            "derivative cache does not match this table/context".into(),
        ));
    }
    let prec = ctx.bits();
    let count = table.count_up_to(t);
    let sqrt_x = x.to_float(ctx).sqrt();
    let ln_x = x.ln(ctx);
    let mut total = Complex::new(prec);
    for (g, dv) in table.ordinates()[..count]
        .iter()
        .zip(&derivs.per_zero[..count])
    {
        let xr = x_to_rho(&sqrt_x, &ln_x, g, prec);
        total += Complex::with_val(prec, &dv[n as usize] * &xr);
    }
    CValue::checked(total, "lhs_from_derivatives")
}

/// sum_{0 < gamma <= T} X^rho (the Landau sum).
pub fn landau_lhs(
    x: &RationalX,
    t: &Float,
    table: &ZeroTable,
    ctx: &PrecisionContext,
) -> Result<CValue> {
    check_height(t, table)?;
    let prec = ctx.bits();
    let count = table.count_up_to(t);
    let sqrt_x = x.to_float(ctx).sqrt();
    let ln_x = x.ln(ctx);
    let mut total = Complex::new(prec);
    for g in &table.ordinates()[..count] {
        total += x_to_rho(&sqrt_x, &ln_x, g, prec);
    }
    CValue::checked(total, "landau_lhs")
}

fn check_height(t: &Float, table: &ZeroTable) -> Result<()> {
    if *table.verified_height() < *t {
        return Err(Error::InsufficientTable(format!(
            "table verified to {} but T = {}",
            table.verified_height().to_f64(),
            t.to_f64()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ComparisonMeta {
    pub n: u32,
    pub x: String,
    pub effective_t: Float,
    pub zero_count: usize,
    pub formula: String,
    pub digits: u32,
}

/// One LHS/RHS comparison at a single height.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub lhs: CValue,
    pub rhs: CValue,
    pub residual: CValue,
    pub normalized_residual: Float,
    pub meta: ComparisonMeta,
}

/// Grid-level summary: the fitted constant (max normalized residual) and a
/// monotonicity diagnostic (last/first ratio of normalized residuals).
#[derive(Debug, Clone)]
pub struct CompareSummary {
    pub c_hat: Float,
    pub trend_ratio: Float,
    pub increasing: bool,
}

pub struct CompareOutcome {
    pub reports: Vec<ComparisonReport>,
    pub summary: CompareSummary,
}

/// Run one formula against the zero-sum over an ascending grid of heights.
/// Heights landing within the paper's gap condition of an ordinate are
/// moved to the bracket midpoint, recorded in `meta.effective_t`.
#[allow(clippy::too_many_arguments)]
pub fn compare(
    n: u32,
    x: &RationalX,
    t_grid: &[Float],
    formula: FormulaId,
    table: &ZeroTable,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
    derivs: Option<&ZeroDerivatives>,
) -> Result<CompareOutcome> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("empty T grid".into()));
    }
    for w in t_grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("T grid must be ascending".into()));
        }
    }
    validate_formula_inputs(n, x, formula)?;

    let prec = ctx.bits();
    let mut reports = Vec::with_capacity(t_grid.len());
    for t in t_grid {
        let report = match formula {
            FormulaId::SAsym => compare_s_sum(n, t, tables, ctx)?,
            FormulaId::Landau => {
                let t_eff = safe_truncation_height(t, table, ctx)?;
                let lhs = landau_lhs(x, &t_eff, table, ctx)?;
                let rhs = expansions::landau_rhs(x, &t_eff, ctx)?;
                let residual = Complex::with_val(prec, lhs.as_complex() - rhs.as_complex());
                let scale = Float::with_val(prec, t_eff.ln_ref());
                let normalized_residual = Float::with_val(prec, &cx::cabs(&residual) / &scale);
                ComparisonReport {
                    meta: ComparisonMeta {
                        n,
                        x: x.to_string(),
                        zero_count: table.count_up_to(&t_eff),
                        effective_t: t_eff,
                        formula: formula.as_str().to_string(),
                        digits: ctx.digits(),
                    },
                    lhs,
                    rhs,
                    residual: CValue::checked(residual, "landau residual")?,
                    normalized_residual,
                }
            }
            _ => {
                let t_eff = safe_truncation_height(t, table, ctx)?;
                let lhs = match derivs {
                    Some(d) => lhs_from_derivatives(d, n, x, &t_eff, table, ctx)?,
                    None => lhs_zero_sum(n, x, &t_eff, table, ctx)?,
                };
                let rhs = rhs_breakdown(n, x, &t_eff, formula, tables, ctx)?;
                let residual =
                    Complex::with_val(prec, lhs.as_complex() - rhs.total.as_complex());
                let normalized_residual =
                    Float::with_val(prec, &cx::cabs(&residual) / &rhs.error_scale);
                ComparisonReport {
                    meta: ComparisonMeta {
                        n,
                        x: x.to_string(),
                        zero_count: table.count_up_to(&t_eff),
                        effective_t: t_eff,
                        formula: formula.as_str().to_string(),
                        digits: ctx.digits(),
                    },
                    lhs,
                    rhs: rhs.total,
                    residual: CValue::checked(residual, "residual")?,
                    normalized_residual,
                }
            }
        };
        reports.push(report);
    }

    let mut c_hat = reports[0].normalized_residual.clone();
    for r in &reports[1..] {
        if r.normalized_residual > c_hat {
            c_hat = r.normalized_residual.clone();
        }
    }
    let first = &reports[0].normalized_residual;
    let last = &reports[reports.len() - 1].normalized_residual;
    let trend_ratio = if first.is_zero() {
        ctx.float(0)
    } else {
        Float::with_val(prec, last / first)
    };
    let increasing = reports
        .windows(2)
        .all(|w| w[0].normalized_residual <= w[1].normalized_residual)
        && reports.len() > 1;
    Ok(CompareOutcome {
        reports,
        summary: CompareSummary {
            c_hat,
            trend_ratio,
            increasing,
        },
    })
}

/// Dispatch the RHS formulas that produce a breakdown.
pub fn rhs_breakdown(
    n: u32,
    x: &RationalX,
    t: &Float,
    formula: FormulaId,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
) -> Result<expansions::ExpansionBreakdown> {
    match formula {
        FormulaId::Theorem1 => expansions::theorem1_rhs(n, x, t, ctx),
        FormulaId::Explicit2 => expansions::explicit2_rhs(n, x, t, ctx),
        FormulaId::Integer => {
            expansions::corollary_integer_rhs(n, x, t, tables, ctx, ErrorShape::RiemannHypothesis)
        }
        FormulaId::GeneralSc => {
            expansions::general_sc_rhs(n, t, tables, ctx, ErrorShape::RiemannHypothesis)
        }
        FormulaId::Fujii2 => {
            expansions::fujii_shanks_rhs(t, tables, ctx, ErrorShape::RiemannHypothesis)
        }
        FormulaId::Fujii4 => {
            expansions::fujii_integer_rhs(x, t, tables, ctx, ErrorShape::RiemannHypothesis)
        }
        FormulaId::SAsym => expansions::s_asymptotic(n, t, tables, ctx),
        FormulaId::Landau => Err(Error::InvalidInput(
            "landau_rhs is a single value; use the landau comparison path".into(),
        )),
    }
}

fn compare_s_sum(
    k: u32,
    y: &Float,
    tables: &LaurentTable,
    ctx: &PrecisionContext,
) -> Result<ComparisonReport> {
    let prec = ctx.bits();
    let direct = arith::s_direct(k, y, ctx)?;
    let mut signed = direct.clone();
    if k % 2 == 0 {
        signed = -signed; // (-1)^(k+1)
    }
    let rhs = expansions::s_asymptotic(k, y, tables, ctx)?;
    let lhs_c = Complex::with_val(prec, (&signed, &Float::new(prec)));
    let residual = Complex::with_val(prec, &lhs_c - rhs.total.as_complex());
    let denom = direct.clone().abs();
    let normalized_residual = if denom.is_zero() {
        cx::cabs(&residual)
    } else {
        Float::with_val(prec, &cx::cabs(&residual) / &denom)
    };
    Ok(ComparisonReport {
        lhs: CValue::checked(lhs_c, "s_direct")?,
        rhs: rhs.total,
        residual: CValue::checked(residual, "s residual")?,
        normalized_residual,
        meta: ComparisonMeta {
            n: k,
            x: "-".into(),
            effective_t: y.clone(),
            zero_count: 0,
            formula: "s-asym".into(),
            digits: ctx.digits(),
        },
    })
}

fn validate_formula_inputs(n: u32, x: &RationalX, formula: FormulaId) -> Result<()> {
    match formula {
        FormulaId::GeneralSc | FormulaId::Fujii2 => {
            if x.as_integer() != Some(1) {
                return Err(Error::InvalidInput(format!(
                    "{} compares the X = 1 sum; got X = {x}",
                    formula.as_str()
                )));
            }
        }
        FormulaId::Fujii4 => {
            if !x.is_integer() {
                return Err(Error::XNotInteger);
            }
            if n != 1 {
                return Err(Error::InvalidInput("fujii4 is the n = 1 case".into()));
            }
        }
        FormulaId::Integer => {
            if !x.is_integer() {
                return Err(Error::XNotInteger);
            }
        }
        FormulaId::Landau => {
            if *x.rational() <= 1u32 {
                return Err(Error::InvalidInput("Landau's formula needs X > 1".into()));
            }
        }
        _ => {}
    }
    if formula == FormulaId::Fujii2 && n != 1 {
        return Err(Error::InvalidInput("fujii2 is the n = 1 case".into()));
    }
    Ok(())
}

/// Render comparison reports as the fixed-column CSV, summary lines as
/// trailing comments.
pub fn compare_csv(outcome: &CompareOutcome, digits: u32) -> String {
    let mut out = String::from(
        "T_effective,zero_count,lhs_re,lhs_im,rhs_re,rhs_im,resid_abs,resid_norm\n",
    );
    for r in &outcome.reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format_float(&r.meta.effective_t, digits),
            r.meta.zero_count,
            format_float(r.lhs.re(), digits),
            format_float(r.lhs.im(), digits),
            format_float(r.rhs.re(), digits),
            format_float(r.rhs.im(), digits),
            format_float(&r.residual.abs(), digits),
            format_float(&r.normalized_residual, digits),
        ));
    }
    out.push_str(&format!(
        "# c_hat = {}\n# resid_norm_trend = {} (last/first = {})\n",
        format_float(&outcome.summary.c_hat, digits),
        if outcome.summary.increasing {
            "increasing"
        } else {
            "bounded"
        },
        format_float(&outcome.summary.trend_ratio, digits),
    ));
    out
}

#[cfg(test)]
mod tests;
