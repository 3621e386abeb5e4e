//! Verified-complete tables of ordinates of nontrivial zeta zeros.
//!
//! Zeros are located as sign changes of Hardy's Z between Gram-point grid
//! lines, refined by a bracketed secant iteration, and certified complete
//! against the Riemann-von Mangoldt count N(T) = theta(T)/pi + 1 + S(T),
//! with S(T) obtained by tracking arg zeta along sigma from 2 to 1/2.
//! All ordinates carry beta = 1/2: every zero at these heights is known to
//! lie on the critical line, and the summation layer documents this as a
//! desk-scale assumption.

use crate::error::{Error, Result};
use crate::numkern::{self, cx, hardy_z, riemann_siegel_theta};
use crate::precision::{format_float_exact, PrecisionContext};
use rayon::prelude::*;
use rug::{Complex, Float};
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Imported,
}

/// Ascending ordinates gamma of zeros 1/2 + i*gamma, complete up to
/// `verified_height` (certified against the Riemann-von Mangoldt count).
#[derive(Debug, Clone)]
pub struct ZeroTable {
    ordinates: Vec<Float>,
    verified_height: Float,
    source: ZeroSource,
    precision_digits: u32,
}

impl ZeroTable {
    pub fn ordinates(&self) -> &[Float] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of ordinates <= t.
    pub fn count_up_to(&self, t: &Float) -> usize {
        self.ordinates.partition_point(|g| g <= t)
    }

    pub fn verified_height(&self) -> &Float {
        &self.verified_height
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }
}

/// Exact count of zeros with 0 < gamma <= T.
///
/// N(T) = theta(T)/pi + 1 + S(T) exactly (T not an ordinate), so the
/// argument-principle term S is always evaluated rather than assumed small:
/// |S| exceeds 1/2 already near the first Gram-law violation (~282.5), where
/// rounding theta/pi + 1 alone silently miscounts.
pub fn count_zeros_rvm(t: &Float, ctx: &PrecisionContext) -> Result<usize> {
    if *t <= 2.0f64 {
        return Ok(0);
    }
    let prec = ctx.bits();
    let theta = riemann_siegel_theta(t, ctx)?;
    let s_term = arg_zeta_critical(t, ctx)?;
    let mut n = Float::with_val(prec, &theta / &ctx.pi());
    n += 1u32;
    n += Float::with_val(prec, &s_term / &ctx.pi());
    let rounded = n.clone().round();
    let dist = Float::with_val(prec, &n - &rounded).abs();
    if dist > 0.01f64 {
        return Err(Error::AmbiguousCount(format!(
            "N(T) estimate {} is not near an integer at T = {}",
            n.to_f64(),
            t.to_f64()
        )));
    }
    let count = rounded.to_f64();
    if count < 0.0 {
        return Ok(0);
    }
    Ok(count as usize)
}

/// Continuous arg zeta(1/2 + iT) obtained by phase tracking along the
/// horizontal segment from sigma = 2 (where Re zeta > 0 pins the principal
/// branch) down to sigma = 1/2.
fn arg_zeta_critical(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let zeta_at = |sigma: &Float| -> Result<Complex> {
        let s = Complex::with_val(prec, (sigma, t));
        numkern::zeta_raw(&s, ctx)
    };

    let start = zeta_at(&ctx.float(2))?;
    if !start.real().is_sign_positive() {
        return Err(Error::AmbiguousCount(
            "Re zeta(2+iT) <= 0; branch anchor invalid".into(),
        ));
    }
    let mut total = Complex::with_val(prec, &start).arg().real().clone();

    let mut sigma = ctx.float(2);
    let half = ctx.float(0.5);
    let mut cur = start;
    let mut step = ctx.float(0.25);
    while sigma > half {
        let mut next_sigma = Float::with_val(prec, &sigma - &step);
        if next_sigma < half {
            next_sigma = half.clone();
        }
        let next = zeta_at(&next_sigma)?;
        let ratio = Complex::with_val(prec, &next * &cx::conj(&cur));
        let dphi = ratio.arg().real().clone();
        if dphi.clone().abs() > 1.2f64 {
            step /= 2u32;
            if step < 1e-6f64 {
                return Err(Error::AmbiguousCount(format!(
                    "phase step did not resolve near sigma = {}, T = {}",
                    sigma.to_f64(),
                    t.to_f64()
                )));
            }
            continue;
        }
        total += dphi;
        cur = next;
        sigma = next_sigma;
        step *= 2u32;
        if step > 0.25f64 {
            step = ctx.float(0.25);
        }
    }
    Ok(total)
}

/// Gram point g_k: the solution of theta(t) = k*pi on the increasing branch.
fn gram_point(k: i64, hint: Option<&Float>, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let target = Float::with_val(prec, &ctx.pi() * Float::with_val(prec, k));
    let mut t = match hint {
        Some(h) => {
            // Next Gram point is about pi/theta'(h) away.
            let d = numkern::theta_deriv(h, ctx)?;
            Float::with_val(prec, h + &(ctx.pi() / d))
        }
        None => ctx.float(9.5),
    };
    if t < 7.5f64 {
        t = ctx.float(7.5);
    }
    for _ in 0..80 {
        let f = Float::with_val(prec, &riemann_siegel_theta(&t, ctx)? - &target);
        if f.clone().abs() < 1e-9f64 {
            return Ok(t);
        }
        let d = numkern::theta_deriv(&t, ctx)?;
        let step = Float::with_val(prec, &f / &d);
        t -= step;
        if t < 7.0f64 {
            t = ctx.float(7.0);
        }
    }
    Err(Error::PrecisionUnachievable(format!(
        "Gram point iteration did not converge for k = {k}"
    )))
}

struct Interval {
    lo: Float,
    z_lo: Float,
    hi: Float,
    z_hi: Float,
    depth: u8,
}

impl Interval {
    fn has_sign_change(&self) -> bool {
        self.z_lo.is_sign_negative() != self.z_hi.is_sign_negative()
    }
}

/// Locate all ordinates in (0, t_max], certified complete by the
/// Riemann-von Mangoldt count, refined to working precision.
pub fn find_zeros(t_max: &Float, ctx: &PrecisionContext) -> Result<ZeroTable> {
    let prec = ctx.bits();
    if !t_max.is_finite() || t_max.is_sign_negative() {
        return Err(Error::InvalidInput("t_max must be a nonnegative real".into()));
    }
    let target = if *t_max > 2.0f64 {
        count_zeros_rvm(t_max, ctx)?
    } else {
        0
    };
    if target == 0 {
        return Ok(ZeroTable {
            ordinates: Vec::new(),
            verified_height: t_max.clone(),
            source: ZeroSource::Computed,
            precision_digits: ctx.digits(),
        });
    }

    // Grid: a few anchors below the Gram branch, then Gram points to t_max.
    let mut grid: Vec<Float> = [3.0, 5.0, 7.0, 8.5]
        .iter()
        .map(|v| ctx.float(*v))
        .collect();
    let mut k = -1i64;
    let mut hint: Option<Float> = None;
    loop {
        let g = gram_point(k, hint.as_ref(), ctx)?;
        if g >= *t_max {
            break;
        }
        grid.push(g.clone());
        hint = Some(g);
        k += 1;
    }
    grid.push(t_max.clone());

    let z_values: Vec<Float> = grid
        .par_iter()
        .map(|t| hardy_z(t, ctx))
        .collect::<Result<Vec<_>>>()?;

    let mut intervals: Vec<Interval> = grid
        .windows(2)
        .zip(z_values.windows(2))
        .map(|(ts, zs)| Interval {
            lo: ts[0].clone(),
            z_lo: zs[0].clone(),
            hi: ts[1].clone(),
            z_hi: zs[1].clone(),
            depth: 0,
        })
        .collect();

    // Dyadic escalation: early rounds split only sign-stable intervals;
    // later rounds split everything, up to 2^6 pieces per Gram interval.
    let mut round = 0u8;
    loop {
        let found = intervals.iter().filter(|iv| iv.has_sign_change()).count();
        if found == target {
            break;
        }
        if found > target {
            return Err(Error::MissedZero(format!(
                "sign changes ({found}) exceed certified count ({target})"
            )));
        }
        if round >= 6 {
            return Err(Error::MissedZero(format!(
                "located {found} of {target} zeros below {} after subdivision",
                t_max.to_f64()
            )));
        }
        let split_all = round >= 2;
        let to_split: Vec<usize> = intervals
            .iter()
            .enumerate()
            .filter(|(_, iv)| iv.depth < 6 && (split_all || !iv.has_sign_change()))
            .map(|(i, _)| i)
            .collect();
        if to_split.is_empty() {
            return Err(Error::MissedZero(format!(
                "located {found} of {target} zeros below {}; subdivision exhausted",
                t_max.to_f64()
            )));
        }
        let midpoints: Vec<(usize, Float, Float)> = to_split
            .par_iter()
            .map(|&i| {
                let iv = &intervals[i];
                let mid = Float::with_val(prec, &iv.lo + &iv.hi) / 2u32;
                let z = hardy_z(&mid, ctx)?;
                Ok((i, mid, z))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next: Vec<Interval> = Vec::with_capacity(intervals.len() + midpoints.len());
        let mut mid_iter = midpoints.into_iter().peekable();
        for (i, iv) in intervals.into_iter().enumerate() {
            if mid_iter.peek().map(|m| m.0) == Some(i) {
                let (_, mid, zm) = mid_iter.next().unwrap();
                next.push(Interval {
                    lo: iv.lo,
                    z_lo: iv.z_lo,
                    hi: mid.clone(),
                    z_hi: zm.clone(),
                    depth: iv.depth + 1,
                });
                next.push(Interval {
                    lo: mid,
                    z_lo: zm,
                    hi: iv.hi,
                    z_hi: iv.z_hi,
                    depth: iv.depth + 1,
                });
            } else {
                next.push(iv);
            }
        }
        intervals = next;
        round += 1;
    }

    let brackets: Vec<&Interval> = intervals.iter().filter(|iv| iv.has_sign_change()).collect();
    let ordinates: Vec<Float> = brackets
        .par_iter()
        .map(|iv| refine_bracket(&iv.lo, &iv.z_lo, &iv.hi, &iv.z_hi, ctx))
        .collect::<Result<Vec<_>>>()?;

    for w in ordinates.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::MissedZero(
                "refined ordinates are not strictly ascending".into(),
            ));
        }
    }

    Ok(ZeroTable {
        ordinates,
        verified_height: t_max.clone(),
        source: ZeroSource::Computed,
        precision_digits: ctx.digits(),
    })
}

/// Bracketed root refinement on Z: Illinois-damped false position with a
/// bisection fallback, run to the working-precision floor.
fn refine_bracket(
    lo0: &Float,
    z_lo0: &Float,
    hi0: &Float,
    z_hi0: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let prec = ctx.bits();
    let mut lo = lo0.clone();
    let mut hi = hi0.clone();
    let mut z_lo = z_lo0.clone();
    let mut z_hi = z_hi0.clone();
    let stop_z = ctx.pow10(-((ctx.work_digits() as i32) - 6));
    let stop_w = ctx.pow10(-((ctx.work_digits() as i32) - 4));
    let mut last_side = 0i8;
    let mut best = Float::with_val(prec, &lo + &hi) / 2u32;
    for iter in 0..400 {
        let width = Float::with_val(prec, &hi - &lo);
        if width < stop_w {
            return Ok(best);
        }
        // False position; fall back to bisection periodically and whenever
        // the secant point degenerates toward an endpoint.
        let denom = Float::with_val(prec, &z_hi - &z_lo);
        let mut x = if denom.is_zero() || iter % 8 == 7 {
            Float::with_val(prec, &lo + &hi) / 2u32
        } else {
            let mut x = Float::with_val(prec, &z_hi * &width);
            x /= &denom;
            Float::with_val(prec, &hi - &x)
        };
        let margin = Float::with_val(prec, &width / 128u32);
        if x <= Float::with_val(prec, &lo + &margin) || x >= Float::with_val(prec, &hi - &margin) {
            x = Float::with_val(prec, &lo + &hi) / 2u32;
        }
        let zx = hardy_z(&x, ctx)?;
        best = x.clone();
        if zx.clone().abs() < stop_z {
            return Ok(x);
        }
        if zx.is_sign_negative() == z_lo.is_sign_negative() {
            lo = x;
            z_lo = zx;
            if last_side == -1 {
                z_hi /= 2u32; // Illinois: unstick the retained endpoint
            }
            last_side = -1;
        } else {
            hi = x;
            z_hi = zx;
            if last_side == 1 {
                z_lo /= 2u32;
            }
            last_side = 1;
        }
    }
    Ok(best)
}

/// Largest height <= the bracket midpoint at which truncating the zero sum
/// keeps |T - gamma| above the 1/(2 log T) gap the expansions assume.
pub fn safe_truncation_height(
    t: &Float,
    table: &ZeroTable,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let prec = ctx.bits();
    let need = Float::with_val(prec, t + 1u32);
    if table.verified_height < need {
        return Err(Error::InsufficientTable(format!(
            "verified height {} < T + 1 = {}",
            table.verified_height.to_f64(),
            need.to_f64()
        )));
    }
    let gap_required = Float::with_val(prec, t.clone().ln() * 2u32).recip();
    let idx = table.count_up_to(t);
    let below = idx.checked_sub(1).map(|i| &table.ordinates[i]);
    let above = table.ordinates.get(idx);
    let mut min_gap: Option<Float> = None;
    if let Some(g) = below {
        min_gap = Some(Float::with_val(prec, t - g).abs());
    }
    if let Some(g) = above {
        let d = Float::with_val(prec, g - t).abs();
        if min_gap.as_ref().map(|m| d < *m).unwrap_or(true) {
            min_gap = Some(d);
        }
    }
    match min_gap {
        Some(g) if g <= gap_required => {
            // Midpoint of the pair bracketing T; when T sits at or just
            // below the first ordinate the pair above it is the only one.
            let (lo, hi) = match (below, above) {
                (Some(lo), Some(hi)) => (lo, hi),
                (None, Some(_)) if table.ordinates.len() >= 2 => {
                    (&table.ordinates[0], &table.ordinates[1])
                }
                _ => {
                    return Err(Error::InsufficientTable(
                        "no bracketing ordinates for the adjusted height".into(),
                    ))
                }
            };
            let mid = Float::with_val(prec, lo + hi) / 2u32;
            let mid_gap = Float::with_val(prec, &mid - lo);
            let mid_required = Float::with_val(prec, mid.clone().ln() * 2u32).recip();
            if mid_gap <= mid_required {
                return Err(Error::InsufficientTable(
                    "bracketing ordinates too close for a safe truncation height".into(),
                ));
            }
            Ok(mid)
        }
        _ => Ok(t.clone()),
    }
}

/// Parse a zero table: one decimal ordinate per line, ascending, '#'
/// comments allowed. Unless `trust` is set, each ordinate is re-verified
/// against |zeta(1/2 + i gamma)| and the table is count-certified.
pub fn import_zeros<R: BufRead>(
    reader: R,
    ctx: &PrecisionContext,
    trust: bool,
) -> Result<ZeroTable> {
    let prec = ctx.bits();
    let mut ordinates: Vec<Float> = Vec::new();
    // Table precision is inferred from the shortest mantissa in the file so
    // that circulated low-precision tables verify against a matching
    // tolerance rather than the context's.
    let mut inferred_digits = ctx.digits();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(Error::from)?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let parsed = Float::parse(body).map_err(|_| Error::MalformedLine(line_no))?;
        let value = Float::with_val(prec, parsed);
        if !value.is_finite() || value <= 0u32 {
            return Err(Error::MalformedLine(line_no));
        }
        if let Some(prev) = ordinates.last() {
            if value <= *prev {
                return Err(Error::NotAscending(line_no));
            }
        }
        inferred_digits = inferred_digits.min(mantissa_digits(body));
        ordinates.push(value);
    }
    let precision_digits = inferred_digits;

    if ordinates.is_empty() {
        return Ok(ZeroTable {
            ordinates,
            verified_height: ctx.zero(),
            source: ZeroSource::Imported,
            precision_digits,
        });
    }

    if trust {
        let verified_height = ordinates.last().unwrap().clone();
        return Ok(ZeroTable {
            ordinates,
            verified_height,
            source: ZeroSource::Imported,
            precision_digits,
        });
    }

    let tol = ctx.pow10(-(precision_digits as i32 - 8).max(2));
    let checks: Vec<Option<String>> = ordinates
        .par_iter()
        .map(|g| {
            let s = Complex::with_val(prec, (Float::with_val(prec, 0.5), g));
            match numkern::zeta_raw(&s, ctx) {
                Ok(v) => {
                    if cx::cabs(&v) < tol {
                        None
                    } else {
                        Some(format!("|zeta(1/2 + {}i)| = {:.3e}", g.to_f64(), cx::cabs(&v).to_f64()))
                    }
                }
                Err(e) => Some(format!("zeta failed at {}: {e}", g.to_f64())),
            }
        })
        .collect();
    if let Some(msg) = checks.into_iter().flatten().next() {
        return Err(Error::VerificationFailed(msg));
    }

    // Completeness: N just above the top ordinate must equal the list
    // length. Probe heights are jittered off the ordinate so the phase
    // tracking never runs through a zero.
    let g_max = ordinates.last().unwrap().clone();
    let step = mean_gap(&g_max, ctx)?;
    let mut certified: Option<(Float, usize)> = None;
    for frac in [0.02f64, 0.06, 0.15, 0.3] {
        let probe = Float::with_val(prec, &g_max + &Float::with_val(prec, &step * frac));
        match count_zeros_rvm(&probe, ctx) {
            Ok(c) => {
                certified = Some((probe, c));
                break;
            }
            Err(Error::AmbiguousCount(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let (mut height, n) = certified.ok_or_else(|| {
        Error::AmbiguousCount("no probe height above the table resolved cleanly".into())
    })?;
    if n != ordinates.len() {
        return Err(Error::VerificationFailed(format!(
            "table lists {} ordinates but N(T) = {n} just above the top entry",
            ordinates.len()
        )));
    }
    // Push the certified height outward while the count stays put.
    'extend: for _ in 0..50 {
        for frac in [1.0f64, 0.8, 0.6, 0.45] {
            let probe = Float::with_val(prec, &height + &Float::with_val(prec, &step * frac));
            match count_zeros_rvm(&probe, ctx) {
                Ok(c) if c == ordinates.len() => {
                    height = probe;
                    continue 'extend;
                }
                Ok(_) => break 'extend,
                Err(Error::AmbiguousCount(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        break;
    }

    Ok(ZeroTable {
        ordinates,
        verified_height: height,
        source: ZeroSource::Imported,
        precision_digits,
    })
}

/// Significant decimal digits in a literal, ignoring sign, point, exponent
/// and leading zeros.
fn mantissa_digits(s: &str) -> u32 {
    let mantissa: &str = s.split(['e', 'E']).next().unwrap_or(s);
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len().max(1) as u32
}

fn mean_gap(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    if *t <= 15.0f64 {
        return Ok(ctx.float(2));
    }
    let ratio = Float::with_val(prec, t / &ctx.two_pi()).ln();
    Ok(Float::with_val(prec, &ctx.two_pi() / &ratio))
}

/// Write the table in the interchange format: '#' header comments, then one
/// full-precision decimal ordinate per line. Deterministic for a given table.
pub fn export_zeros<W: Write>(table: &ZeroTable, mut writer: W) -> Result<()> {
    writeln!(writer, "# zeta zero ordinates (one per line, ascending)")?;
    writeln!(writer, "# digits = {}", table.precision_digits)?;
    writeln!(
        writer,
        "# verified_height = {}",
        format_float_exact(&table.verified_height)
    )?;
    writeln!(writer, "# count = {}", table.ordinates.len())?;
    writeln!(
        writer,
        "# source = {}",
        match table.source {
            ZeroSource::Computed => "computed",
            ZeroSource::Imported => "imported",
        }
    )?;
    for g in &table.ordinates {
        writeln!(writer, "{}", format_float_exact(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
