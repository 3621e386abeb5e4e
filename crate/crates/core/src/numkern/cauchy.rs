//! Trapezoidal Cauchy-circle differentiation: derivatives of an analytic
//! function from equally spaced samples on a circle around the point.

use crate::error::Result;
use crate::precision::PrecisionContext;
use rug::{Complex, Float};

/// f^(n)(center) for n = 0..=n_max from `m_nodes` samples on the circle of
/// the given radius:
///
///   f^(n)(s) = n! / (M r^n) * sum_j f(s + r e^(i theta_j)) e^(-i n theta_j)
///
/// Exponentially convergent in M for f analytic past the circle.
pub(crate) fn circle_derivatives<F>(
    mut f: F,
    center: &Complex,
    radius: &Float,
    n_max: u32,
    m_nodes: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>>
where
    F: FnMut(&Complex) -> Result<Complex>,
{
    let prec = ctx.bits();
    let two_pi = ctx.two_pi();
    let mut sums = vec![Complex::new(prec); n_max as usize + 1];
    for j in 0..m_nodes {
        let theta = Float::with_val(prec, &two_pi * j) / m_nodes;
        let (sin_t, cos_t) = theta.sin_cos(Float::new(prec));
        let offset = Complex::with_val(prec, (&cos_t * radius, &sin_t * radius));
        let node = Complex::with_val(prec, center + &offset);
        let fz = f(&node)?;
        let w = Complex::with_val(prec, (cos_t, -sin_t)); // e^(-i theta)
        let mut wp = Complex::with_val(prec, (1, 0));
        for sum in sums.iter_mut() {
            *sum += Complex::with_val(prec, &fz * &wp);
            wp *= &w;
        }
    }
    let m_f = Float::with_val(prec, m_nodes);
    let mut fact = Float::with_val(prec, 1);
    let mut r_pow = Float::with_val(prec, 1);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for (n, sum) in sums.into_iter().enumerate() {
        if n > 0 {
            fact *= Float::with_val(prec, n as u64);
            r_pow *= radius;
        }
        let scale = Float::with_val(prec, &fact / &(Float::with_val(prec, &m_f * &r_pow)));
        out.push(sum * &scale);
    }
    Ok(out)
}

/// Node count used for circle differentiation up to order `n_max`.
pub(crate) fn node_count(n_max: u32, ctx: &PrecisionContext) -> u32 {
    32 * (n_max + 2) * ctx.digits().div_ceil(15)
}
