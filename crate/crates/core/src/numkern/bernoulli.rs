//! Bernoulli numbers: exact rationals via the classical recurrence, plus
//! per-precision caches of the scaled forms the asymptotic series consume.

use once_cell::sync::Lazy;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Scaled even Bernoulli numbers at one binary precision. Index `k`
/// corresponds to B_{2k}; index 0 entries are placeholders.
pub struct ScaledBernoulli {
    /// B_{2k} / (2k)!  (Euler-Maclaurin corrections for zeta)
    pub over_fact: Vec<Float>,
    /// B_{2k} / ((2k)(2k-1))  (Stirling series for log-gamma)
    pub over_stirling: Vec<Float>,
    /// B_{2k} / (2k)  (asymptotic series for digamma)
    pub over_2k: Vec<Float>,
}

struct Cache {
    /// Exact B_n for all n computed so far (odd entries included).
    exact: Vec<Rational>,
    scaled: HashMap<u32, Arc<ScaledBernoulli>>,
}

static CACHE: Lazy<Mutex<Cache>> = Lazy::new(|| {
    Mutex::new(Cache {
        exact: vec![Rational::from(1)],
        scaled: HashMap::new(),
    })
});

/// B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j, exact.
fn extend_exact(exact: &mut Vec<Rational>, n_max: usize) {
    while exact.len() <= n_max {
        let n = exact.len();
        let mut acc = Rational::new();
        for (j, bj) in exact.iter().enumerate() {
            if bj.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let c = Integer::from(n as u32 + 1).binomial(j as u32);
            acc += Rational::from((c, Integer::from(1))) * bj;
        }
        acc /= -Rational::from((n as u32 + 1, 1u32));
        exact.push(acc);
    }
}

/// Scaled B_{2k} tables covering k = 0..=k_max at binary precision `prec`.
pub fn scaled(prec: u32, k_max: usize) -> Arc<ScaledBernoulli> {
    let mut cache = CACHE.lock().unwrap();
    if let Some(existing) = cache.scaled.get(&prec) {
        if existing.over_fact.len() > k_max {
            return Arc::clone(existing);
        }
    }
    // Grow generously so repeated small extensions do not thrash.
    let target = (k_max + 1).max(64).next_power_of_two();
    extend_exact(&mut cache.exact, 2 * target);

    let mut over_fact = Vec::with_capacity(target + 1);
    let mut over_stirling = Vec::with_capacity(target + 1);
    let mut over_2k = Vec::with_capacity(target + 1);
    let mut fact = Integer::from(1); // (2k)!
    for k in 0..=target {
        let two_k = 2 * k;
        if k > 0 {
            fact *= Integer::from(two_k - 1);
            fact *= Integer::from(two_k);
        }
        let b = &cache.exact[two_k];
        let f = Float::with_val(prec, b);
        over_fact.push(Float::with_val(prec, &f / &Float::with_val(prec, &fact)));
        if k > 0 {
            over_stirling.push(Float::with_val(
                prec,
                &f / &Float::with_val(prec, (two_k * (two_k - 1)) as u64),
            ));
            over_2k.push(Float::with_val(prec, &f / &Float::with_val(prec, two_k as u64)));
        } else {
            over_stirling.push(Float::new(prec));
            over_2k.push(Float::new(prec));
        }
    }
    let entry = Arc::new(ScaledBernoulli {
        over_fact,
        over_stirling,
        over_2k,
    });
    cache.scaled.insert(prec, Arc::clone(&entry));
    entry
}
