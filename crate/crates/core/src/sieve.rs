//! Shared smallest-prime-factor sieve, grown on demand.

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use std::sync::RwLock;

const SIEVE_HARD_CAP: usize = 20_000_000;

static SPF: Lazy<RwLock<Vec<u32>>> = Lazy::new(|| RwLock::new(build_spf(1 << 16)));

fn build_spf(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Run `f` with a smallest-prime-factor table covering 0..=limit.
pub(crate) fn with_spf<T>(limit: usize, f: impl FnOnce(&[u32]) -> T) -> Result<T> {
    if limit > SIEVE_HARD_CAP {
        return Err(Error::SumTooLarge(format!(
            "sieve limit {limit} exceeds supported range"
        )));
    }
    {
        let spf = SPF.read().unwrap();
        if spf.len() > limit {
            return Ok(f(&spf));
        }
    }
    {
        let mut spf = SPF.write().unwrap();
        if spf.len() <= limit {
            *spf = build_spf((limit + 1).next_power_of_two());
        }
    }
    let spf = SPF.read().unwrap();
    Ok(f(&spf))
}
