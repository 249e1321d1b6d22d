//! Exact prime counting by a segmented sieve of Eratosthenes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LadderError, Result};

pub const PRIME_COUNT_CAP: f64 = 1e8;
const SEGMENT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimeCount {
    #[serde(rename = "T")]
    pub threshold: f64,
    pub count: u64,
}

/// `π(⌊T⌋)`.
pub fn prime_count(threshold: f64) -> Result<PrimeCount> {
    if !(threshold >= 0.0) {
        return Err(LadderError::domain("prime_count", format!("T = {threshold} must be nonnegative")));
    }
    if threshold > PRIME_COUNT_CAP {
        return Err(LadderError::Resource {
            op: "prime_count",
            detail: format!("T = {threshold} exceeds the desk cap {PRIME_COUNT_CAP}"),
        });
    }
    let n = threshold.floor() as usize;
    Ok(PrimeCount { threshold, count: count_up_to(n) })
}

fn base_primes(limit: usize) -> Vec<usize> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn count_up_to(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let root = (n as f64).sqrt() as usize + 1;
    let primes = base_primes(root);
    let segments = n / SEGMENT + 1;
    (0..segments)
        .into_par_iter()
        .map(|seg| {
            let lo = (seg * SEGMENT).max(2);
            let hi = ((seg + 1) * SEGMENT).min(n + 1);
            if lo >= hi {
                return 0u64;
            }
            let mut composite = vec![false; hi - lo];
            for &p in &primes {
                if p * p >= hi {
                    break;
                }
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut j = start;
                while j < hi {
                    composite[j - lo] = true;
                    j += p;
                }
            }
            composite.iter().filter(|&&c| !c).count() as u64
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}
