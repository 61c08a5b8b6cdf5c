//! Cyclotomic polynomials Φ_N with a process-wide, thread-safe cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::factor;

/// Coefficients of Φ_N, lowest degree first, together with the indices of
/// the nonzero coefficients below the leading term.
#[derive(Debug)]
pub(crate) struct CyclotomicPoly {
    pub coeffs: Vec<i64>,
    pub support: Vec<usize>,
}

impl CyclotomicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<CyclotomicPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn cyclotomic_poly(n: u64) -> Arc<CyclotomicPoly> {
    if let Some(p) = cache().read().expect("poisoned").get(&n) {
        return p.clone();
    }
    let coeffs = compute(n);
    let support = (0..coeffs.len() - 1).filter(|&i| coeffs[i] != 0).collect();
    let poly = Arc::new(CyclotomicPoly { coeffs, support });
    cache()
        .write()
        .expect("poisoned")
        .entry(n)
        .or_insert(poly)
        .clone()
}

/// Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x) for p ∤ m, then Φ_N(x) = Φ_rad(x^{N/rad}).
fn compute(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut phi = vec![-1i64, 1];
    let mut rad = 1u64;
    for (p, _) in factor(n) {
        let stretched = stretch(&phi, p as usize);
        phi = div_monic(&stretched, &phi);
        rad *= p;
    }
    stretch(&phi, (n / rad) as usize)
}

fn stretch(poly: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; (poly.len() - 1) * k + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k - dd + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}
