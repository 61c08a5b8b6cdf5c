//! Floating-point L-values for s ≥ 1.5 via the Hurwitz zeta function.

use num::complex::Complex64;
use num::ToPrimitive;

use super::bernoulli::BernoulliCache;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// Direct-sum length before the Euler–Maclaurin tail.
const DIRECT_TERMS: usize = 30;
/// Number of B_{2j} correction terms.
const CORRECTION_TERMS: usize = 12;

pub const MIN_NUMERIC_S: f64 = 1.5;

/// ζ(s, a) for real s > 1 and a > 0.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    euler_maclaurin(s, a, false)
}

/// The finite part of ζ(s, a) at s = 1, i.e. −ψ(a). Only meaningful in
/// combinations whose 1/(s−1) poles cancel.
fn hurwitz_finite_part_at_one(a: f64) -> f64 {
    euler_maclaurin(1.0, a, true)
}

fn euler_maclaurin(s: f64, a: f64, finite_part: bool) -> f64 {
    let bern = BernoulliCache::global().bernoulli_numbers(2 * CORRECTION_TERMS);
    let mut sum: f64 = (0..DIRECT_TERMS).map(|k| (k as f64 + a).powf(-s)).sum();
    let x = DIRECT_TERMS as f64 + a;
    sum += if finite_part {
        -x.ln()
    } else {
        x.powf(1.0 - s) / (s - 1.0)
    };
    sum += 0.5 * x.powf(-s);
    // rising factorial s(s+1)...(s+2j−2) / (2j)!, times x^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut xpow = x.powf(-s - 1.0);
    for j in 1..=CORRECTION_TERMS {
        let b2j = bern[2 * j].to_f64().unwrap_or(0.0);
        sum += b2j / fact * rising * xpow;
        let k = 2 * j as u32;
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= (k as f64 + 1.0) * (k as f64 + 2.0);
        xpow /= x * x;
    }
    sum
}

/// L(s, χ) = f^{−s} Σ_{a=1}^{f} χ(a) ζ(s, a/f) for the primitive form of χ.
///
/// Accepts s ≥ 1.5, and additionally s = 1 for non-principal characters
/// where the Hurwitz poles cancel.
pub fn l_value_numeric(chi: &DirichletCharacter, s: f64) -> Result<Complex64> {
    let chi = chi.primitivize();
    let at_one = s == 1.0 && !chi.is_trivial();
    if !(s >= MIN_NUMERIC_S || at_one) {
        return Err(Error::OutOfRange(format!(
            "numeric L-values need s >= {MIN_NUMERIC_S} (s = 1 only for non-principal characters), got {s}"
        )));
    }
    let f = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=f {
        if chi.value(a as i64).is_none() {
            continue;
        }
        let x = a as f64 / f as f64;
        let z = if at_one {
            hurwitz_finite_part_at_one(x)
        } else {
            hurwitz_zeta(s, x)
        };
        acc += chi.evaluate(a as i64).embed_complex() * z;
    }
    Ok(acc * (f as f64).powf(-s))
}
