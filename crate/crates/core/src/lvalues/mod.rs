//! Dirichlet L-values: exact values at non-positive integers, criticality
//! of negative integers, a numeric channel for s ≥ 1.5, and the explicit
//! functional equation over Q.

mod bernoulli;
mod numeric;

use num::complex::Complex64;
use num::BigRational;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::gauss::{sqrt_integer, tau};

pub use bernoulli::{bernoulli_polynomial, generalized_bernoulli, BernoulliCache};
pub use numeric::{hurwitz_zeta, l_value_numeric, MIN_NUMERIC_S};

/// L(χ, s) for s ≤ 0, via L(χ, 1−n) = −B_{n,χ}/n on the primitive form.
///
/// The principal character gives ζ(s); in particular ζ(0) = −1/2.
pub fn l_value_nonpositive(chi: &DirichletCharacter, s: i64) -> Result<CycNumber> {
    if s > 0 {
        return Err(Error::OutOfRange(format!("s = {s} is positive")));
    }
    let n = (1 - s) as u32;
    let b = generalized_bernoulli(chi, n);
    Ok(b.scale(&BigRational::new((-1).into(), n.into())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParitySignature {
    AllEven,
    AllOdd,
    Mixed,
}

impl ParitySignature {
    pub fn of(characters: &[DirichletCharacter]) -> ParitySignature {
        if characters.iter().all(DirichletCharacter::is_even) {
            ParitySignature::AllEven
        } else if characters.iter().all(|c| !c.is_even()) {
            ParitySignature::AllOdd
        } else {
            ParitySignature::Mixed
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CriticalCondition {
    /// m odd and every constituent even (totally real fixed field).
    I,
    /// m even and every constituent odd (conjugation acts as −1).
    II,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub m: i64,
    pub critical: bool,
    pub condition: CriticalCondition,
}

/// Criticality of s = m for a sum of Dirichlet characters with the given
/// parity signature. Accepts m ≤ 0.
pub fn classify_criticality(signature: ParitySignature, m: i64) -> Result<CriticalityVerdict> {
    if m > 0 {
        return Err(Error::OutOfRange(format!("m = {m} must be non-positive")));
    }
    let odd_m = m % 2 != 0;
    let condition = match (signature, odd_m) {
        (ParitySignature::AllEven, true) => CriticalCondition::I,
        (ParitySignature::AllOdd, false) => CriticalCondition::II,
        _ => CriticalCondition::None,
    };
    Ok(CriticalityVerdict {
        m,
        critical: condition != CriticalCondition::None,
        condition,
    })
}

/// Outcome of comparing both sides of the functional equation at s = 1 − m.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionalEquationCheck {
    pub label: String,
    pub m: i64,
    /// L(χ, m) from the exact value, embedded.
    pub lhs: [f64; 2],
    /// The right side without the ± sign.
    pub rhs: [f64; 2],
    /// The sign in {+1, −1} that minimizes the residual.
    pub sign: i8,
    pub residual: f64,
    pub relative_residual: f64,
}

/// Relative tolerance of the functional-equation cross-check.
pub const FUNCTIONAL_EQUATION_TOLERANCE: f64 = 1e-8;

impl FunctionalEquationCheck {
    pub fn passed(&self) -> bool {
        self.relative_residual <= FUNCTIONAL_EQUATION_TOLERANCE
    }
}

/// Checks L(χ, 1−s) = ± i^{−p} (τ(χ)/√f) f^{s−1/2} cos^{N+}(πs/2)
/// sin^{N−}(πs/2) · 2(2π)^{−s} Γ(s) L(χ̄, s) at s = 1 − m, with the left side
/// exact and the right side numeric. (N+, N−) is (1, 0) for even χ and
/// (0, 1) for odd χ; p matches.
pub fn functional_equation_check(
    chi: &DirichletCharacter,
    m: i64,
) -> Result<FunctionalEquationCheck> {
    let chi = chi.primitivize();
    let exact = l_value_nonpositive(&chi, m)?;
    if exact.is_zero() {
        return Err(Error::NotCritical(m));
    }
    let lhs = exact.embed_complex();
    let s = (1 - m) as f64;
    let f = chi.modulus() as f64;
    let odd = !chi.is_even();
    let pi = std::f64::consts::PI;
    let i_pow = if odd {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    let trig = if odd {
        (pi * s / 2.0).sin()
    } else {
        (pi * s / 2.0).cos()
    };
    let gamma: f64 = (1..(1 - m)).map(|k| k as f64).product();
    let l_conj = l_value_numeric(&chi.conj(), s)?;
    let rhs = i_pow * tau(&chi).embed_complex() / f.sqrt()
        * f.powf(s - 0.5)
        * trig
        * 2.0
        * (2.0 * pi).powf(-s)
        * gamma
        * l_conj;
    let plus = (lhs - rhs).norm();
    let minus = (lhs + rhs).norm();
    let (sign, residual) = if plus <= minus {
        (1, plus)
    } else {
        (-1, minus)
    };
    Ok(FunctionalEquationCheck {
        label: chi.label(),
        m,
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
        sign,
        residual,
        relative_residual: residual / lhs.norm(),
    })
}

/// W(χ) = τ(χ) / (i^p √f), exact.
pub fn root_number(chi: &DirichletCharacter) -> CycNumber {
    let chi = chi.primitivize();
    let f = chi.modulus();
    let i_inv = if chi.is_even() {
        CycNumber::one(1)
    } else {
        CycNumber::root_of_unity(4, 3)
    };
    tau(&chi)
        .mul(&i_inv)
        .mul(&sqrt_integer(f))
        .scale(&BigRational::new(1.into(), f.into()))
}
