//! Gauss sums of primitive Dirichlet characters.
//!
//! For χ primitive of conductor f, τ(χ, a) = Σ_{x mod f} χ(x) ζ_f^{ax},
//! computed exactly at level lcm(f, order(χ)). Imprimitive input is
//! replaced by its primitivization and the result is flagged.

use serde::Serialize;

use crate::arith::{factor, gcd, lcm, modulo};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CycNumber, GaloisElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct GaussSumValue {
    pub label: String,
    pub shift: i64,
    pub value: CycNumber,
    /// Set when the input character was imprimitive and was replaced by
    /// its primitive form before summing.
    pub primitivized: bool,
}

/// Level at which the Gauss sum of a primitive character lives.
pub fn gauss_level(chi: &DirichletCharacter) -> u64 {
    lcm(chi.conductor(), chi.order())
}

pub fn gauss_sum(chi: &DirichletCharacter, a: i64) -> GaussSumValue {
    let primitivized = !chi.is_primitive();
    let prim = chi.primitivize();
    GaussSumValue {
        label: prim.label(),
        shift: a,
        value: raw_gauss_sum(&prim, a),
        primitivized,
    }
}

/// τ(χ) = τ(χ, 1) of the primitive character inducing `chi`.
pub fn tau(chi: &DirichletCharacter) -> CycNumber {
    if chi.is_primitive() {
        raw_gauss_sum(chi, 1)
    } else {
        raw_gauss_sum(&chi.primitivize(), 1)
    }
}

fn raw_gauss_sum(chi: &DirichletCharacter, a: i64) -> CycNumber {
    let f = chi.modulus();
    let ord = chi.order();
    let level = lcm(f, ord);
    let mut full = vec![num::BigInt::from(0); level as usize];
    let step_f = level / f;
    let step_o = level / ord;
    let a = modulo(a, f);
    for x in 0..f {
        if let Some(v) = chi.value(x as i64) {
            let k = v.k * (ord / v.n);
            let e = (k * step_o + a * x % f * step_f) % level;
            full[e as usize] += 1;
        }
    }
    CycNumber::from_full(level, full, num::BigInt::from(1))
}

/// τ(χ, a) = χ̄(a)·τ(χ), including the vanishing case gcd(a, f) > 1.
pub fn shift_identity_check(chi: &DirichletCharacter, a: i64) -> bool {
    let prim = chi.primitivize();
    let lhs = raw_gauss_sum(&prim, a);
    let rhs = prim.conj().evaluate(a).mul(&raw_gauss_sum(&prim, 1));
    lhs == rhs
}

/// τ(χ)·τ(χ̄), which equals χ(−1)·f for primitive χ.
pub fn conjugation_product(chi: &DirichletCharacter) -> CycNumber {
    let prim = chi.primitivize();
    tau(&prim).mul(&tau(&prim.conj()))
}

/// Checks σ_d(τ(χ)) = σ_d(χ)‾(d) · τ(σ_d(χ)) exactly.
pub fn galois_equivariance_check(chi: &DirichletCharacter, d: i64) -> Result<bool> {
    let prim = chi.primitivize();
    let level = gauss_level(&prim);
    if gcd(modulo(d, level), level) != 1 && level > 1 {
        return Err(Error::NotCoprime {
            exponent: d,
            modulus: level,
        });
    }
    let sigma = GaloisElement::new(level, d)?;
    let lhs = tau(&prim).galois_apply(&sigma)?;
    let moved = prim.galois_act(&sigma)?;
    let rhs = moved.conj().evaluate(d).mul(&tau(&moved));
    Ok(lhs == rhs)
}

/// The quadratic character mod an odd prime p, i.e. the Legendre symbol.
fn legendre(p: u64) -> DirichletCharacter {
    DirichletCharacter::new(p, &[((p - 1) / 2) as i64]).expect("odd prime modulus")
}

/// √p as a cyclotomic integer: ζ_8 + ζ_8^{-1} for p = 2, τ(legendre) for
/// p ≡ 1 (mod 4) and −i·τ(legendre) for p ≡ 3 (mod 4).
fn sqrt_prime(p: u64) -> CycNumber {
    if p == 2 {
        return CycNumber::root_of_unity(8, 1).add(&CycNumber::root_of_unity(8, -1));
    }
    let t = tau(&legendre(p));
    if p % 4 == 1 {
        t
    } else {
        t.mul(&CycNumber::root_of_unity(4, 3))
    }
}

/// The positive square root of `n ≥ 1` as an exact cyclotomic number.
pub fn sqrt_integer(n: u64) -> CycNumber {
    let mut out = CycNumber::one(1);
    for (p, e) in factor(n) {
        out = out.scale(&num::BigRational::from_integer(p.pow(e / 2).into()));
        if e % 2 == 1 {
            out = out.mul(&sqrt_prime(p));
        }
    }
    out
}
