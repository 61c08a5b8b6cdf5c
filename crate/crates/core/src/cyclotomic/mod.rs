//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`CycNumber`] is stored in the power basis {1, ζ_N, ..., ζ_N^{φ(N)-1}}
//! as integer numerators over one positive common denominator. Every value
//! is reduced modulo Φ_N on construction, so equality at a fixed level is
//! a plain comparison of coefficient vectors.

mod poly;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{gcd, lcm, modulo, totient};
use crate::error::{Error, Result};

use poly::{cyclotomic_poly, CyclotomicPoly};

/// An element of Q(ζ_N).
#[derive(Clone, Debug)]
pub struct CycNumber {
    level: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// The automorphism ζ_N ↦ ζ_N^d of Q(ζ_N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisElement {
    level: u64,
    exponent: u64,
}

impl GaloisElement {
    pub fn new(level: u64, exponent: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let d = modulo(exponent, level);
        if gcd(d, level) != 1 && level > 1 {
            return Err(Error::NotCoprime {
                exponent,
                modulus: level,
            });
        }
        Ok(GaloisElement { level, exponent: d })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn compose(&self, other: &GaloisElement) -> Result<GaloisElement> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        GaloisElement::new(
            self.level,
            (self.exponent as u128 * other.exponent as u128 % self.level as u128) as i64,
        )
    }

    /// Complex conjugation at this level.
    pub fn conjugation(level: u64) -> GaloisElement {
        GaloisElement {
            level,
            exponent: modulo(-1, level),
        }
    }

    /// All of Gal(Q(ζ_N)/Q), exponents in increasing order.
    pub fn full_group(level: u64) -> Vec<GaloisElement> {
        (0..level.max(1))
            .filter(|&d| gcd(d, level) == 1)
            .map(|d| GaloisElement {
                level,
                exponent: d % level.max(1),
            })
            .collect()
    }
}

impl CycNumber {
    /// Σ c_k ζ_N^k, with exponents taken modulo `level`.
    pub fn make(level: u64, terms: &[(i64, BigRational)]) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut full = vec![BigInt::zero(); level as usize];
        for (k, c) in terms {
            let scale = &den / c.denom();
            full[modulo(*k, level) as usize] += c.numer() * scale;
        }
        Ok(Self::from_full(level, full, den))
    }

    pub fn zero(level: u64) -> Self {
        let phi = totient(level) as usize;
        CycNumber {
            level,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(level, BigRational::one())
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(level: u64, r: BigRational) -> Self {
        let mut out = Self::zero(level);
        out.num[0] = r.numer().clone();
        out.den = r.denom().clone();
        out
    }

    /// ζ_level^k.
    pub fn root_of_unity(level: u64, k: i64) -> Self {
        let mut full = vec![BigInt::zero(); level as usize];
        full[modulo(k, level) as usize] = BigInt::one();
        Self::from_full(level, full, BigInt::one())
    }

    /// The imaginary unit i = ζ_4.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// Build from integer coefficients on all N exponents, over `den`.
    pub(crate) fn from_full(level: u64, mut full: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(full.len(), level as usize);
        let phi = cyclotomic_poly(level);
        let deg = phi.degree();
        if let Some(small) = reduce_small(&full, &phi) {
            full = small.into_iter().map(BigInt::from).collect();
        } else {
            for k in (deg..full.len()).rev() {
                if full[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut full[k]);
                for &j in &phi.support {
                    full[k - deg + j] -= &c * phi.coeffs[j];
                }
            }
            full.truncate(deg);
        }
        let mut out = CycNumber {
            level,
            num: full,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Sparse canonical coefficients: exponent ↦ nonzero rational.
    pub fn coefficients(&self) -> BTreeMap<usize, BigRational> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    /// Dense coefficients in the canonical basis, length φ(N).
    pub fn dense_coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            let c = self.num.first().cloned().unwrap_or_default();
            Some(BigRational::new(c, self.den.clone()))
        } else {
            None
        }
    }

    /// True when every canonical coefficient is an integer. Since
    /// Z[ζ_N] has the power basis as an integral basis, this is exactly
    /// the test for being an algebraic integer.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    pub(crate) fn integer_coordinates(&self) -> Option<&[BigInt]> {
        self.den.is_one().then_some(&self.num[..])
    }

    /// Re-express at level `m`, a multiple of the current level.
    pub fn promote(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        if m % self.level != 0 {
            return Err(Error::LevelMismatch(self.level, m));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        let step = (m / self.level) as usize;
        let mut full = vec![BigInt::zero(); m as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                full[k * step] = c.clone();
            }
        }
        Ok(Self::from_full(m, full, self.den.clone()))
    }

    fn lift_pair<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        let l = lcm(a.level, b.level);
        let lift = |x: &'a Self| {
            if x.level == l {
                Cow::Borrowed(x)
            } else {
                Cow::Owned(x.promote(l).expect("lcm is a multiple"))
            }
        };
        (lift(a), lift(b))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::lift_pair(self, other);
        let g = a.den.gcd(&b.den);
        let sa = &b.den / &g;
        let sb = &a.den / &g;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &sa + y * &sb)
            .collect();
        let mut out = CycNumber {
            level: a.level,
            num,
            den: &a.den * sa,
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            level: self.level,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::lift_pair(self, other);
        let n = a.level as usize;
        if let Some(full) = mul_small(&a.num, &b.num, n) {
            let full = full.into_iter().map(BigInt::from).collect();
            return Self::from_full(a.level, full, &a.den * &b.den);
        }
        let mut full = vec![BigInt::zero(); n];
        let bnz: Vec<(usize, &BigInt)> = b
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &bnz {
                let k = (i + j) % n;
                full[k] += x * y;
            }
        }
        Self::from_full(a.level, full, &a.den * &b.den)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = CycNumber {
            level: self.level,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.level);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse via the norm: a⁻¹ = Π_{σ≠1} σ(a) / N(a).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.level, r.recip()));
        }
        let mut others = Self::one(self.level);
        for sigma in GaloisElement::full_group(self.level).into_iter().skip(1) {
            others = others.mul(&self.galois_apply(&sigma)?);
        }
        let norm = self
            .mul(&others)
            .as_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Image under ζ_N ↦ ζ_N^{-1}.
    pub fn conjugate(&self) -> Self {
        self.apply_exponent(modulo(-1, self.level))
    }

    pub fn galois_apply(&self, sigma: &GaloisElement) -> Result<Self> {
        if sigma.level != self.level {
            return Err(Error::LevelMismatch(sigma.level, self.level));
        }
        Ok(self.apply_exponent(sigma.exponent))
    }

    /// Apply ζ ↦ ζ^d for a `d` coprime to the level, promoting `self` to
    /// `sigma`'s level first when needed.
    pub fn galois_apply_promoted(&self, sigma: &GaloisElement) -> Result<Self> {
        let a = if sigma.level == self.level {
            self.clone()
        } else {
            self.promote(sigma.level)?
        };
        a.galois_apply(sigma)
    }

    fn apply_exponent(&self, d: u64) -> Self {
        let n = self.level;
        let mut full = vec![BigInt::zero(); n as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                full[(k as u64 * d % n) as usize] = c.clone();
            }
        }
        Self::from_full(n, full, self.den.clone())
    }

    /// True iff `self` is fixed by every element of `subgroup`.
    pub fn is_fixed_by(&self, subgroup: &[GaloisElement]) -> bool {
        subgroup.iter().all(|s| {
            self.galois_apply_promoted(s)
                .map(|img| img == *self)
                .unwrap_or(false)
        })
    }

    /// Numerical value under the embedding ζ_N ↦ exp(2πi/N), in double
    /// precision.
    pub fn embed_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let n = self.level as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, theta);
        }
        acc
    }

    /// Σ|c_k|, the bound that scales the embedding error.
    pub fn coefficient_l1(&self) -> f64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY) / den)
            .sum()
    }

    /// Rewrite `self` at level `m` (a divisor of the current level) if it
    /// lies in Q(ζ_m). The rewrite is certified by solving the coordinate
    /// system exactly, so a successful return is itself a membership proof.
    pub fn descend(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        if self.level % m != 0 {
            return Err(Error::LevelMismatch(self.level, m));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        let phi_m = totient(m) as usize;
        let rows = self.num.len();
        // Columns: images of ζ_m^j at the current level, then the target.
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi_m + 1]; rows];
        for j in 0..phi_m {
            let img = Self::root_of_unity(m, j as i64).promote(self.level)?;
            for (r, c) in img.num.iter().enumerate() {
                if !c.is_zero() {
                    mat[r][j] = BigRational::from_integer(c.clone());
                }
            }
        }
        for (r, c) in self.num.iter().enumerate() {
            mat[r][phi_m] = BigRational::new(c.clone(), self.den.clone());
        }
        let solution = solve_rational(mat, phi_m).ok_or(Error::NotInSubfield(m))?;
        let terms: Vec<(i64, BigRational)> = solution
            .into_iter()
            .enumerate()
            .map(|(j, c)| (j as i64, c))
            .collect();
        Self::make(m, &terms)
    }

    /// The smallest level M | N with `self` ∈ Q(ζ_M), together with the
    /// rewritten element.
    pub fn descend_minimal(&self) -> Self {
        for m in crate::arith::divisors(self.level) {
            let fixing: Vec<GaloisElement> = GaloisElement::full_group(self.level)
                .into_iter()
                .filter(|s| s.exponent % m == 1 % m)
                .collect();
            if self.is_fixed_by(&fixing) {
                if let Ok(x) = self.descend(m) {
                    return x;
                }
            }
        }
        self.clone()
    }
}

/// Reduction modulo Φ_N in machine integers; None on overflow.
fn reduce_small(full: &[BigInt], phi: &CyclotomicPoly) -> Option<Vec<i128>> {
    let deg = phi.degree();
    let mut v: Vec<i128> = full
        .iter()
        .map(|c| c.to_i64().map(i128::from))
        .collect::<Option<_>>()?;
    for k in (deg..v.len()).rev() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        v[k] = 0;
        for &j in &phi.support {
            let t = c.checked_mul(phi.coeffs[j] as i128)?;
            v[k - deg + j] = v[k - deg + j].checked_sub(t)?;
        }
    }
    v.truncate(deg);
    if v.iter().all(|c| i64::try_from(*c).is_ok()) {
        Some(v)
    } else {
        None
    }
}

/// Cyclic convolution modulo x^n − 1 in machine integers; None on overflow.
fn mul_small(a: &[BigInt], b: &[BigInt], n: usize) -> Option<Vec<i128>> {
    let small = |v: &[BigInt]| -> Option<Vec<(usize, i128)>> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c.to_i64().map(|x| (i, i128::from(x))))
            .collect()
    };
    let (a, b) = (small(a)?, small(b)?);
    let mut full = vec![0i128; n];
    for &(i, x) in &a {
        for &(j, y) in &b {
            let k = (i + j) % n;
            full[k] = full[k].checked_add(x * y)?;
        }
    }
    full.iter()
        .all(|c| i64::try_from(*c).is_ok())
        .then_some(full)
}

/// Gaussian elimination on an augmented system with `n` unknowns; returns
/// `None` when inconsistent. Free variables are set to zero.
fn solve_rational(mut mat: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][col].recip();
        for v in mat[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, col) in pivots {
        x[col] = mat[row][n].clone();
    }
    Some(x)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::add(self, rhs)
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::sub(self, rhs)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::mul(self, rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber::neg(self)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// GAP-style rendering: `3/2 + E(5)^1 - 2*E(5)^3`.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficients();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "E({})^{}", self.level, k)?;
            } else {
                write!(f, "{}*E({})^{}", fmt_rational(&mag), self.level, k)?;
            }
        }
        Ok(())
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycNumber", 3)?;
        st.serialize_field("level", &self.level)?;
        let coeffs: Vec<String> = self.dense_coefficients().iter().map(fmt_rational).collect();
        st.serialize_field("coeffs", &coeffs)?;
        let z = self.embed_complex();
        st.serialize_field("approx", &[z.re, z.im])?;
        st.end()
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
