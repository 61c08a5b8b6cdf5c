use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use super::group::{FiniteGroup, Subgroup};
use crate::characters::RootOfUnity;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// A function on the conjugacy classes of a finite group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CycNumber>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<CycNumber>) -> Result<Self> {
        if values.len() != group.conjugacy_classes().len() {
            return Err(Error::OutOfRange(format!(
                "{} values for {} classes",
                values.len(),
                group.conjugacy_classes().len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let k = group.conjugacy_classes().len();
        ClassFunction {
            group,
            values: vec![CycNumber::zero(1); k],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &CycNumber {
        &self.values[self.group.class_of(g)]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &CycNumber {
        &self.values[0]
    }

    pub fn add(&self, other: &Self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let r = BigRational::from_integer(n.clone());
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(&r)).collect(),
        }
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// ⟨α, β⟩ = |G|⁻¹ Σ_g α(g) conj(β(g)).
    pub fn inner_product(&self, other: &Self) -> CycNumber {
        let mut acc = CycNumber::zero(1);
        for (c, class) in self.group.conjugacy_classes().iter().enumerate() {
            let term = self.values[c].mul(&other.values[c].conjugate());
            acc = acc.add(&term.scale(&BigRational::from_integer(class.len().into())));
        }
        acc.scale(&BigRational::new(BigInt::one(), self.group.order().into()))
    }

    /// The inner product as a rational, when it is one.
    pub fn inner_product_rational(&self, other: &Self) -> Option<BigRational> {
        self.inner_product(other).as_rational()
    }

    /// Values on the elements of `h`, aligned with `h.elements()`.
    pub fn restrict(&self, h: &Subgroup) -> Vec<CycNumber> {
        h.elements().iter().map(|&g| self.at(g).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNumber::is_zero)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

/// A homomorphism from a subgroup H to the roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    /// Value at each element of H, aligned with `Subgroup::elements`.
    pub values: Vec<RootOfUnity>,
}

impl LinearCharacter {
    pub fn to_cyc(&self) -> Vec<CycNumber> {
        self.values.iter().map(|v| v.to_cyc()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.k == 0)
    }
}

/// Every degree-one character of `h`, trivial first. Characters factor
/// through H/[H, H]; images of a greedy generating set of the quotient are
/// enumerated and inconsistent assignments discarded.
pub fn linear_characters(group: &FiniteGroup, h: &Subgroup) -> Vec<LinearCharacter> {
    let derived = group.derived_subgroup(h);
    // greedy generators of H modulo H'
    let mut span = derived.clone();
    let mut gens: Vec<(usize, u64)> = Vec::new();
    for &x in h.elements() {
        if span.contains(x) {
            continue;
        }
        // order of x modulo the current span restricted to the quotient H/H'
        let mut k = 1u64;
        let mut y = x;
        while !derived.contains(y) {
            y = group.mul(y, x);
            k += 1;
        }
        gens.push((x, k));
        let all: Vec<usize> = span.elements().iter().copied().chain([x]).collect();
        span = group.closure(&all);
    }
    let radices: Vec<u64> = gens.iter().map(|&(_, o)| o).collect();
    let total: u64 = radices.iter().product();
    let mut out = Vec::new();
    'assign: for idx in 0..total {
        let mut rest = idx;
        let images: Vec<RootOfUnity> = radices
            .iter()
            .rev()
            .map(|&r| {
                let d = rest % r;
                rest /= r;
                RootOfUnity::new(d as i64, r)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        let mut value: Vec<Option<RootOfUnity>> = vec![None; h.order()];
        value[0] = Some(RootOfUnity::new(0, 1));
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            let vx = value[h.position(x).expect("in H")].expect("assigned");
            let steps = gens
                .iter()
                .zip(&images)
                .map(|(&(g, _), &im)| (g, im))
                .chain(
                    derived
                        .elements()
                        .iter()
                        .map(|&d| (d, RootOfUnity::new(0, 1))),
                );
            for (g, im) in steps {
                let y = group.mul(x, g);
                let vy = vx.mul(im);
                let slot = &mut value[h.position(y).expect("closed")];
                match slot {
                    Some(existing) if *existing != vy => continue 'assign,
                    Some(_) => {}
                    None => {
                        *slot = Some(vy);
                        queue.push(y);
                    }
                }
            }
        }
        out.push(LinearCharacter {
            values: value
                .into_iter()
                .map(|v| v.expect("H is generated"))
                .collect(),
        });
    }
    out
}

/// Ind_H^G ψ(g) = |H|⁻¹ Σ_{x ∈ G} ψ°(x g x⁻¹). Rejects ψ that is not a
/// homomorphism into the nonzero numbers.
pub fn induce(group: &Arc<FiniteGroup>, h: &Subgroup, psi: &[CycNumber]) -> Result<ClassFunction> {
    if psi.len() != h.order() {
        return Err(Error::OutOfRange(
            "ψ must have one value per subgroup element".into(),
        ));
    }
    for (i, &a) in h.elements().iter().enumerate() {
        if psi[i].is_zero() {
            return Err(Error::NotMultiplicative);
        }
        for (j, &b) in h.elements().iter().enumerate() {
            let ab = h.position(group.mul(a, b)).expect("closed");
            if psi[ab] != psi[i].mul(&psi[j]) {
                return Err(Error::NotMultiplicative);
            }
        }
    }
    let n = group.order();
    let values = group
        .conjugacy_classes()
        .iter()
        .map(|class| {
            let g = class[0];
            let mut acc = CycNumber::zero(1);
            for x in 0..n {
                let c = group.mul(group.mul(x, g), group.inv(x));
                if let Some(p) = h.position(c) {
                    acc = acc.add(&psi[p]);
                }
            }
            acc.scale(&BigRational::new(BigInt::one(), h.order().into()))
        })
        .collect();
    ClassFunction::new(group.clone(), values)
}

/// Irreducible characters of a small group, ordered by degree with the
/// trivial character first. Candidates are induced linear characters and
/// products of known irreducibles; each candidate is reduced against the
/// irreducibles found so far and accepted when it has norm 1.
pub fn irreducible_characters(group: &Arc<FiniteGroup>) -> Result<Vec<ClassFunction>> {
    let k = group.conjugacy_classes().len();
    let order = BigRational::from_integer(group.order().into());
    let mut irr: Vec<ClassFunction> = Vec::new();
    let mut pool: Vec<ClassFunction> = Vec::new();
    for h in group.subgroups() {
        for psi in linear_characters(group, h) {
            pool.push(induce(group, h, &psi.to_cyc())?);
        }
    }
    pool.sort_by_key(|c| c.degree().as_rational().expect("integer degree"));

    let sum_sq = |irr: &[ClassFunction]| -> BigRational {
        irr.iter()
            .map(|c| {
                let d = c.degree().as_rational().expect("integer");
                &d * &d
            })
            .fold(BigRational::zero(), |a, b| a + b)
    };

    let reduce = |c: &ClassFunction, irr: &[ClassFunction]| -> Result<ClassFunction> {
        let mut r = c.clone();
        for chi in irr {
            let m = c
                .inner_product_rational(chi)
                .filter(|m| m.is_integer())
                .ok_or_else(|| Error::NotVirtualCharacter("non-integral multiplicity".into()))?;
            if !m.is_zero() {
                r = r.sub(&chi.scale(m.numer()));
            }
        }
        Ok(r)
    };

    let mut rounds = 0;
    while irr.len() < k {
        rounds += 1;
        if rounds > 8 {
            return Err(Error::InvalidGroup(
                "could not separate all irreducible characters".into(),
            ));
        }
        let mut remainders = Vec::new();
        for cand in &pool {
            let r = reduce(cand, &irr)?;
            if r.is_zero() {
                continue;
            }
            let norm = r.inner_product_rational(&r).unwrap_or_default();
            let deg = r.degree().as_rational().unwrap_or_default();
            if norm.is_one() && deg > BigRational::zero() && !irr.contains(&r) {
                irr.push(r);
            } else {
                remainders.push(r);
            }
        }
        if irr.len() >= k {
            break;
        }
        // differences of remainders, then products of irreducibles
        let mut next: Vec<ClassFunction> = Vec::new();
        for (i, a) in remainders.iter().enumerate() {
            for b in remainders.iter().skip(i + 1) {
                next.push(a.sub(b));
                next.push(b.sub(a));
            }
        }
        for (i, a) in irr.iter().enumerate() {
            for b in irr.iter().skip(i) {
                next.push(a.pointwise_mul(b));
            }
        }
        pool = next;
    }
    debug_assert_eq!(sum_sq(&irr), order);
    irr.sort_by_key(|c| c.degree().as_rational().expect("integer"));
    Ok(irr)
}
