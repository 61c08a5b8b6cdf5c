//! Dirichlet characters modulo q, stored as exponent vectors on a canonical
//! set of generators of (Z/qZ)^*.
//!
//! Generators are chosen per prime-power component and lifted by CRT: for
//! 2^2 the generator is −1, for 2^e with e ≥ 3 the pair {−1, 5}, and for an
//! odd prime power the smallest primitive root. Components are ordered with
//! the 2-part first, then odd primes ascending.
//!
//! The external label of a character is `q.k`, where `k` reads the exponent
//! vector as a mixed-radix number with the first generator least
//! significant. `q.0` is always the principal character.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::arith::{crt, divisors, factor, gcd, lcm, modulo, smallest_primitive_root, totient};
use crate::cyclotomic::{CycNumber, GaloisElement};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// Exponent vector of each residue, `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

impl UnitGroupStructure {
    fn build(q: u64) -> Self {
        assert!(q >= 1);
        // (generator mod the component, order, component modulus)
        let mut local: Vec<(u64, u64, u64)> = Vec::new();
        for (p, e) in factor(q) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => local.push((3, 2, 4)),
                    _ => {
                        local.push((pe - 1, 2, pe));
                        local.push((5, pe / 4, pe));
                    }
                }
            } else {
                local.push((smallest_primitive_root(p, e), pe / p * (p - 1), pe));
            }
        }
        let generators: Vec<u64> = local
            .iter()
            .map(|&(g, _, m)| {
                if m == q {
                    g % q
                } else {
                    crt(g % m, m, 1, q / m)
                }
            })
            .collect();
        let orders: Vec<u64> = local.iter().map(|&(_, o, _)| o).collect();

        let mut logs = vec![None; q as usize];
        let count: u64 = orders.iter().product();
        for idx in 0..count {
            let exps = mixed_radix(idx, &orders);
            let mut a = 1 % q;
            for (g, &x) in generators.iter().zip(&exps) {
                a = (a as u128 * crate::arith::pow_mod(*g, x, q) as u128 % q as u128) as u64;
            }
            debug_assert!(logs[a as usize].is_none());
            logs[a as usize] = Some(exps);
        }
        UnitGroupStructure {
            modulus: q,
            generators,
            orders,
            logs,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent of the group (lcm of the cyclic factor orders).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent vector of `a`, or `None` when gcd(a, q) > 1.
    pub fn log(&self, a: i64) -> Option<&[u64]> {
        self.logs[modulo(a, self.modulus) as usize].as_deref()
    }
}

fn mixed_radix(mut idx: u64, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&r| {
            let d = idx % r;
            idx /= r;
            d
        })
        .collect()
}

/// Shared, lazily built unit-group structure for modulus `q`.
pub fn unit_group(q: u64) -> Arc<UnitGroupStructure> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<UnitGroupStructure>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(g) = cache.read().expect("poisoned").get(&q) {
        return g.clone();
    }
    let built = Arc::new(UnitGroupStructure::build(q));
    cache
        .write()
        .expect("poisoned")
        .entry(q)
        .or_insert(built)
        .clone()
}

/// A root of unity ζ_n^k with 0 ≤ k < n and gcd(k, n) = 1 unless n = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub k: u64,
    pub n: u64,
}

impl RootOfUnity {
    pub fn new(k: i64, n: u64) -> Self {
        let k = modulo(k, n);
        let g = gcd(k, n);
        RootOfUnity { k: k / g, n: n / g }
    }

    pub fn mul(self, other: Self) -> Self {
        let n = lcm(self.n, other.n);
        Self::new((self.k * (n / self.n) + other.k * (n / other.n)) as i64, n)
    }

    pub fn to_cyc(self) -> CycNumber {
        CycNumber::root_of_unity(self.n, self.k as i64)
    }
}

#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    conductor: u64,
    order: u64,
    parity: i8,
}

impl DirichletCharacter {
    /// Character mod `q` with the given exponents (reduced mod each order).
    pub fn new(q: u64, exponents: &[i64]) -> Result<Self> {
        if q == 0 {
            return Err(Error::OutOfRange("modulus must be positive".into()));
        }
        let group = unit_group(q);
        if exponents.len() != group.orders.len() {
            return Err(Error::OutOfRange(format!(
                "modulus {q} needs {} exponents, got {}",
                group.orders.len(),
                exponents.len()
            )));
        }
        let exps = exponents
            .iter()
            .zip(&group.orders)
            .map(|(&e, &o)| modulo(e, o))
            .collect();
        Ok(Self::from_parts(group, exps))
    }

    fn from_parts(group: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Self {
        let order = exponents
            .iter()
            .zip(&group.orders)
            .fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(e, o)));
        let mut chi = DirichletCharacter {
            group,
            exponents,
            conductor: 0,
            order,
            parity: 1,
        };
        chi.parity = match chi.value(-1) {
            Some(v) if v.k == 0 => 1,
            _ => -1,
        };
        chi.conductor = chi.find_conductor();
        chi
    }

    pub fn trivial(q: u64) -> Self {
        let group = unit_group(q);
        let n = group.orders.len();
        Self::from_parts(group, vec![0; n])
    }

    /// Build from prescribed values on the canonical generators.
    fn from_generator_values(q: u64, values: &[RootOfUnity]) -> Self {
        let group = unit_group(q);
        let exps = values
            .iter()
            .zip(&group.orders)
            .map(|(v, &o)| {
                debug_assert_eq!(o % v.n, 0, "value order must divide generator order");
                v.k * (o / v.n)
            })
            .collect();
        Self::from_parts(group, exps)
    }

    pub fn parse_label(label: &str) -> Result<Self> {
        let bad = || Error::BadLabel(label.to_string());
        let (q, k) = label.trim().split_once('.').ok_or_else(bad)?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        let k: u64 = k.parse().map_err(|_| bad())?;
        if q == 0 || k >= totient(q) {
            return Err(bad());
        }
        let group = unit_group(q);
        let exps = mixed_radix(k, &group.orders);
        Ok(Self::from_parts(group, exps))
    }

    pub fn index(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .rev()
            .fold(0, |acc, (&e, &o)| acc * o + e)
    }

    pub fn label(&self) -> String {
        format!("{}.{}", self.modulus(), self.index())
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// χ(−1) ∈ {+1, −1}.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn unit_group(&self) -> &UnitGroupStructure {
        &self.group
    }

    /// χ(a) as a root of unity, `None` when gcd(a, q) > 1.
    pub fn value(&self, a: i64) -> Option<RootOfUnity> {
        let logs = self.group.log(a)?;
        let l = self.group.exponent();
        let t = logs
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.orders)
            .fold(0u64, |acc, ((&x, &e), &o)| (acc + x * e % o * (l / o)) % l);
        Some(RootOfUnity::new(t as i64, l))
    }

    /// χ(a) as an exact element of Q(ζ_order); zero off the units.
    pub fn evaluate(&self, a: i64) -> CycNumber {
        match self.value(a) {
            Some(v) => CycNumber::root_of_unity(self.order, (v.k * (self.order / v.n)) as i64),
            None => CycNumber::zero(self.order),
        }
    }

    fn find_conductor(&self) -> u64 {
        let q = self.modulus();
        if self.order == 1 {
            return 1;
        }
        divisors(q)
            .into_iter()
            .find(|&f| {
                (1..q)
                    .step_by(f as usize)
                    .all(|a| match self.value(a as i64) {
                        Some(v) => v.k == 0,
                        None => true,
                    })
            })
            .unwrap_or(q)
    }

    /// The primitive character mod the conductor inducing `self`.
    pub fn primitivize(&self) -> Self {
        let f = self.conductor;
        if f == self.modulus() {
            return self.clone();
        }
        let q = self.modulus();
        let target = unit_group(f);
        let values: Vec<RootOfUnity> = target
            .generators
            .iter()
            .map(|&g| {
                let lift = (0..)
                    .map(|t| g + t * f)
                    .find(|&a| gcd(a, q) == 1)
                    .expect("a unit lift exists");
                self.value(lift as i64).expect("lift is a unit")
            })
            .collect();
        Self::from_generator_values(f, &values)
    }

    /// Lift to a multiple `m` of the modulus (the induced imprimitive character).
    pub fn lift_to(&self, m: u64) -> Result<Self> {
        if m % self.modulus() != 0 {
            return Err(Error::OutOfRange(format!(
                "{m} is not a multiple of {}",
                self.modulus()
            )));
        }
        let target = unit_group(m);
        let values: Vec<RootOfUnity> = target
            .generators
            .iter()
            .map(|&g| self.value(g as i64).expect("units lift to units"))
            .collect();
        Ok(Self::from_generator_values(m, &values))
    }

    /// The primitive character inducing the pointwise product χ1·χ2.
    pub fn twist(&self, other: &Self) -> Self {
        let m = lcm(self.modulus(), other.modulus());
        let target = unit_group(m);
        let values: Vec<RootOfUnity> = target
            .generators
            .iter()
            .map(|&g| {
                let a = self.value(g as i64).expect("unit");
                let b = other.value(g as i64).expect("unit");
                a.mul(b)
            })
            .collect();
        Self::from_generator_values(m, &values).primitivize()
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        Self::from_parts(self.group.clone(), exps)
    }

    /// σ_d ∘ χ, i.e. the character a ↦ χ(a)^d.
    pub fn galois_act(&self, sigma: &GaloisElement) -> Result<Self> {
        self.power(sigma.exponent() as i64)
    }

    /// χ^d for `d` coprime to the order.
    pub fn power(&self, d: i64) -> Result<Self> {
        if gcd(modulo(d, self.order), self.order) != 1 && self.order > 1 {
            return Err(Error::NotCoprime {
                exponent: d,
                modulus: self.order,
            });
        }
        let exps = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (e as u128 * modulo(d, o) as u128 % o as u128) as u64)
            .collect();
        Ok(Self::from_parts(self.group.clone(), exps))
    }

    pub fn summary(&self) -> CharacterSummary {
        CharacterSummary {
            label: self.label(),
            modulus: self.modulus(),
            order: self.order,
            conductor: self.conductor,
            parity: self.parity,
            primitive: self.is_primitive(),
        }
    }
}

/// σ_d ∘ χ; fails unless gcd(d, order(χ)) = 1.
pub fn galois_act_on_character(
    sigma: &GaloisElement,
    chi: &DirichletCharacter,
) -> Result<DirichletCharacter> {
    chi.galois_act(sigma)
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter({}, order {}, conductor {}, {})",
            self.label(),
            self.order,
            self.conductor,
            if self.is_even() { "even" } else { "odd" }
        )
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacterSummary {
    pub label: String,
    pub modulus: u64,
    pub order: u64,
    pub conductor: u64,
    pub parity: i8,
    pub primitive: bool,
}

/// All φ(q) characters mod q in label order.
pub fn enumerate(q: u64) -> Vec<DirichletCharacter> {
    let group = unit_group(q);
    (0..group.size())
        .map(|k| DirichletCharacter::from_parts(group.clone(), mixed_radix(k, &group.orders)))
        .collect()
}

/// Every primitive character with conductor in `1..=max_conductor`,
/// ordered by conductor then label.
pub fn primitive_characters(max_conductor: u64) -> Vec<DirichletCharacter> {
    (1..=max_conductor)
        .flat_map(enumerate)
        .filter(DirichletCharacter::is_primitive)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_units(q: u64) -> Vec<u64> {
        (0..q).filter(|&a| gcd(a, q) == 1).collect()
    }

    #[test]
    fn unit_group_examples() {
        let g1 = unit_group(1);
        assert!(g1.generators().is_empty());
        assert_eq!(g1.size(), 1);

        let g5 = unit_group(5);
        assert_eq!(g5.generators(), &[2]);
        assert_eq!(g5.orders(), &[4]);
        assert_eq!(crate::arith::mult_order(2, 5), 4);

        let g8 = unit_group(8);
        assert_eq!(g8.generators(), &[7, 5]);
        assert_eq!(g8.orders(), &[2, 2]);
        // brute force: every unit mod 8 squares to 1
        assert!(brute_units(8).iter().all(|&a| a * a % 8 == 1));
    }

    #[test]
    fn unit_group_logs_are_bijective() {
        for q in 1..=60u64 {
            let g = unit_group(q);
            assert_eq!(g.size(), totient(q));
            let units = brute_units(q);
            let mut seen = std::collections::HashSet::new();
            for &a in &units {
                let log = g.log(a as i64).expect("unit has a log").to_vec();
                assert!(seen.insert(log));
            }
            assert!((0..q)
                .filter(|a| gcd(*a, q) > 1)
                .all(|a| g.log(a as i64).is_none()));
        }
    }

    #[test]
    fn evaluate_examples() {
        let triv = DirichletCharacter::trivial(1);
        assert_eq!(triv.evaluate(17), CycNumber::one(1));
        let chi4 = DirichletCharacter::parse_label("4.1").unwrap();
        assert_eq!(chi4.evaluate(3), CycNumber::from_integer(1, -1));
        for chi in enumerate(6) {
            assert!(chi.evaluate(3).is_zero());
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(1).len(), 1);
        let mut orders: Vec<u64> = enumerate(5).iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        let c8 = enumerate(8);
        assert_eq!(c8.len(), 4);
        assert!(c8.iter().all(|c| c.order() <= 2));
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(DirichletCharacter::trivial(12).conductor(), 1);
        // χ(7) = −1, χ(5) = 1 on the generators {7, 5} of (Z/8)^*.
        let chi = DirichletCharacter::new(8, &[1, 0]).unwrap();
        assert_eq!(chi.conductor(), 4);
        for chi in enumerate(5).into_iter().filter(|c| c.order() == 4) {
            assert_eq!(chi.conductor(), 5);
        }
    }

    #[test]
    fn primitivize_examples() {
        let p = DirichletCharacter::trivial(12).primitivize();
        assert_eq!(p.modulus(), 1);
        let chi = DirichletCharacter::new(8, &[1, 0]).unwrap();
        let p = chi.primitivize();
        assert_eq!(p, DirichletCharacter::parse_label("4.1").unwrap());
        for a in brute_units(8) {
            assert_eq!(chi.evaluate(a as i64), p.evaluate(a as i64));
        }
        let prim = DirichletCharacter::parse_label("5.1").unwrap();
        assert_eq!(prim.primitivize(), prim);
    }

    #[test]
    fn twist_examples() {
        let chi = DirichletCharacter::parse_label("5.1").unwrap();
        assert_eq!(
            chi.twist(&DirichletCharacter::trivial(7)),
            chi.primitivize()
        );
        let q4 = DirichletCharacter::parse_label("4.1").unwrap();
        assert_eq!(q4.twist(&q4), DirichletCharacter::trivial(1));
        let q3 = DirichletCharacter::parse_label("3.1").unwrap();
        let t = q3.twist(&q4);
        assert_eq!(t.conductor(), 12);
        assert_eq!(t.order(), 2);
        for a in brute_units(12) {
            let expect = q3.evaluate(a as i64).mul(&q4.evaluate(a as i64));
            assert_eq!(t.evaluate(a as i64), expect);
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(DirichletCharacter::trivial(9).parity(), 1);
        assert_eq!(DirichletCharacter::parse_label("4.1").unwrap().parity(), -1);
        let quad5 = DirichletCharacter::parse_label("5.2").unwrap();
        assert_eq!(quad5.order(), 2);
        assert_eq!(quad5.parity(), 1);
    }

    #[test]
    fn galois_action_examples() {
        let chi = DirichletCharacter::parse_label("5.1").unwrap();
        let id = GaloisElement::new(4, 5).unwrap();
        assert_eq!(chi.galois_act(&id).unwrap(), chi);
        let s3 = GaloisElement::new(4, 3).unwrap();
        assert_eq!(chi.galois_act(&s3).unwrap(), chi.conj());
        let quad = DirichletCharacter::parse_label("5.2").unwrap();
        for d in [1, 3, 7, 9] {
            assert_eq!(
                quad.galois_act(&GaloisElement::new(10, d).unwrap())
                    .unwrap(),
                quad
            );
        }
        assert!(chi.power(2).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for q in 1..=30 {
            for chi in enumerate(q) {
                assert_eq!(DirichletCharacter::parse_label(&chi.label()).unwrap(), chi);
            }
        }
        assert!(DirichletCharacter::parse_label("5.4").is_err());
        assert!(DirichletCharacter::parse_label("x").is_err());
    }
}
