//! (Z/N)^* as a finite group, Dirichlet characters as class functions on
//! it, and the Frobenius bookkeeping for unramified primes.

use std::sync::Arc;

use serde::Serialize;

use super::classfn::ClassFunction;
use super::group::FiniteGroup;
use crate::arith::{factor, gcd, modulo};
use crate::characters::{DirichletCharacter, RootOfUnity};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// The group (Z/N)^* with elements listed as ascending residues.
#[derive(Clone, Debug)]
pub struct UnitsGroup {
    pub modulus: u64,
    pub units: Vec<u64>,
    pub group: Arc<FiniteGroup>,
}

impl UnitsGroup {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::OutOfRange("modulus must be positive".into()));
        }
        let units: Vec<u64> = (1..=modulus)
            .filter(|&a| gcd(a, modulus) == 1)
            .map(|a| a % modulus)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos = |x: u64| units.binary_search(&x).expect("unit");
        let table = units
            .iter()
            .map(|&a| units.iter().map(|&b| pos(a * b % modulus)).collect())
            .collect();
        let group = Arc::new(FiniteGroup::from_table(table)?);
        Ok(UnitsGroup {
            modulus,
            units,
            group,
        })
    }

    pub fn index_of(&self, a: i64) -> Option<usize> {
        self.units.binary_search(&modulo(a, self.modulus)).ok()
    }

    /// The class function g ↦ χ(g) of a character mod N.
    pub fn class_function(&self, chi: &DirichletCharacter) -> Result<ClassFunction> {
        if chi.modulus() != self.modulus {
            return Err(Error::OutOfRange(format!(
                "{} is not a character mod {}",
                chi.label(),
                self.modulus
            )));
        }
        let values = self
            .group
            .conjugacy_classes()
            .iter()
            .map(|c| chi.evaluate(self.units[c[0]] as i64))
            .collect();
        ClassFunction::new(self.group.clone(), values)
    }
}

/// Σ_j χ_j as a class function on (Z/N)^*, together with its constituents.
#[derive(Clone, Debug)]
pub struct AbelianBridge {
    pub units: UnitsGroup,
    pub constituents: Vec<DirichletCharacter>,
    pub character: ClassFunction,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianBridgeSummary {
    pub modulus: u64,
    pub constituents: Vec<String>,
    pub dimension: usize,
}

impl AbelianBridge {
    pub fn dimension(&self) -> usize {
        self.constituents.len()
    }

    pub fn summary(&self) -> AbelianBridgeSummary {
        AbelianBridgeSummary {
            modulus: self.units.modulus,
            constituents: self
                .constituents
                .iter()
                .map(DirichletCharacter::label)
                .collect(),
            dimension: self.dimension(),
        }
    }
}

pub fn abelian_character_bridge(modulus: u64, labels: &[&str]) -> Result<AbelianBridge> {
    let units = UnitsGroup::new(modulus)?;
    let mut constituents = Vec::new();
    let mut character = ClassFunction::zero(units.group.clone());
    for label in labels {
        let chi = DirichletCharacter::parse_label(label)?;
        character = character.add(&units.class_function(&chi)?);
        constituents.push(chi);
    }
    Ok(AbelianBridge {
        units,
        constituents,
        character,
    })
}

/// Compares Π_{𝔭 | p} χ(Frob_𝔭) over the primes of the fixed field of `h`
/// with χ(d)^{[G:H]}, multiplicatively over d = Π p^a. Each p has residue
/// degree f = order of p in G/H and g = [G:H]/f primes above it, with
/// Frob_𝔭 = p^f ∈ H.
pub fn artin_symbol_restriction_check(
    modulus: u64,
    h: &[u64],
    chi: &DirichletCharacter,
    d: i64,
) -> Result<bool> {
    let units = UnitsGroup::new(modulus)?;
    let d_abs = d.unsigned_abs();
    if d == 0 || gcd(d_abs, modulus) != 1 {
        return Err(Error::NotCoprime {
            exponent: d,
            modulus,
        });
    }
    let elements: Vec<usize> = h
        .iter()
        .map(|&x| {
            units
                .index_of(x as i64)
                .ok_or_else(|| Error::InvalidGroup(format!("{x} is not a unit mod {modulus}")))
        })
        .collect::<Result<_>>()?;
    let sub = units.group.subgroup(&elements)?;
    let index = (units.units.len() / sub.order()) as u64;
    let value = |a: u64| -> RootOfUnity { chi.value(a as i64).expect("coprime") };
    let power = |r: RootOfUnity, e: u64| RootOfUnity::new((r.k * e) as i64, r.n);
    let mut lhs = RootOfUnity::new(0, 1);
    for (p, a) in factor(d_abs) {
        let mut f = 1u64;
        let mut pf = p % modulus;
        while !sub.contains(units.index_of(pf as i64).expect("unit")) {
            pf = pf * p % modulus;
            f += 1;
        }
        let g = index / f;
        lhs = lhs.mul(power(power(value(pf), g), a as u64));
    }
    if d < 0 {
        lhs = lhs.mul(power(value(modulo(-1, modulus)), index));
    }
    let rhs = power(value(modulo(d, modulus)), index);
    Ok(lhs == rhs)
}

/// Σ_j χ_j(a), or None when a is not a unit.
pub fn bridge_value(bridge: &AbelianBridge, a: i64) -> Option<CycNumber> {
    let i = bridge.units.index_of(a)?;
    Some(bridge.character.at(i).clone())
}
