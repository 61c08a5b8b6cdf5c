use std::sync::Arc;

use num::{BigInt, One, Zero};
use serde::Serialize;

use super::classfn::{induce, linear_characters, ClassFunction, LinearCharacter};
use super::group::FiniteGroup;
use super::hnf::solve_integer;
use crate::arith::lcm;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct BrauerTerm {
    /// Index into `FiniteGroup::subgroups`.
    pub subgroup: usize,
    pub character: LinearCharacter,
    pub coefficient: BigInt,
}

#[derive(Clone, Debug)]
pub struct BrauerDecomposition {
    pub terms: Vec<BrauerTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerTermSummary {
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub index: usize,
    /// Values on the subgroup elements as k/n meaning ζ_n^k.
    pub character: Vec<String>,
    pub coefficient: String,
}

impl BrauerDecomposition {
    /// Σ n_i · Ind_{H_i}^G(ψ_i).
    pub fn reconstruct(&self, group: &Arc<FiniteGroup>) -> Result<ClassFunction> {
        let mut acc = ClassFunction::zero(group.clone());
        for t in &self.terms {
            let h = &group.subgroups()[t.subgroup];
            let ind = induce(group, h, &t.character.to_cyc())?;
            acc = acc.add(&ind.scale(&t.coefficient));
        }
        Ok(acc)
    }

    /// Σ n_i [G : H_i].
    pub fn dimension(&self, group: &FiniteGroup) -> BigInt {
        self.terms
            .iter()
            .map(|t| &t.coefficient * (group.order() / group.subgroups()[t.subgroup].order()))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn summary(&self, group: &FiniteGroup) -> Vec<BrauerTermSummary> {
        self.terms
            .iter()
            .map(|t| {
                let h = &group.subgroups()[t.subgroup];
                BrauerTermSummary {
                    subgroup: t.subgroup,
                    subgroup_order: h.order(),
                    index: group.order() / h.order(),
                    character: t
                        .character
                        .values
                        .iter()
                        .map(|v| format!("{}/{}", v.k, v.n))
                        .collect(),
                    coefficient: t.coefficient.to_string(),
                }
            })
            .collect()
    }
}

/// Checks the dimension identity Σ n_i [G : H_i] = χ(1).
pub fn dimension_identity_check(
    group: &FiniteGroup,
    decomposition: &BrauerDecomposition,
    target: &ClassFunction,
) -> bool {
    CycNumber::from_rational(
        1,
        num::BigRational::from_integer(decomposition.dimension(group)),
    ) == *target.degree()
}

/// Writes `target` as an integer combination of characters induced from
/// degree-one characters of subgroups. Columns are ordered by subgroup
/// order descending, then by enumeration; duplicates keep their first
/// occurrence. A single matching column is preferred.
pub fn brauer_decompose(target: &ClassFunction) -> Result<BrauerDecomposition> {
    let group = target.group();
    let mut columns: Vec<(usize, LinearCharacter, ClassFunction)> = Vec::new();
    for (idx, h) in group.subgroups().iter().enumerate() {
        for psi in linear_characters(group, h) {
            let ind = induce(group, h, &psi.to_cyc())?;
            if columns.iter().all(|(_, _, c)| c.values() != ind.values()) {
                columns.push((idx, psi, ind));
            }
        }
    }
    if let Some((idx, psi, _)) = columns
        .iter()
        .find(|(_, _, c)| c.values() == target.values())
    {
        return Ok(BrauerDecomposition {
            terms: vec![BrauerTerm {
                subgroup: *idx,
                character: psi.clone(),
                coefficient: BigInt::one(),
            }],
        });
    }

    let level = target
        .values()
        .iter()
        .chain(columns.iter().flat_map(|(_, _, c)| c.values()))
        .fold(group.exponent(), |acc, v| lcm(acc, v.level()));
    let coords = |f: &ClassFunction| -> Option<Vec<BigInt>> {
        let mut out = Vec::new();
        for v in f.values() {
            let p = v.promote(level).ok()?;
            out.extend_from_slice(p.integer_coordinates()?);
        }
        Some(out)
    };
    let not_virtual =
        || Error::NotVirtualCharacter("no integer combination of induced characters".into());
    let b = coords(target).ok_or_else(not_virtual)?;
    let cols: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|(_, _, c)| coords(c).expect("induced characters are integral"))
        .collect();
    let x = solve_integer(&cols, &b).ok_or_else(not_virtual)?;
    let terms = columns
        .into_iter()
        .zip(x)
        .filter(|(_, n)| !n.is_zero())
        .map(|((subgroup, character, _), coefficient)| BrauerTerm {
            subgroup,
            character,
            coefficient,
        })
        .collect();
    Ok(BrauerDecomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::super::classfn::irreducible_characters;
    use super::super::group::examples::*;
    use super::*;
    use crate::cyclotomic::rational;

    #[test]
    fn decomposes_every_irreducible() {
        for grp in [s3(), d4(), q8(), a4(), s4()] {
            let g = Arc::new(grp);
            for chi in irreducible_characters(&g).unwrap() {
                let dec = brauer_decompose(&chi).unwrap();
                assert_eq!(dec.reconstruct(&g).unwrap().values(), chi.values());
                assert!(dimension_identity_check(&g, &dec, &chi));
            }
        }
    }

    #[test]
    fn s3_examples() {
        let g = Arc::new(s3());
        let irr = irreducible_characters(&g).unwrap();
        let dec = brauer_decompose(&irr[1]).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!(dec.terms[0].subgroup, 0);

        let two = brauer_decompose(&irr[2]).unwrap();
        assert_eq!(two.terms.len(), 1);
        assert_eq!(g.subgroups()[two.terms[0].subgroup].order(), 3);

        let regular = irr[0].add(&irr[1]).add(&irr[2].scale(&BigInt::from(2)));
        let dec = brauer_decompose(&regular).unwrap();
        assert_eq!(dec.reconstruct(&g).unwrap().values(), regular.values());
        assert_eq!(dec.dimension(&g), BigInt::from(6));
    }

    #[test]
    fn virtual_characters_and_rejections() {
        let g = Arc::new(a4());
        let irr = irreducible_characters(&g).unwrap();
        let virt = irr[3].sub(&irr[1].scale(&BigInt::from(2)));
        let dec = brauer_decompose(&virt).unwrap();
        assert_eq!(dec.reconstruct(&g).unwrap().values(), virt.values());
        assert_eq!(dec.dimension(&g), BigInt::from(1));

        let half: Vec<CycNumber> = irr[0]
            .values()
            .iter()
            .map(|v| v.scale(&rational(1, 2)))
            .collect();
        let half = ClassFunction::new(g.clone(), half).unwrap();
        assert!(matches!(
            brauer_decompose(&half),
            Err(Error::NotVirtualCharacter(_))
        ));
    }
}
