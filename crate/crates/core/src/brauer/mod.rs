//! Character theory of small finite groups: class functions, induction
//! from degree-one characters, integral Brauer decompositions, and the
//! abelian case (Z/N)^*.

mod abelian;
mod classfn;
mod decompose;
mod group;
mod hnf;

pub use abelian::{
    abelian_character_bridge, artin_symbol_restriction_check, bridge_value, AbelianBridge,
    AbelianBridgeSummary, UnitsGroup,
};
pub use classfn::{
    induce, irreducible_characters, linear_characters, ClassFunction, LinearCharacter,
};
pub use decompose::{
    brauer_decompose, dimension_identity_check, BrauerDecomposition, BrauerTerm, BrauerTermSummary,
};
pub use group::{examples, parse_cycles, parse_group, FiniteGroup, Subgroup};
pub use hnf::solve_integer;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num::BigRational;

    use super::examples::*;
    use super::*;
    use crate::cyclotomic::CycNumber;

    /// ⟨ψ, Res χ⟩_H computed directly on the subgroup elements.
    fn inner_on_subgroup(psi: &[CycNumber], res: &[CycNumber]) -> CycNumber {
        let mut acc = CycNumber::zero(1);
        for (a, b) in psi.iter().zip(res) {
            acc = acc.add(&a.mul(&b.conjugate()));
        }
        acc.scale(&BigRational::new(1.into(), psi.len().into()))
    }

    #[test]
    fn frobenius_reciprocity() {
        for grp in [s3(), d4(), q8(), cyclic(12)] {
            let g = Arc::new(grp);
            let irr = irreducible_characters(&g).unwrap();
            for h in g.subgroups() {
                for psi in linear_characters(&g, h) {
                    let psi = psi.to_cyc();
                    let ind = induce(&g, h, &psi).unwrap();
                    for chi in &irr {
                        assert_eq!(
                            ind.inner_product(chi),
                            inner_on_subgroup(&psi, &chi.restrict(h))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn induction_from_whole_group_is_identity() {
        let g = Arc::new(d4());
        let whole = g.whole();
        for psi in linear_characters(&g, &whole) {
            let values = psi.to_cyc();
            let ind = induce(&g, &whole, &values).unwrap();
            for (c, class) in g.conjugacy_classes().iter().enumerate() {
                assert_eq!(ind.values()[c], values[whole.position(class[0]).unwrap()]);
            }
        }
    }
}
