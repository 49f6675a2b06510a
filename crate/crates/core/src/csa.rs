//! Malnormality and the CSA property on finite groups.
//!
//! A group is CSA when every maximal abelian subgroup `A` is malnormal:
//! `A ∩ gAg⁻¹ = 1` for every `g ∉ A`. Abelian groups are CSA vacuously, and no
//! finite non-abelian group is; [`is_csa`] produces a witness for the latter.

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, Subgroup};
use crate::mask::Mask;

/// A maximal abelian subgroup together with an element outside it whose
/// conjugate meets it nontrivially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsaWitness {
    pub subgroup: Mask,
    pub element: usize,
}

impl CsaWitness {
    /// Re-checks the witness directly against the table: `subgroup` is a
    /// closed abelian set with no abelian proper overgroup of the form
    /// `⟨A, x⟩`, `element` lies outside it, and the conjugate meets it in a
    /// nontrivial element.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let a = &self.subgroup;
        if a.last().is_some_and(|x| x >= g.order()) || self.element >= g.order() {
            return false;
        }
        let closed = a.contains(0) && a.iter().all(|x| a.iter().all(|y| a.contains(g.mul(x, y))));
        let abelian = a.iter().all(|x| a.iter().all(|y| g.commute(x, y)));
        // A is maximal abelian iff its centralizer lies inside A: any x
        // centralizing A would give the larger abelian group ⟨A, x⟩.
        let maximal = g
            .elements()
            .filter(|&x| a.iter().all(|y| g.commute(x, y)))
            .all(|x| a.contains(x));
        let outside = !a.contains(self.element);
        let meets = a
            .iter()
            .any(|y| y != 0 && a.contains(g.conj(self.element, y)));
        closed && abelian && maximal && outside && meets
    }
}

/// `Ok(())` when `A ∩ gAg⁻¹ = 1` for all `g ∉ A`, otherwise the smallest
/// violating `g`.
pub fn is_malnormal(a: &Subgroup<'_>) -> Result<(), usize> {
    let g = a.parent();
    let mask = a.mask();
    for x in g.elements() {
        if mask.contains(x) {
            continue;
        }
        let conj = a.conjugate_unchecked(x).mask();
        if conj.intersection(&mask) != Mask::identity() {
            return Err(x);
        }
    }
    Ok(())
}

pub fn is_csa(g: &FiniteGroup) -> Result<(), CsaWitness> {
    for a in g.maximal_abelian_subgroups() {
        if let Err(element) = is_malnormal(&a) {
            return Err(CsaWitness {
                subgroup: a.mask(),
                element,
            });
        }
    }
    Ok(())
}

/// Every nontrivial element has an abelian centralizer.
pub fn is_commutative_transitive(g: &FiniteGroup) -> bool {
    (1..g.order()).all(|x| g.centralizer(x).is_ok_and(|c| c.is_abelian()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn find(g: &FiniteGroup, name: &str) -> usize {
        g.elements().find(|&e| g.element_name(e) == name).unwrap()
    }

    #[test]
    fn malnormal_examples() {
        let s3 = symmetric(3).unwrap();
        assert!(is_malnormal(&s3.trivial()).is_ok());
        let c = find(&s3, "[1,2,0]");
        let a3 = s3.generated_subgroup(&[c]).unwrap();
        let w = is_malnormal(&a3).unwrap_err();
        assert_eq!(s3.order_of(w), 2);
        let t = find(&s3, "[1,0,2]");
        assert!(is_malnormal(&s3.generated_subgroup(&[t]).unwrap()).is_ok());
        // the whole group is malnormal vacuously
        assert!(is_malnormal(&s3.whole()).is_ok());
    }

    #[test]
    fn csa_examples() {
        for g in [
            cyclic(12).unwrap(),
            abelian(&[2, 2, 2]).unwrap(),
            cyclic(1).unwrap(),
        ] {
            assert!(is_csa(&g).is_ok());
        }
        let s3 = symmetric(3).unwrap();
        let w = is_csa(&s3).unwrap_err();
        assert_eq!(w.subgroup.len(), 3);
        assert_eq!(s3.order_of(w.element), 2);
        assert!(w.verify(&s3));

        let q = generalized_quaternion(3).unwrap();
        let w = is_csa(&q).unwrap_err();
        assert_eq!(w.subgroup.len(), 4);
        assert!(w.verify(&q));
    }

    #[test]
    fn witness_check_is_strict() {
        let s3 = symmetric(3).unwrap();
        let w = is_csa(&s3).unwrap_err();
        // element inside the subgroup
        assert!(!CsaWitness { element: 0, ..w }.verify(&s3));
        // not maximal abelian
        assert!(!CsaWitness {
            subgroup: Mask::identity(),
            ..w
        }
        .verify(&s3));
        // malnormal subgroup: conjugates meet trivially
        let t = find(&s3, "[1,0,2]");
        let h = s3.generated_subgroup(&[t]).unwrap().mask();
        let c = find(&s3, "[1,2,0]");
        assert!(!CsaWitness {
            subgroup: h,
            element: c
        }
        .verify(&s3));
    }

    #[test]
    fn commutative_transitivity_examples() {
        assert!(is_commutative_transitive(&abelian(&[3, 3]).unwrap()));
        assert!(is_commutative_transitive(&symmetric(3).unwrap()));
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(!is_commutative_transitive(&g));
        // centralizer of (e, 1) is everything
        assert!(g.centralizer(1).unwrap().is_whole());
    }
}
