//! Direct-product decomposability, the brute-force strong-indecomposability
//! oracle, and the arithmetic classifier it is checked against.
//!
//! A finite group has only indecomposable subgroups exactly when it is
//! trivial, cyclic of prime-power order, generalized quaternion, or a
//! semidirect product `Z/p^α ⋊ Z/q^β` (`p` odd) whose action is faithful with
//! `q^β | p − 1`. [`classify`] decides membership from element orders and a
//! single conjugation without touching the subgroup lattice;
//! [`decomposable_subgroup`] decides the same question by examining every
//! subgroup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, multiplicative_order, pow_mod, prime_power};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::mask::Mask;

/// An internal direct product decomposition `H = N₁ × N₂` of a subgroup `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub subgroup: Mask,
    pub left: Mask,
    pub right: Mask,
}

impl Decomposition {
    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    pub fn factor_orders(&self) -> (usize, usize) {
        (self.left.len(), self.right.len())
    }

    /// Re-checks the decomposition from scratch against `g`'s table: both
    /// factors are nontrivial subgroups, normal in `subgroup`, meeting
    /// trivially, whose element-wise product is exactly `subgroup`.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let in_range = |m: &Mask| m.last().is_none_or(|x| x < g.order());
        let closed =
            |m: &Mask| m.contains(0) && m.iter().all(|a| m.iter().all(|b| m.contains(g.mul(a, b))));
        let normal_in =
            |n: &Mask, h: &Mask| h.iter().all(|x| n.iter().all(|y| n.contains(g.conj(x, y))));
        if ![self.subgroup, self.left, self.right]
            .iter()
            .all(|m| in_range(m) && closed(m))
        {
            return false;
        }
        if self.left.len() < 2 || self.right.len() < 2 {
            return false;
        }
        if !normal_in(&self.left, &self.subgroup) || !normal_in(&self.right, &self.subgroup) {
            return false;
        }
        if self.left.intersection(&self.right) != Mask::identity() {
            return false;
        }
        let product: Mask = self
            .left
            .iter()
            .flat_map(|a| self.right.iter().map(move |b| g.mul(a, b)))
            .collect();
        product == self.subgroup
    }
}

/// Finds `N₁, N₂ ⊴ H`, both nontrivial, with `N₁ ∩ N₂ = 1` and
/// `|N₁|·|N₂| = |H|`. The pair is the first in `(size, mask)` order, with
/// `N₁` before `N₂`.
pub fn is_decomposable<'g>(h: &Subgroup<'g>) -> Option<(Subgroup<'g>, Subgroup<'g>)> {
    let g = h.parent();
    decompose_mask(g, &h.mask())
        .map(|d| (g.subgroup_unchecked(d.left), g.subgroup_unchecked(d.right)))
}

fn decompose_mask(g: &FiniteGroup, h: &Mask) -> Option<Decomposition> {
    let size = h.len();
    if size < 4 {
        return None;
    }
    let hgens = g.generating_sequence(h);
    let lat = g.lattice();
    // nontrivial proper subgroups of H that are normal in H, in (size, mask) order
    let normals: Vec<Mask> = lat
        .masks()
        .iter()
        .filter(|m| {
            let s = m.len();
            s > 1 && s < size && size.is_multiple_of(s) && m.is_subset(h)
        })
        .filter(|m| {
            hgens
                .iter()
                .all(|&x| m.iter().all(|y| m.contains(g.conj(x, y))))
        })
        .copied()
        .collect();
    for (i, a) in normals.iter().enumerate() {
        let want = size / a.len();
        if want < a.len() {
            break;
        }
        for b in &normals[i + 1..] {
            if b.len() == want && a.intersection(b) == Mask::identity() {
                return Some(Decomposition {
                    subgroup: *h,
                    left: *a,
                    right: *b,
                });
            }
        }
    }
    None
}

/// The smallest subgroup of `g` (in `(size, mask)` order) that splits as a
/// direct product, or `None` when every subgroup is indecomposable.
pub fn decomposable_subgroup(g: &FiniteGroup) -> Option<Decomposition> {
    g.lattice()
        .masks()
        .iter()
        .find_map(|h| decompose_mask(g, h))
}

/// Brute force over the whole subgroup lattice.
pub fn is_strongly_indecomposable(g: &FiniteGroup) -> bool {
    decomposable_subgroup(g).is_none()
}

/// Which clause of the metacyclic criterion failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionFailure {
    /// `q^β` does not divide `p − 1`.
    NotDividing { q_power: u64, p_minus_one: u64 },
    /// `r` does not have multiplicative order `q^β` modulo `p`.
    WrongOrder { order: Option<u64>, expected: u64 },
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionFailure::NotDividing {
                q_power,
                p_minus_one,
            } => write!(f, "q^beta = {q_power} does not divide p-1 = {p_minus_one}"),
            ConditionFailure::WrongOrder {
                order: Some(o),
                expected,
            } => write!(f, "r has order {o} mod p, expected {expected}"),
            ConditionFailure::WrongOrder {
                order: None,
                expected,
            } => write!(f, "r is not a unit mod p (expected order {expected})"),
        }
    }
}

/// Outcome of [`check_metacyclic_condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    /// Multiplicative order of `r` modulo `p`.
    pub order_mod_p: Option<u64>,
    /// Multiplicative order of `r` modulo `p^α`.
    pub order_mod_p_alpha: Option<u64>,
    pub failure: Option<ConditionFailure>,
}

impl ConditionCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// `q^β | p − 1` and `r` has order `q^β` in `(Z/p)^×`.
pub fn check_metacyclic_condition(
    p: u64,
    alpha: u32,
    q: u64,
    beta: u32,
    r: u64,
) -> Result<ConditionCheck> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidArgument(format!(
            "p = {p} must be an odd prime"
        )));
    }
    if !is_prime(q) || q == p {
        return Err(Error::InvalidArgument(format!(
            "q = {q} must be a prime different from p"
        )));
    }
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidArgument(
            "alpha and beta must be at least 1".into(),
        ));
    }
    let pa = p
        .checked_pow(alpha)
        .ok_or_else(|| Error::InvalidArgument("p^alpha overflows".into()))?;
    let qb = q
        .checked_pow(beta)
        .ok_or_else(|| Error::InvalidArgument("q^beta overflows".into()))?;
    if r == 0 || r >= pa {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must satisfy 0 < r < {pa}"
        )));
    }
    let order_mod_p = multiplicative_order(r, p);
    let order_mod_p_alpha = multiplicative_order(r, pa);
    let failure = if !(p - 1).is_multiple_of(qb) {
        Some(ConditionFailure::NotDividing {
            q_power: qb,
            p_minus_one: p - 1,
        })
    } else if order_mod_p != Some(qb) {
        Some(ConditionFailure::WrongOrder {
            order: order_mod_p,
            expected: qb,
        })
    } else {
        None
    };
    Ok(ConditionCheck {
        order_mod_p,
        order_mod_p_alpha,
        failure,
    })
}

/// Order `2^n` with `n >= 3`, exactly one involution, and not cyclic.
pub fn is_generalized_quaternion(g: &FiniteGroup) -> bool {
    match prime_power(g.order() as u64) {
        Some((2, n)) if n >= 3 => g.involution_count() == 1 && !g.is_cyclic(),
        _ => false,
    }
}

/// The classifier's verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ClassLabel {
    /// The trivial group.
    Trivial,
    /// `Z/p^n`, `n >= 1`.
    CyclicPrimePower { p: u64, n: u32 },
    /// Generalized quaternion of order `2^n`, `n >= 3`.
    GeneralizedQuaternion { n: u32 },
    /// `Z/p^α ⋊ Z/q^β` with faithful action `x ↦ x^r`, `q^β | p − 1`.
    MetacyclicPq {
        p: u64,
        alpha: u32,
        q: u64,
        beta: u32,
        r: u64,
    },
    /// Some subgroup decomposes. `witness` is `None` only if no decomposable
    /// subgroup could actually be found, i.e. the classifier and the oracle
    /// disagree.
    NotStronglyIndecomposable { witness: Option<Decomposition> },
}

impl ClassLabel {
    pub fn is_strongly_indecomposable(&self) -> bool {
        !matches!(self, ClassLabel::NotStronglyIndecomposable { .. })
    }

    /// Short variant name.
    pub fn kind(&self) -> &'static str {
        match self {
            ClassLabel::Trivial => "Trivial",
            ClassLabel::CyclicPrimePower { .. } => "CyclicPrimePower",
            ClassLabel::GeneralizedQuaternion { .. } => "GeneralizedQuaternion",
            ClassLabel::MetacyclicPq { .. } => "MetacyclicPQ",
            ClassLabel::NotStronglyIndecomposable { .. } => "NotStronglyIndecomposable",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Trivial => write!(f, "Trivial"),
            ClassLabel::CyclicPrimePower { p, n } => write!(f, "CyclicPrimePower({p},{n})"),
            ClassLabel::GeneralizedQuaternion { n } => write!(f, "GeneralizedQuaternion({n})"),
            ClassLabel::MetacyclicPq {
                p,
                alpha,
                q,
                beta,
                r,
            } => write!(f, "MetacyclicPQ({p},{alpha},{q},{beta},{r})"),
            ClassLabel::NotStronglyIndecomposable { witness: Some(w) } => {
                let (a, b) = w.factor_orders();
                write!(
                    f,
                    "NotStronglyIndecomposable(witness order {} = {a} x {b})",
                    w.order()
                )
            }
            ClassLabel::NotStronglyIndecomposable { witness: None } => {
                write!(f, "NotStronglyIndecomposable(no witness found)")
            }
        }
    }
}

/// Classifies `g` by the arithmetic characterization. Only the negative case
/// consults the subgroup lattice, to produce a witness: `g` itself when it
/// splits, otherwise the smallest decomposable subgroup.
pub fn classify(g: &FiniteGroup) -> ClassLabel {
    if let Some(label) = classify_positive(g) {
        return label;
    }
    let witness = decompose_mask(g, &Mask::full(g.order())).or_else(|| decomposable_subgroup(g));
    ClassLabel::NotStronglyIndecomposable { witness }
}

fn classify_positive(g: &FiniteGroup) -> Option<ClassLabel> {
    let n = g.order() as u64;
    if n == 1 {
        return Some(ClassLabel::Trivial);
    }
    if let Some((p, k)) = prime_power(n) {
        if g.is_cyclic() {
            return Some(ClassLabel::CyclicPrimePower { p, n: k });
        }
        if is_generalized_quaternion(g) {
            return Some(ClassLabel::GeneralizedQuaternion { n: k });
        }
        return None;
    }
    let primes = factorize(n);
    let [(p1, e1), (p2, e2)] = primes.as_slice() else {
        return None;
    };
    [(*p1, *e1, *p2, *e2), (*p2, *e2, *p1, *e1)]
        .into_iter()
        .filter(|&(p, ..)| p != 2)
        .find_map(|(p, alpha, q, beta)| metacyclic_label(g, p, alpha, q, beta))
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

// The semidirect-product case: unique cyclic Sylow p, cyclic Sylow q, and a
// faithful action with the right divisibility.
fn metacyclic_label(g: &FiniteGroup, p: u64, alpha: u32, q: u64, beta: u32) -> Option<ClassLabel> {
    let pa = p.pow(alpha) as usize;
    let qb = q.pow(beta) as usize;
    // A Sylow p-subgroup is unique iff the p-elements number exactly p^α.
    let p_elements = g
        .elements()
        .filter(|&x| is_power_of(g.order_of(x), p as usize))
        .count();
    if p_elements != pa {
        return None;
    }
    let a = g.elements().find(|&x| g.order_of(x) == pa)?;
    let b = g.elements().find(|&x| g.order_of(x) == qb)?;
    let conj = g.mul(g.mul(g.inv(b), a), b);
    let mut r = None;
    let mut x = 0;
    for k in 0..pa {
        if x == conj {
            r = Some(k as u64);
            break;
        }
        x = g.mul(x, a);
    }
    let r = r?;
    // Generators b^k of the complement give exponents r^k; take the least.
    let r = (1..qb as u64)
        .filter(|k| k % q != 0)
        .map(|k| pow_mod(r, k, pa as u64))
        .min()
        .unwrap_or(r);
    let check = check_metacyclic_condition(p, alpha, q, beta, r).ok()?;
    check.holds().then_some(ClassLabel::MetacyclicPq {
        p,
        alpha,
        q,
        beta,
        r,
    })
}
