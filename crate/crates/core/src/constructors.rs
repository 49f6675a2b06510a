//! Cayley-table constructors for the group families used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, pow_mod};
use crate::error::{Error, MetacyclicCondition, Result};
use crate::group::FiniteGroup;
use crate::MAX_ORDER;

/// Parameters of `⟨a, b | a^m = 1 = b^n, b⁻¹ab = a^r⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetacyclicParams {
    pub m: u64,
    pub n: u64,
    pub r: u64,
}

impl MetacyclicParams {
    pub fn new(m: u64, n: u64, r: u64) -> Self {
        MetacyclicParams { m, n, r }
    }

    /// The first side condition of the presentation that fails, if any.
    pub fn violation(&self) -> Option<MetacyclicCondition> {
        let MetacyclicParams { m, n, r } = *self;
        if m == 0 || n == 0 {
            return Some(MetacyclicCondition::Positive);
        }
        if r >= m {
            return Some(MetacyclicCondition::ExponentRange);
        }
        if m % 2 == 0 {
            return Some(MetacyclicCondition::OddModulus);
        }
        if pow_mod(r, n, m) != 1 % m {
            return Some(MetacyclicCondition::RootOfUnity);
        }
        // n·(r − 1) is taken up to sign; gcd(m, 0) = m.
        let r_minus_1 = (r as i64 - 1).unsigned_abs();
        if gcd(m, n * r_minus_1) != 1 {
            return Some(MetacyclicCondition::Coprime);
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some(condition) => Err(Error::Metacyclic {
                m: self.m,
                n: self.n,
                r: self.r,
                condition,
            }),
        }
    }
}

/// Parameters of `Z/p^α ⋊ Z/q^β` where a generator of the second factor acts
/// by `x ↦ x^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectPQParams {
    pub p: u64,
    pub alpha: u32,
    pub q: u64,
    pub beta: u32,
    pub r: u64,
}

impl SemidirectPQParams {
    pub fn new(p: u64, alpha: u32, q: u64, beta: u32, r: u64) -> Self {
        SemidirectPQParams {
            p,
            alpha,
            q,
            beta,
            r,
        }
    }

    pub fn normal_order(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    pub fn complement_order(&self) -> u64 {
        self.q.pow(self.beta)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let SemidirectPQParams {
            p,
            alpha,
            q,
            beta,
            r,
        } = *self;
        if !is_prime(p) || p == 2 {
            return bad(format!("p = {p} must be an odd prime"));
        }
        if !is_prime(q) {
            return bad(format!("q = {q} must be prime"));
        }
        if p == q {
            return bad(format!("p and q must differ (both {p})"));
        }
        if alpha == 0 || beta == 0 {
            return bad("alpha and beta must be at least 1".into());
        }
        let (pa, qb) = (
            p.checked_pow(alpha).unwrap_or(u64::MAX),
            q.checked_pow(beta).unwrap_or(u64::MAX),
        );
        if pa.saturating_mul(qb) > MAX_ORDER as u64 {
            return Err(Error::OrderTooLarge {
                order: pa.saturating_mul(qb).min(usize::MAX as u64) as usize,
                cap: MAX_ORDER,
            });
        }
        if r == 0 || r >= pa {
            return bad(format!("r = {r} must satisfy 0 < r < {pa}"));
        }
        if pow_mod(r, qb, pa) != 1 {
            return bad(format!(
                "r^{qb} = {} mod {pa}, expected 1",
                pow_mod(r, qb, pa)
            ));
        }
        Ok(())
    }
}

fn check_order(order: u64) -> Result<usize> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "group order must be positive".into(),
        ));
    }
    if order > MAX_ORDER as u64 {
        return Err(Error::OrderTooLarge {
            order: order.min(usize::MAX as u64) as usize,
            cap: MAX_ORDER,
        });
    }
    Ok(order as usize)
}

fn power_name(sym: &str, k: u64) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn word_name(parts: &[(&str, u64)]) -> String {
    let s: String = parts.iter().map(|&(sym, k)| power_name(sym, k)).collect();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// `Z/n`.
pub fn cyclic(n: u64) -> Result<FiniteGroup> {
    let n = check_order(n)?;
    let g = FiniteGroup::from_fn(n, |a, b| (a + b) % n)?;
    let hint = if n > 1 { vec![1] } else { vec![] };
    Ok(g.with_generator_hint(hint)
        .with_names((0..n).map(|i| i.to_string()).collect()))
}

/// The generalized quaternion group of order `2^n`, elements `x^i y^j` stored
/// at index `i + j·2^(n−1)`.
pub fn generalized_quaternion(n: u32) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "generalized quaternion groups need n >= 3, got {n}"
        )));
    }
    let order = check_order(1u64.checked_shl(n).unwrap_or(u64::MAX))?;
    let half = order / 2; // order of x
    let quarter = half / 2; // y^2 = x^quarter
    let mul = |a: usize, b: usize| {
        let (i, j) = (a % half, a / half);
        let (k, l) = (b % half, b / half);
        // y x^k = x^-k y
        let mut e = if j == 0 { i + k } else { i + half - k };
        let mut y = j + l;
        if y == 2 {
            e += quarter;
            y = 0;
        }
        (e % half) + y * half
    };
    let g = FiniteGroup::from_fn(order, mul)?;
    let names = (0..order)
        .map(|a| word_name(&[("x", (a % half) as u64), ("y", (a / half) as u64)]))
        .collect();
    Ok(g.with_names(names).with_generator_hint(vec![1, half]))
}

// Elements a^i b^j at index i + j·m, with b⁻¹ a b = a^r, i.e. b^j a^k = a^(k·r^(−j)) b^j.
// `r` must be a unit mod m with r^n ≡ 1.
fn metacyclic_table(m: u64, n: u64, r: u64) -> Result<FiniteGroup> {
    let order = check_order(m.saturating_mul(n))?;
    let (m, n) = (m as usize, n as usize);
    let r_inv = if m == 1 {
        0
    } else {
        pow_mod(r, n as u64 - 1, m as u64) as usize
    };
    let twist: Vec<usize> = (0..n)
        .map(|j| pow_mod(r_inv as u64, j as u64, m as u64) as usize)
        .collect();
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        (i + k * twist[j]) % m + ((j + l) % n) * m
    };
    let g = FiniteGroup::from_fn(order, mul)?;
    let names = (0..order)
        .map(|x| word_name(&[("a", (x % m) as u64), ("b", (x / m) as u64)]))
        .collect();
    let mut hint = Vec::new();
    if m > 1 {
        hint.push(1);
    }
    if n > 1 && order > 1 {
        hint.push(m);
    }
    Ok(g.with_names(names).with_generator_hint(hint))
}

/// `⟨a, b | a^m = 1 = b^n, b⁻¹ab = a^r⟩`, rejecting parameters that violate
/// any side condition of the presentation.
pub fn metacyclic(params: MetacyclicParams) -> Result<FiniteGroup> {
    params.validate()?;
    metacyclic_table(params.m, params.n, params.r)
}

/// `Z/p^α ⋊ Z/q^β`. Only the group axioms are enforced here; whether the
/// action is faithful is left to the classifier.
pub fn semidirect_pq(params: SemidirectPQParams) -> Result<FiniteGroup> {
    params.validate()?;
    metacyclic_table(params.normal_order(), params.complement_order(), params.r)
}

/// `G × H`, with `(g, h)` stored at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let order = check_order(g.order() as u64 * h.order() as u64)?;
    let hn = h.order();
    let prod = FiniteGroup::from_fn(order, |x, y| {
        g.mul(x / hn, y / hn) * hn + h.mul(x % hn, y % hn)
    })?;
    let names = (0..order)
        .map(|x| format!("({},{})", g.element_name(x / hn), h.element_name(x % hn)))
        .collect();
    let mut hint: Vec<usize> = g.generators().iter().map(|&a| a * hn).collect();
    hint.extend(h.generators());
    Ok(prod.with_names(names).with_generator_hint(hint))
}

/// Lexicographic rank of every permutation of `0..n` in one-line notation.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// The symmetric group on `n` points. Permutations are listed in
/// lexicographic order of their one-line notation and composed as functions:
/// `(σ·π)(i) = σ(π(i))`.
pub fn symmetric(n: u32) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetric(n) needs n >= 1".into()));
    }
    let fact: u64 = (1..=n as u64).product();
    let order = check_order(fact)?;
    let perms = permutations(n as usize);
    debug_assert_eq!(perms.len(), order);
    let rank = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let mut table = vec![0usize; order * order];
    let mut buf = vec![0usize; n as usize];
    for (a, sigma) in perms.iter().enumerate() {
        for (b, pi) in perms.iter().enumerate() {
            for (slot, &x) in buf.iter_mut().zip(pi.iter()) {
                *slot = sigma[x];
            }
            table[a * order + b] = rank(&buf);
        }
    }
    let g = FiniteGroup::from_fn(order, |a, b| table[a * order + b])?;
    let names = perms
        .iter()
        .map(|p| {
            let body: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("[{}]", body.join(","))
        })
        .collect();
    Ok(g.with_names(names))
}

/// The dihedral group of order `2n`, elements `ρ^i σ^j` at index `i + j·n`.
pub fn dihedral(n: u64) -> Result<FiniteGroup> {
    let order = check_order(n.saturating_mul(2))?;
    let n = n as usize;
    let g = FiniteGroup::from_fn(order, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        let e = if j == 0 { i + k } else { i + n - k };
        e % n + ((j + l) % 2) * n
    })?;
    let names = (0..order)
        .map(|x| word_name(&[("r", (x % n) as u64), ("s", (x / n) as u64)]))
        .collect();
    let hint = if n > 1 { vec![1, n] } else { vec![n] };
    Ok(g.with_names(names).with_generator_hint(hint))
}

/// `Z/f1 × Z/f2 × ..` in mixed radix, first factor most significant.
pub fn abelian(factors: &[u64]) -> Result<FiniteGroup> {
    if factors.contains(&0) {
        return Err(Error::InvalidArgument(
            "abelian factors must be positive".into(),
        ));
    }
    let order = factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .unwrap_or(u64::MAX);
    let order = check_order(order)?;
    let radix: Vec<usize> = factors.iter().map(|&f| f as usize).collect();
    let digits = |mut x: usize| {
        let mut d = vec![0usize; radix.len()];
        for (slot, &f) in d.iter_mut().zip(radix.iter()).rev() {
            *slot = x % f;
            x /= f;
        }
        d
    };
    let g = FiniteGroup::from_fn(order, |x, y| {
        let (dx, dy) = (digits(x), digits(y));
        dx.iter()
            .zip(dy.iter())
            .zip(radix.iter())
            .fold(0, |acc, ((a, b), &f)| acc * f + (a + b) % f)
    })?;
    let names = (0..order)
        .map(|x| {
            let d: Vec<String> = digits(x).iter().map(|v| v.to_string()).collect();
            format!("({})", d.join(","))
        })
        .collect();
    Ok(g.with_names(names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn order_profile(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = g.elements().map(|x| g.order_of(x)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(8).unwrap().order_of(1), 8);
        let mut orders = order_profile(&cyclic(6).unwrap());
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(cyclic(0).is_err());
        assert!(matches!(cyclic(513), Err(Error::OrderTooLarge { .. })));
        assert!(cyclic(512).is_ok());
    }

    #[test]
    fn quaternion_presentation_holds() {
        for n in 3..=9u32 {
            let q = generalized_quaternion(n).unwrap();
            assert_eq!(q.order(), 1 << n);
            let half = q.order() / 2;
            let (x, y) = (1, half);
            assert_eq!(q.order_of(x), half);
            // y^2 = x^(2^(n-2))
            assert_eq!(q.mul(y, y), q.power(x, (half / 2) as i64));
            // y^-1 x y = x^-1
            assert_eq!(q.mul(q.mul(q.inv(y), x), y), q.inv(x));
            assert_eq!(q.involution_count(), 1, "Q_{n}");
            assert!(q.generated_subgroup(&[x, y]).unwrap().is_whole());
        }
        assert_eq!(generalized_quaternion(3).unwrap().center().size(), 2);
        assert!(generalized_quaternion(2).is_err());
        assert!(matches!(
            generalized_quaternion(10),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn quaternion_16_has_one_involution() {
        // brute-force count, not via involution_count
        let q = generalized_quaternion(4).unwrap();
        let inv = q.elements().filter(|&g| g != 0 && q.mul(g, g) == 0).count();
        assert_eq!(inv, 1);
    }

    #[test]
    fn metacyclic_examples() {
        let g = metacyclic(MetacyclicParams::new(3, 2, 2)).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());

        let err = metacyclic(MetacyclicParams::new(7, 3, 1)).unwrap_err();
        assert!(matches!(
            err,
            Error::Metacyclic {
                condition: MetacyclicCondition::Coprime,
                ..
            }
        ));
        assert!(err.to_string().contains("gcd"));

        let g = metacyclic(MetacyclicParams::new(15, 4, 2)).unwrap();
        assert_eq!(g.order(), 60);

        let cond = |m, n, r| MetacyclicParams::new(m, n, r).violation();
        assert_eq!(cond(9, 2, 9), Some(MetacyclicCondition::ExponentRange));
        assert_eq!(cond(4, 2, 3), Some(MetacyclicCondition::OddModulus));
        assert_eq!(cond(7, 2, 2), Some(MetacyclicCondition::RootOfUnity));
        assert_eq!(cond(0, 2, 0), Some(MetacyclicCondition::Positive));
        assert_eq!(cond(1, 5, 0), None);
    }

    #[test]
    fn metacyclic_relation_holds() {
        let p = MetacyclicParams::new(7, 3, 2);
        let g = metacyclic(p).unwrap();
        let (a, b) = (1, 7);
        assert_eq!(g.order_of(a), 7);
        assert_eq!(g.order_of(b), 3);
        assert_eq!(g.mul(g.mul(g.inv(b), a), b), g.power(a, 2));
    }

    #[test]
    fn semidirect_examples() {
        let g = semidirect_pq(SemidirectPQParams::new(5, 1, 2, 2, 2)).unwrap();
        assert_eq!(g.order(), 20);
        let g = semidirect_pq(SemidirectPQParams::new(7, 1, 3, 1, 2)).unwrap();
        assert_eq!(g.order(), 21);
        // r = 4 has order 2 mod 5, so b^2 acts trivially: kernel of size 2
        let g = semidirect_pq(SemidirectPQParams::new(5, 1, 2, 2, 4)).unwrap();
        let (a, b) = (1, 5);
        let kernel: Vec<usize> = (0..4)
            .map(|j| g.power(b, j))
            .filter(|&bj| g.commute(bj, a))
            .collect();
        assert_eq!(kernel.len(), 2);
        // r = 1 is allowed and gives a direct product
        assert!(semidirect_pq(SemidirectPQParams::new(5, 1, 2, 1, 1))
            .unwrap()
            .is_abelian());

        for bad in [
            SemidirectPQParams::new(9, 1, 2, 1, 8),
            SemidirectPQParams::new(2, 1, 3, 1, 1),
            SemidirectPQParams::new(5, 1, 5, 1, 1),
            SemidirectPQParams::new(5, 1, 4, 1, 1),
            SemidirectPQParams::new(5, 1, 2, 1, 2),
            SemidirectPQParams::new(5, 1, 2, 1, 0),
        ] {
            assert!(semidirect_pq(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(
            semidirect_pq(SemidirectPQParams::new(17, 1, 2, 5, 16)),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn direct_product_examples() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(g.is_cyclic());
        let k = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(k.involution_count(), 3);
        let s3 = symmetric(3).unwrap();
        let t = direct_product(&s3, &cyclic(1).unwrap()).unwrap();
        assert_eq!(t.table(), s3.table());
        let big = cyclic(32).unwrap();
        assert!(direct_product(&big, &big).is_err());
    }

    #[test]
    fn symmetric_dihedral_abelian() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.element_name(0), "[0,1,2]");
        assert_eq!(s3.element_name(5), "[2,1,0]");
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert!(matches!(symmetric(6), Err(Error::OrderTooLarge { .. })));

        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let reflections: Vec<usize> = d4.elements().filter(|&x| x >= 4).collect();
        // two commuting reflections generate a Klein four subgroup
        let (s, t) = (reflections[0], reflections[2]);
        assert!(d4.commute(s, t));
        let v = d4.generated_subgroup(&[s, t]).unwrap();
        assert_eq!(v.size(), 4);
        assert!(!v.is_cyclic());
        assert_eq!(d4.involution_count(), 5);

        let a = abelian(&[4, 2]).unwrap();
        assert_eq!(a.order(), 8);
        assert!(a.is_abelian());
        assert!(!a.is_cyclic());
        assert!(abelian(&[]).unwrap().order() == 1);
    }

    proptest! {
        #[test]
        fn metacyclic_order_is_mn(m in 1u64..40, n in 1u64..13, r in 0u64..40) {
            let p = MetacyclicParams::new(m, n, r);
            match metacyclic(p) {
                Ok(g) => {
                    prop_assert!(p.violation().is_none());
                    prop_assert_eq!(g.order() as u64, m * n);
                }
                Err(Error::Metacyclic { .. }) => prop_assert!(p.violation().is_some()),
                Err(Error::OrderTooLarge { .. }) => prop_assert!(m * n > 512),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn dihedral_and_abelian_are_groups(n in 1u64..40, f in proptest::collection::vec(1u64..6, 0..4)) {
            prop_assert_eq!(dihedral(n).unwrap().order() as u64, 2 * n);
            let g = abelian(&f).unwrap();
            prop_assert_eq!(g.order() as u64, f.iter().product::<u64>());
            prop_assert!(g.is_abelian());
        }
    }
}
