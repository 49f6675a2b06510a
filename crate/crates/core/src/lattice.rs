//! Complete subgroup lattices and the subgroups derived from them.
//!
//! Enumeration is a layered closure: layer `k` holds the subgroups whose
//! canonical generating sequence (see [`FiniteGroup::generating_sequence`])
//! has length `k`, and a subgroup `H` is only extended by elements larger than
//! the last entry of its own canonical sequence. Because every prefix of a
//! canonical sequence is canonical for the subgroup it generates, this
//! reaches every subgroup; the hash set only absorbs subgroups reached along
//! more than one path.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::arith::{factorize, is_prime, p_part};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::mask::Mask;

/// All subgroups of a group, sorted by `(size, mask)`, with normality and
/// conjugacy-class annotations.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    masks: Vec<Mask>,
    sizes: Vec<usize>,
    normal: Vec<bool>,
    abelian: Vec<bool>,
    class_id: Vec<usize>,
    class_count: usize,
    position: HashMap<Mask, usize>,
}

/// Layered-closure enumeration of every subgroup mask (unsorted).
pub fn enumerate_subgroups(g: &FiniteGroup) -> Vec<Mask> {
    let n = g.order();
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut found = Vec::new();
    let mut frontier: Vec<(Mask, Vec<usize>)> = Vec::new();

    seen.insert(Mask::identity());
    found.push(Mask::identity());
    // layer 1: the cyclic subgroups
    for x in 1..n {
        let c = g.closure(&[x]);
        if seen.insert(c) {
            found.push(c);
            frontier.push((c, g.generating_sequence(&c)));
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &frontier {
            let start = gens.last().map_or(1, |&m| m + 1);
            let mut ext = gens.clone();
            ext.push(0);
            for x in start..n {
                if h.contains(x) {
                    continue;
                }
                *ext.last_mut().unwrap() = x;
                let k = g.extend_closure(*h, &ext);
                if seen.insert(k) {
                    found.push(k);
                    next.push((k, g.generating_sequence(&k)));
                }
            }
        }
        frontier = next;
    }
    found
}

impl SubgroupLattice {
    /// Enumerates and annotates the lattice, bypassing the per-group cache.
    pub fn compute(g: &FiniteGroup) -> Self {
        let mut masks = enumerate_subgroups(g);
        masks.sort_by_key(|m| (m.len(), *m));
        Self::annotate(g, masks)
    }

    fn annotate(g: &FiniteGroup, masks: Vec<Mask>) -> Self {
        let sizes: Vec<usize> = masks.iter().map(Mask::len).collect();
        let position: HashMap<Mask, usize> =
            masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let conjugate = |m: &Mask, x: usize| -> Mask { m.iter().map(|h| g.conj(x, h)).collect() };
        let gens = g.generators();

        let normal: Vec<bool> = masks
            .iter()
            .map(|m| gens.iter().all(|&x| conjugate(m, x) == *m))
            .collect();
        let abelian: Vec<bool> = masks
            .iter()
            .map(|m| {
                let s = g.generating_sequence(m);
                s.iter()
                    .enumerate()
                    .all(|(i, &a)| s[i + 1..].iter().all(|&b| g.commute(a, b)))
            })
            .collect();

        let mut class_id = vec![usize::MAX; masks.len()];
        let mut class_count = 0;
        for i in 0..masks.len() {
            if class_id[i] != usize::MAX {
                continue;
            }
            class_id[i] = class_count;
            let mut stack = vec![masks[i]];
            while let Some(m) = stack.pop() {
                for &x in gens {
                    let c = conjugate(&m, x);
                    let j = position[&c];
                    if class_id[j] == usize::MAX {
                        class_id[j] = class_count;
                        stack.push(c);
                    }
                }
            }
            class_count += 1;
        }

        SubgroupLattice {
            masks,
            sizes,
            normal,
            abelian,
            class_id,
            class_count,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn is_abelian(&self, i: usize) -> bool {
        self.abelian[i]
    }

    pub fn conjugacy_class_id(&self, i: usize) -> usize {
        self.class_id[i]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Index of `mask` in the sorted list, if it is a subgroup.
    pub fn position(&self, mask: &Mask) -> Option<usize> {
        self.position.get(mask).copied()
    }

    /// Number of subgroups of each order.
    pub fn count_by_order(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        for &s in &self.sizes {
            *out.entry(s).or_insert(0) += 1;
        }
        out
    }

    /// Hasse-diagram edges `(smaller, larger)` by index: `larger` covers
    /// `smaller` when no subgroup lies strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for k in 0..self.len() {
            let mut below: Vec<usize> = (0..k)
                .filter(|&h| {
                    self.sizes[h] < self.sizes[k] && self.masks[h].is_subset(&self.masks[k])
                })
                .collect();
            below.sort_by_key(|&h| std::cmp::Reverse(self.sizes[h]));
            let mut covers: Vec<usize> = Vec::new();
            for h in below {
                if !covers
                    .iter()
                    .any(|&c| self.masks[h].is_subset(&self.masks[c]))
                {
                    covers.push(h);
                }
            }
            covers.sort_unstable();
            edges.extend(covers.into_iter().map(|h| (h, k)));
        }
        edges
    }
}

impl FiniteGroup {
    /// The subgroup lattice, computed on first use and cached.
    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice_cell()
            .get_or_init(|| SubgroupLattice::compute(self))
    }

    pub fn all_subgroups(&self) -> Vec<Subgroup<'_>> {
        self.lattice()
            .masks()
            .iter()
            .map(|&m| Subgroup::from_closed(self, m))
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup<'_>> {
        let lat = self.lattice();
        (0..lat.len())
            .filter(|&i| lat.is_normal(i))
            .map(|i| Subgroup::from_closed(self, lat.masks()[i]))
            .collect()
    }

    /// All Sylow `p`-subgroups.
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup<'_>>> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let n = self.order() as u64;
        if !n.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!(
                "{p} does not divide the group order {n}"
            )));
        }
        let target = p_part(n, p) as usize;
        Ok(self
            .lattice()
            .masks()
            .iter()
            .filter(|m| m.len() == target)
            .map(|&m| Subgroup::from_closed(self, m))
            .collect())
    }

    /// `O_p(G)`, the intersection of all Sylow `p`-subgroups (trivial when
    /// `p` does not divide the order).
    pub fn p_core(&self, p: u64) -> Subgroup<'_> {
        match self.sylow_subgroups(p) {
            Ok(sylows) => sylows
                .iter()
                .fold(self.whole(), |acc, s| acc.intersection(s)),
            Err(_) => self.trivial(),
        }
    }

    /// The Fitting subgroup: the join of the `p`-cores.
    pub fn fitting_subgroup(&self) -> Subgroup<'_> {
        factorize(self.order() as u64)
            .into_iter()
            .fold(self.trivial(), |acc, (p, _)| acc.join(&self.p_core(p)))
    }

    /// Abelian subgroups not properly contained in another abelian subgroup.
    pub fn maximal_abelian_subgroups(&self) -> Vec<Subgroup<'_>> {
        let lat = self.lattice();
        let abelian: Vec<usize> = (0..lat.len()).filter(|&i| lat.is_abelian(i)).collect();
        abelian
            .iter()
            .filter(|&&i| {
                !abelian.iter().any(|&j| {
                    lat.size(j) > lat.size(i) && lat.masks()[i].is_subset(&lat.masks()[j])
                })
            })
            .map(|&i| Subgroup::from_closed(self, lat.masks()[i]))
            .collect()
    }
}

/// The lattice Hasse diagram in Graphviz DOT. Nodes are labelled by subgroup
/// order; normal subgroups are drawn as double circles.
pub fn to_dot(g: &FiniteGroup, name: &str) -> String {
    let lat = g.lattice();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(out, "  rankdir=BT;");
    for i in 0..lat.len() {
        let shape = if lat.is_normal(i) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", lat.size(i));
    }
    for (h, k) in lat.covers() {
        let _ = writeln!(out, "  n{h} -> n{k};");
    }
    out.push_str("}\n");
    out
}

/// A second, independent subgroup enumeration used to cross-check
/// [`enumerate_subgroups`].
pub mod cross_check {
    use super::*;

    /// Enumerates subgroups by deciding membership element by element in
    /// index order. Including an element closes the current subgroup; the
    /// branch dies if the closure pulls in an element that was already
    /// excluded. Each subgroup is produced exactly once, so no deduplication
    /// is involved.
    pub fn enumerate_by_backtracking(g: &FiniteGroup) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut gens = Vec::new();
        descend(g, Mask::identity(), &mut gens, 1, &mut out);
        out
    }

    fn descend(
        g: &FiniteGroup,
        mask: Mask,
        gens: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<Mask>,
    ) {
        for x in start..g.order() {
            if mask.contains(x) {
                continue;
            }
            gens.push(x);
            let k = g.extend_closure(mask, gens);
            // everything in [start, x) outside `mask` counts as excluded
            if k.difference(&mask).first() == Some(x) {
                descend(g, k, gens, x + 1, out);
            }
            gens.pop();
        }
        out.push(mask);
    }
}

#[cfg(test)]
mod tests {
    use super::cross_check::enumerate_by_backtracking;
    use super::*;
    use crate::constructors::*;

    fn sorted(mut v: Vec<Mask>) -> Vec<Mask> {
        v.sort_by_key(|m| (m.len(), *m));
        v
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for p in [2, 3, 5, 7, 31] {
            assert_eq!(cyclic(p).unwrap().lattice().len(), 2);
        }
        assert_eq!(cyclic(1).unwrap().lattice().len(), 1);
    }

    #[test]
    fn s4_has_30_subgroups_by_both_strategies() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(s4.lattice().len(), 30);
        assert_eq!(
            sorted(enumerate_by_backtracking(&s4)),
            s4.lattice().masks().to_vec()
        );
        assert_eq!(s4.lattice().class_count(), 11);
    }

    #[test]
    fn quaternion_8_lattice() {
        let q = generalized_quaternion(3).unwrap();
        let lat = q.lattice();
        let sizes: Vec<usize> = (0..lat.len()).map(|i| lat.size(i)).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(q.normal_subgroups().len(), 6);
        let ma = q.maximal_abelian_subgroups();
        assert_eq!(ma.len(), 3);
        assert!(ma.iter().all(|a| a.size() == 4 && a.is_cyclic()));
    }

    #[test]
    fn normal_subgroup_examples() {
        let a = abelian(&[2, 4]).unwrap();
        assert_eq!(a.normal_subgroups().len(), a.lattice().len());
        let s3 = symmetric(3).unwrap();
        let sizes: Vec<usize> = s3.normal_subgroups().iter().map(|s| s.size()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        assert_eq!(s3.lattice().len(), 6);
    }

    #[test]
    fn sylow_examples() {
        let c12 = cyclic(12).unwrap();
        let s = c12.sylow_subgroups(2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].size(), 4);
        let s4 = symmetric(4).unwrap();
        let s = s4.sylow_subgroups(2).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|x| x.size() == 8));
        let f21 = semidirect_pq(SemidirectPQParams::new(7, 1, 3, 1, 2)).unwrap();
        let s = f21.sylow_subgroups(7).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].size(), 7);
        assert!(s[0].is_normal());
        assert_eq!(f21.sylow_subgroups(3).unwrap().len(), 7);
        assert!(c12.sylow_subgroups(5).is_err());
        assert!(c12.sylow_subgroups(4).is_err());
    }

    #[test]
    fn fitting_examples() {
        let q = generalized_quaternion(4).unwrap();
        assert!(q.fitting_subgroup().is_whole());
        let c = cyclic(30).unwrap();
        assert!(c.fitting_subgroup().is_whole());
        let s4 = symmetric(4).unwrap();
        let f = s4.fitting_subgroup();
        assert_eq!(f.size(), 4);
        assert!(f.is_normal());
        assert!(!f.is_cyclic());
        let f21 = semidirect_pq(SemidirectPQParams::new(7, 1, 3, 1, 2)).unwrap();
        let f = f21.fitting_subgroup();
        assert_eq!(f.size(), 7);
        assert_eq!(f21.sylow_subgroups(7).unwrap()[0], f);
        assert!(symmetric(5).unwrap().fitting_subgroup().is_trivial());
        assert!(cyclic(1).unwrap().fitting_subgroup().is_trivial());
    }

    #[test]
    fn maximal_abelian_examples() {
        let a = abelian(&[3, 3]).unwrap();
        let ma = a.maximal_abelian_subgroups();
        assert_eq!(ma.len(), 1);
        assert!(ma[0].is_whole());
        let s3 = symmetric(3).unwrap();
        let mut sizes: Vec<usize> = s3
            .maximal_abelian_subgroups()
            .iter()
            .map(|s| s.size())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 3]);
    }

    #[test]
    fn class_sizes_are_normalizer_indices() {
        for g in [
            symmetric(4).unwrap(),
            dihedral(6).unwrap(),
            generalized_quaternion(4).unwrap(),
            semidirect_pq(SemidirectPQParams::new(7, 1, 3, 1, 2)).unwrap(),
        ] {
            let lat = g.lattice();
            let mut class_sizes = vec![0usize; lat.class_count()];
            for i in 0..lat.len() {
                class_sizes[lat.conjugacy_class_id(i)] += 1;
            }
            for (i, h) in g.all_subgroups().iter().enumerate() {
                assert_eq!(
                    class_sizes[lat.conjugacy_class_id(i)],
                    h.normalizer().index()
                );
                assert_eq!(lat.is_normal(i), h.normalizer().is_whole());
            }
            assert_eq!(class_sizes.iter().sum::<usize>(), lat.len());
        }
    }

    #[test]
    fn lattice_closed_under_conjugation() {
        let s4 = symmetric(4).unwrap();
        let lat = s4.lattice();
        for h in s4.all_subgroups() {
            assert_eq!(g_order(&s4) % h.size(), 0);
            for x in s4.elements() {
                assert!(lat.position(&h.conjugate(x).unwrap().mask()).is_some());
            }
        }
    }

    fn g_order(g: &FiniteGroup) -> usize {
        g.order()
    }

    #[test]
    fn dot_export() {
        let q = generalized_quaternion(3).unwrap();
        let dot = to_dot(&q, "Q(3)");
        assert_eq!(dot.matches("doublecircle").count(), 6);
        assert_eq!(dot.matches("->").count(), 1 + 3 + 3);
        let s3 = symmetric(3).unwrap();
        let dot = to_dot(&s3, "S(3)");
        assert_eq!(dot.matches("doublecircle").count(), 3);
        assert_eq!(dot.matches("shape=circle").count(), 3);
    }

    #[test]
    fn covers_of_cyclic_are_prime_steps() {
        let c = cyclic(12).unwrap();
        let lat = c.lattice();
        for (h, k) in lat.covers() {
            let ratio = lat.size(k) / lat.size(h);
            assert!(is_prime(ratio as u64));
        }
        // divisor lattice of 12 has 7 covering pairs
        assert_eq!(lat.covers().len(), 7);
    }
}
