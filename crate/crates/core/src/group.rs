//! Finite groups as explicit Cayley tables, and subgroups as bit-masks over
//! their parent's elements.

use std::fmt;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::mask::Mask;
use crate::MAX_ORDER;

/// How much of the associativity law to check when accepting a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableCheck {
    /// Tables of at most this order are checked on every triple; larger ones
    /// on `10 * order^2` random triples.
    pub exhaustive_bound: usize,
    /// Seed for the sampled check.
    pub seed: u64,
}

impl Default for TableCheck {
    fn default() -> Self {
        TableCheck {
            exhaustive_bound: MAX_ORDER,
            seed: 0x5eed,
        }
    }
}

/// A finite group given by its multiplication table. Element 0 is the identity.
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    element_orders: Vec<u16>,
    names: Option<Vec<String>>,
    generator_hint: Option<Vec<usize>>,
    generators: Vec<usize>,
    lattice: OnceLock<SubgroupLattice>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            element_orders: self.element_orders.clone(),
            names: self.names.clone(),
            generator_hint: self.generator_hint.clone(),
            generators: self.generators.clone(),
            lattice: self.lattice.clone(),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

/// Two groups are equal when their tables are identical (same labelling).
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major table, `table[g][h] = g·h`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with(table, TableCheck::default())
    }

    pub fn from_table_with(table: Vec<Vec<usize>>, check: TableCheck) -> Result<Self> {
        let n = table.len();
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        Self::from_fn_with(n, |a, b| table[a][b], check)
    }

    /// Builds a group of order `n` from a multiplication closure.
    pub(crate) fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::from_fn_with(n, mul, TableCheck::default())
    }

    fn from_fn_with(
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        check: TableCheck,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable(
                "a group has at least one element".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                cap: MAX_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({a}, {b}) = {c} is not an element"
                    )));
                }
                table.push(c as u16);
            }
        }
        validate(n, &table, check)?;

        let mut inverse = vec![0u16; n];
        for g in 0..n {
            let row = &table[g * n..(g + 1) * n];
            inverse[g] = row.iter().position(|&x| x == 0).unwrap() as u16;
        }
        let mut element_orders = vec![1u16; n];
        for (g, slot) in element_orders.iter_mut().enumerate() {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + g] as usize;
                k += 1;
            }
            *slot = k as u16;
        }

        let mut group = FiniteGroup {
            order: n,
            table,
            inverse,
            element_orders,
            names: None,
            generator_hint: None,
            generators: Vec::new(),
            lattice: OnceLock::new(),
        };
        group.generators = group.generating_sequence(&Mask::full(n));
        Ok(group)
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub(crate) fn with_generator_hint(mut self, gens: Vec<usize>) -> Self {
        self.generator_hint = Some(gens);
        self
    }

    pub(crate) fn lattice_cell(&self) -> &OnceLock<SubgroupLattice> {
        &self.lattice
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `g·h` without range checks.
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    /// Order of `g` without range checks.
    #[inline]
    pub fn order_of(&self, g: usize) -> usize {
        self.element_orders[g] as usize
    }

    fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: g,
                order: self.order,
            })
        }
    }

    pub fn multiply(&self, g: usize, h: usize) -> Result<usize> {
        self.check_index(g)?;
        self.check_index(h)?;
        Ok(self.mul(g, h))
    }

    pub fn inverse(&self, g: usize) -> Result<usize> {
        self.check_index(g)?;
        Ok(self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> Result<usize> {
        self.check_index(g)?;
        Ok(self.order_of(g))
    }

    /// `g^k` for any integer `k`.
    pub fn power(&self, g: usize, k: i64) -> usize {
        let ord = self.order_of(g) as i64;
        let k = k.rem_euclid(ord);
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// `g·h·g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `g⁻¹·h⁻¹·g·h`.
    #[inline]
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    #[inline]
    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_name(&self, g: usize) -> String {
        match &self.names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// The elements a constructor used to build the group, if recorded.
    pub fn generator_hint(&self) -> Option<&[usize]> {
        self.generator_hint.as_deref()
    }

    /// A generating sequence of the whole group (see [`generating_sequence`]).
    ///
    /// [`generating_sequence`]: FiniteGroup::generating_sequence
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Row-major table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders
            .iter()
            .any(|&o| o as usize == self.order)
    }

    /// Number of elements of order exactly 2.
    pub fn involution_count(&self) -> usize {
        self.element_orders.iter().filter(|&&o| o == 2).count()
    }

    /// Closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Mask {
        self.extend_closure(Mask::identity(), gens)
    }

    /// Closure of `base ∪ gens`, where `base` is already a subgroup generated
    /// by a subset of `gens`.
    pub(crate) fn extend_closure(&self, base: Mask, gens: &[usize]) -> Mask {
        let mut mask = base;
        let mut stack: Vec<usize> = base.iter().collect();
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if mask.insert(y) {
                    stack.push(y);
                }
            }
        }
        mask
    }

    /// The greedy ascending generating sequence of `mask`: each member is the
    /// smallest element of `mask` not generated by the previous ones. For a
    /// non-closed `mask` it generates the closure.
    ///
    /// It depends only on the subgroup, and every prefix is the canonical
    /// sequence of the subgroup that prefix generates.
    pub fn generating_sequence(&self, mask: &Mask) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Mask::identity();
        for x in mask.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = self.extend_closure(span, &gens);
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_closed(self, Mask::full(self.order))
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        Subgroup::from_closed(self, Mask::identity())
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Result<Subgroup<'_>> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(Subgroup::from_closed(self, self.closure(gens)))
    }

    /// Wraps `mask` as a subgroup after checking it contains the identity and
    /// is closed under multiplication.
    pub fn subgroup(&self, mask: Mask) -> Result<Subgroup<'_>> {
        if let Some(last) = mask.last() {
            self.check_index(last)?;
        }
        if !mask.contains(0) {
            return Err(Error::InvalidArgument(
                "mask does not contain the identity".into(),
            ));
        }
        for a in mask.iter() {
            for b in mask.iter() {
                if !mask.contains(self.mul(a, b)) {
                    return Err(Error::InvalidArgument(format!(
                        "mask is not closed: {a}·{b} is missing"
                    )));
                }
            }
        }
        Ok(Subgroup::from_closed(self, mask))
    }

    pub(crate) fn subgroup_unchecked(&self, mask: Mask) -> Subgroup<'_> {
        Subgroup::from_closed(self, mask)
    }

    pub fn center(&self) -> Subgroup<'_> {
        let mask = self
            .elements()
            .filter(|&z| self.generators.iter().all(|&g| self.commute(z, g)))
            .collect();
        Subgroup::from_closed(self, mask)
    }

    pub fn centralizer(&self, g: usize) -> Result<Subgroup<'_>> {
        self.check_index(g)?;
        let mask = self.elements().filter(|&h| self.commute(g, h)).collect();
        Ok(Subgroup::from_closed(self, mask))
    }

    /// `[H, H]` for the subgroup `mask`.
    pub(crate) fn commutator_subgroup(&self, mask: &Mask) -> Mask {
        let mut comms = Mask::identity();
        for a in mask.iter() {
            for b in mask.iter() {
                comms.insert(self.commutator(a, b));
            }
        }
        let gens = self.generating_sequence(&comms);
        self.closure(&gens)
    }

    /// The derived series `G = G⁽⁰⁾ ⊇ G⁽¹⁾ ⊇ ..`, stopping at the first term
    /// equal to its own commutator subgroup.
    pub fn derived_series(&self) -> Vec<Subgroup<'_>> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap().mask;
            let next = self.commutator_subgroup(&last);
            if next == last {
                return series;
            }
            series.push(Subgroup::from_closed(self, next));
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Number of steps for the derived series to reach the trivial group,
    /// `None` when the group is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        let series = self.derived_series();
        series
            .last()
            .unwrap()
            .is_trivial()
            .then(|| series.len() - 1)
    }

    /// A finite group is nilpotent iff every Sylow subgroup is normal.
    pub fn is_nilpotent(&self) -> bool {
        crate::arith::factorize(self.order as u64)
            .into_iter()
            .all(|(p, _)| {
                self.sylow_subgroups(p)
                    .map(|s| s.len() == 1)
                    .unwrap_or(false)
            })
    }

    pub fn is_p_group(&self) -> bool {
        crate::arith::prime_power(self.order as u64).is_some()
    }
}

fn validate(n: usize, table: &[u16], check: TableCheck) -> Result<()> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    for g in 0..n {
        if at(0, g) != g || at(g, 0) != g {
            return Err(Error::InvalidTable(format!(
                "index 0 is not the identity (fails at {g})"
            )));
        }
    }
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let c = at(a, b);
            if seen[c] == a {
                return Err(Error::InvalidTable(format!("row {a} repeats {c}")));
            }
            seen[c] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let c = at(a, b);
            if seen[c] == b {
                return Err(Error::InvalidTable(format!("column {b} repeats {c}")));
            }
            seen[c] = b;
        }
    }
    let assoc_fail = |a: usize, b: usize, c: usize| {
        Error::InvalidTable(format!("associativity fails at ({a}, {b}, {c})"))
    };
    if n <= check.exhaustive_bound {
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                let row_ab = &table[ab * n..(ab + 1) * n];
                let row_b = &table[b * n..(b + 1) * n];
                let row_a = &table[a * n..(a + 1) * n];
                for c in 0..n {
                    if row_ab[c] != row_a[row_b[c] as usize] {
                        return Err(assoc_fail(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(check.seed);
        for _ in 0..10 * n * n {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(assoc_fail(a, b, c));
            }
        }
    }
    Ok(())
}

/// A subgroup of `parent`, stored as a mask over the parent's elements.
#[derive(Clone, Copy)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    mask: Mask,
    size: usize,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.mask == other.mask
    }
}

impl Eq for Subgroup<'_> {}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("size", &self.size)
            .field("mask", &self.mask)
            .finish()
    }
}

impl<'g> Subgroup<'g> {
    /// Wraps a mask already known to be a subgroup.
    pub(crate) fn from_closed(parent: &'g FiniteGroup, mask: Mask) -> Self {
        debug_assert!(mask.contains(0));
        Subgroup {
            parent,
            mask,
            size: mask.len(),
        }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, g: usize) -> bool {
        g < self.parent.order && self.mask.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.parent.order
    }

    pub fn generators(&self) -> Vec<usize> {
        self.parent.generating_sequence(&self.mask)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        let g = self.parent;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.commute(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements()
            .any(|x| self.parent.order_of(x) == self.size)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        Subgroup::from_closed(self.parent, self.mask.intersection(&other.mask))
    }

    /// `⟨H ∪ K⟩`.
    pub fn join(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::from_closed(self.parent, self.parent.closure(&gens))
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: usize) -> Result<Subgroup<'g>> {
        self.parent.check_index(g)?;
        Ok(self.conjugate_unchecked(g))
    }

    pub(crate) fn conjugate_unchecked(&self, g: usize) -> Subgroup<'g> {
        let p = self.parent;
        let mask = self.mask.iter().map(|h| p.conj(g, h)).collect();
        Subgroup {
            parent: p,
            mask,
            size: self.size,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .generators()
            .iter()
            .all(|&g| self.conjugate_unchecked(g).mask == self.mask)
    }

    /// Whether this subgroup is normal in the subgroup `over`, which must contain it.
    pub fn is_normal_in(&self, over: &Subgroup<'g>) -> bool {
        self.mask.is_subset(&over.mask)
            && over
                .generators()
                .iter()
                .all(|&g| self.conjugate_unchecked(g).mask == self.mask)
    }

    pub fn normalizer(&self) -> Subgroup<'g> {
        let p = self.parent;
        let mask = p
            .elements()
            .filter(|&g| self.conjugate_unchecked(g).mask == self.mask)
            .collect();
        Subgroup::from_closed(p, mask)
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.size
    }

    /// The subgroup as a group in its own right, elements relabelled in
    /// increasing parent-index order (so the identity stays at 0).
    pub fn to_group(&self) -> FiniteGroup {
        let elems: Vec<usize> = self.elements().collect();
        let mut pos = vec![usize::MAX; self.parent.order];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let p = self.parent;
        let g = FiniteGroup::from_fn(elems.len(), |a, b| pos[p.mul(elems[a], elems[b])])
            .expect("a closed mask induces a valid group table");
        match p.element_names() {
            Some(names) => g.with_names(elems.iter().map(|&e| names[e].clone()).collect()),
            None => g,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn find(g: &FiniteGroup, name: &str) -> usize {
        g.elements().find(|&e| g.element_name(e) == name).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            FiniteGroup::from_table(vec![]),
            Err(Error::InvalidTable(_))
        ));
        // identity not at index 0
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table(t).is_err());
        // not a Latin square
        let t = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table(t).is_err());
        // ragged
        let t = vec![vec![0, 1], vec![1]];
        assert!(FiniteGroup::from_table(t).is_err());
        // out-of-range entry
        let t = vec![vec![0, 1], vec![1, 2]];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    // The Latin square of order 5 below has an identity but is not a group.
    fn loop_of_order_5() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ]
    }

    #[test]
    fn rejects_non_associative_loop() {
        let err = FiniteGroup::from_table(loop_of_order_5()).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
        // the sampled path catches it too
        let check = TableCheck {
            exhaustive_bound: 0,
            seed: 1,
        };
        assert!(FiniteGroup::from_table_with(loop_of_order_5(), check).is_err());
    }

    #[test]
    fn sampled_check_accepts_groups() {
        let g = cyclic(12).unwrap();
        let check = TableCheck {
            exhaustive_bound: 4,
            seed: 7,
        };
        assert!(FiniteGroup::from_table_with(g.table(), check).is_ok());
    }

    #[test]
    fn multiply_examples() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(z4.multiply(1, 3).unwrap(), 0);
        assert!(matches!(
            z4.multiply(4, 0),
            Err(Error::IndexOutOfRange { index: 4, order: 4 })
        ));
        for g in z4.elements() {
            assert_eq!(z4.multiply(0, g).unwrap(), g);
        }
        let q = generalized_quaternion(3).unwrap();
        let x = find(&q, "x");
        assert_eq!(q.order_of(x), 4);
        let x2 = q.multiply(x, x).unwrap();
        assert_eq!(q.element_name(x2), "x^2");
        assert_eq!(q.order_of(x2), 2);
    }

    #[test]
    fn element_order_examples() {
        let q = generalized_quaternion(3).unwrap();
        assert_eq!(q.element_order(0).unwrap(), 1);
        assert_eq!(q.element_order(find(&q, "y")).unwrap(), 4);
        let z12 = cyclic(12).unwrap();
        assert_eq!(z12.element_order(2).unwrap(), 6);
        assert!(z12.element_order(12).is_err());
        for g in z12.elements() {
            assert_eq!(12 % z12.order_of(g), 0);
        }
    }

    #[test]
    fn generated_subgroup_examples() {
        let s3 = symmetric(3).unwrap();
        assert!(s3.generated_subgroup(&[]).unwrap().is_trivial());
        let c = find(&s3, "[1,2,0]");
        assert_eq!(s3.generated_subgroup(&[c]).unwrap().size(), 3);
        let q = generalized_quaternion(3).unwrap();
        let (x, y) = (find(&q, "x"), find(&q, "y"));
        assert!(q.generated_subgroup(&[x, y]).unwrap().is_whole());
        assert!(q.generated_subgroup(&[8]).is_err());
    }

    #[test]
    fn center_and_centralizers() {
        let a = abelian(&[4, 2]).unwrap();
        assert!(a.center().is_whole());
        assert_eq!(generalized_quaternion(3).unwrap().center().size(), 2);
        let s3 = symmetric(3).unwrap();
        assert!(s3.center().is_trivial());
        assert!(s3.centralizer(0).unwrap().is_whole());
        let t = find(&s3, "[1,0,2]");
        assert_eq!(s3.centralizer(t).unwrap().size(), 2);
        let q = generalized_quaternion(3).unwrap();
        let x = find(&q, "x");
        let cx = q.centralizer(x).unwrap();
        assert_eq!(cx, q.generated_subgroup(&[x]).unwrap());
        assert_eq!(cx.size(), 4);
    }

    #[test]
    fn conjugation_examples() {
        let s3 = symmetric(3).unwrap();
        let t12 = find(&s3, "[1,0,2]");
        let t23 = find(&s3, "[0,2,1]");
        let c = find(&s3, "[1,2,0]");
        let h = s3.generated_subgroup(&[t12]).unwrap();
        assert_eq!(h.conjugate(0).unwrap(), h);
        let k = h.conjugate(c).unwrap();
        assert_eq!(k, s3.generated_subgroup(&[t23]).unwrap());
        assert_ne!(k, h);
        assert_eq!(k.size(), 2);
        let a3 = s3.generated_subgroup(&[c]).unwrap();
        for g in s3.elements() {
            assert_eq!(a3.conjugate(g).unwrap(), a3);
        }
    }

    #[test]
    fn derived_series_examples() {
        let a = abelian(&[3, 3]).unwrap();
        let ds = a.derived_series();
        assert_eq!(ds.iter().map(|s| s.size()).collect::<Vec<_>>(), vec![9, 1]);
        assert!(a.is_solvable());

        let s3 = symmetric(3).unwrap();
        let sizes: Vec<_> = s3.derived_series().iter().map(|s| s.size()).collect();
        assert_eq!(sizes, vec![6, 3, 1]);
        assert_eq!(s3.derived_length(), Some(2));

        let s5 = symmetric(5).unwrap();
        let series = s5.derived_series();
        let sizes: Vec<_> = series.iter().map(|s| s.size()).collect();
        assert_eq!(sizes, vec![120, 60]);
        assert!(!s5.is_solvable());
        assert_eq!(s5.derived_length(), None);
        let a5 = series[1].to_group();
        assert_eq!(a5.derived_series().len(), 1);
        assert!(!a5.is_solvable());

        // the trivial group is its own derived series
        assert_eq!(cyclic(1).unwrap().derived_series().len(), 1);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(generalized_quaternion(4).unwrap().is_nilpotent());
        assert!(dihedral(8).unwrap().is_nilpotent());
        assert!(cyclic(6).unwrap().is_nilpotent());
        assert!(!symmetric(3).unwrap().is_nilpotent());
        assert!(!symmetric(4).unwrap().is_nilpotent());
        assert!(cyclic(1).unwrap().is_nilpotent());
    }

    #[test]
    fn subgroup_from_mask() {
        let z6 = cyclic(6).unwrap();
        assert!(z6.subgroup(Mask::from_indices([0, 2, 4])).is_ok());
        assert!(z6.subgroup(Mask::from_indices([0, 2])).is_err());
        assert!(z6.subgroup(Mask::from_indices([2, 4])).is_err());
        assert!(z6.subgroup(Mask::from_indices([0, 9])).is_err());
    }

    #[test]
    fn to_group_relabels() {
        let s4 = symmetric(4).unwrap();
        let v = s4.derived_series()[1]; // A_4
        let a4 = v.to_group();
        assert_eq!(a4.order(), 12);
        assert!(!a4.generators().is_empty());
        assert!(!a4.is_abelian());
        assert_eq!(a4.element_name(0), "[0,1,2,3]");
    }
}
