//! Isomorphism testing for small groups: cheap invariants first, then a
//! backtracking search over images of a small generating set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::mask::Mask;

/// Isomorphism invariants. Equal fingerprints are necessary, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    /// element order -> number of elements of that order
    pub order_profile: BTreeMap<usize, usize>,
    /// subgroup order -> number of subgroups of that order
    pub subgroup_count_by_order: BTreeMap<usize, usize>,
    pub center_size: usize,
    pub abelian: bool,
    /// `None` for non-solvable groups.
    pub derived_length: Option<usize>,
}

/// Invariants that need no subgroup lattice.
pub(crate) fn order_profile(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for x in g.elements() {
        *out.entry(g.order_of(x)).or_insert(0) += 1;
    }
    out
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    GroupFingerprint {
        order: g.order(),
        order_profile: order_profile(g),
        subgroup_count_by_order: g.lattice().count_by_order(),
        center_size: g.center().size(),
        abelian: g.is_abelian(),
        derived_length: g.derived_length(),
    }
}

/// Greedy generating set: repeatedly take the element of highest order
/// (smallest index on ties) outside the current closure.
fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.order_of(x)), x));
    let mut gens = Vec::new();
    let mut span = Mask::identity();
    let full = g.order();
    while span.len() < full {
        let x = *by_order.iter().find(|&&x| !span.contains(x)).unwrap();
        gens.push(x);
        span = g.extend_closure(span, &gens);
    }
    gens
}

fn centralizer_size(g: &FiniteGroup, x: usize) -> usize {
    g.elements().filter(|&y| g.commute(x, y)).count()
}

/// A table-respecting bijection `φ` with `φ[x]` the image of `x`, if the
/// groups are isomorphic.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return None;
    }
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    find_isomorphism(g, h)
}

/// The backtracking search alone, without the fingerprint pre-check.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = greedy_generators(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let key = (g.order_of(s), centralizer_size(g, s));
            h.elements()
                .filter(|&t| (h.order_of(t), centralizer_size(h, t)) == key)
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_map(g, h, gens, images)?;
        return (map.iter().all(|&y| y != usize::MAX)).then_some(map);
    }
    for &t in &candidates[depth] {
        images.push(t);
        if extend_map(g, h, &gens[..=depth], images).is_some() {
            if let Some(map) = search(g, h, gens, candidates, images) {
                return Some(map);
            }
        }
        images.pop();
    }
    None
}

// Walks the Cayley graph of ⟨gens⟩ from the identity, sending x·s to φ(x)·t.
// Fails on any inconsistency or collision; a consistent walk is an injective
// homomorphism on ⟨gens⟩.
fn extend_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                used[img] = true;
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}
