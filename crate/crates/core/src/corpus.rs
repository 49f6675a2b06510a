//! The sweep corpus: every constructor family up to an order bound, direct
//! products of two family members, and all subgroups of `S(4)` and `S(5)`,
//! deduplicated up to isomorphism.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, pow_mod};
use crate::constructors::MetacyclicParams;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::iso::{are_isomorphic, order_profile};
use crate::spec::GroupSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Quaternion,
    Metacyclic,
    Pq,
    Dihedral,
    Abelian,
    Symmetric,
    Product,
    Subgroups,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Cyclic,
        Family::Quaternion,
        Family::Metacyclic,
        Family::Pq,
        Family::Dihedral,
        Family::Abelian,
        Family::Symmetric,
        Family::Product,
        Family::Subgroups,
    ];

    const BASE: [Family; 7] = [
        Family::Cyclic,
        Family::Quaternion,
        Family::Metacyclic,
        Family::Pq,
        Family::Dihedral,
        Family::Abelian,
        Family::Symmetric,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Quaternion => "quaternion",
            Family::Metacyclic => "metacyclic",
            Family::Pq => "pq",
            Family::Dihedral => "dihedral",
            Family::Abelian => "abelian",
            Family::Symmetric => "symmetric",
            Family::Product => "product",
            Family::Subgroups => "subgroups",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown family {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub family: Family,
    pub group: FiniteGroup,
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("spec", &self.spec.to_string())
            .field("family", &self.family)
            .field("order", &self.group.order())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusOptions {
    pub max_order: usize,
    /// Families to include; empty means all.
    pub families: Vec<Family>,
}

impl CorpusOptions {
    pub fn new(max_order: usize) -> Self {
        CorpusOptions {
            max_order,
            families: Vec::new(),
        }
    }

    pub fn with_families(mut self, families: Vec<Family>) -> Self {
        self.families = families;
        self
    }

    pub fn selected(&self) -> Vec<Family> {
        if self.families.is_empty() {
            Family::ALL.to_vec()
        } else {
            Family::ALL
                .into_iter()
                .filter(|f| self.families.contains(f))
                .collect()
        }
    }

    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.selected().iter().map(|f| f.name()).collect();
        format!(
            "families [{}] up to order {}, deduplicated up to isomorphism",
            names.join(", "),
            self.max_order
        )
    }
}

/// Specs of one family with order at most `max`.
pub fn family_specs(family: Family, max: usize) -> Vec<GroupSpec> {
    let max = max as u64;
    let mut out = Vec::new();
    match family {
        Family::Cyclic => out.extend((1..=max).map(GroupSpec::Cyclic)),
        Family::Quaternion => out.extend(
            (3..=9u32)
                .filter(|&n| 1u64 << n <= max)
                .map(GroupSpec::Quaternion),
        ),
        Family::Metacyclic => {
            for m in (3..=max / 2).step_by(2) {
                for n in 2..=max / m {
                    for r in 0..m {
                        if MetacyclicParams::new(m, n, r).violation().is_none() {
                            out.push(GroupSpec::Metacyclic { m, n, r });
                        }
                    }
                }
            }
        }
        Family::Pq => out.extend(pq_specs(max)),
        Family::Dihedral => out.extend((2..=max / 2).map(GroupSpec::Dihedral)),
        Family::Abelian => {
            // invariant factors d1 | d2 | .. with at least two factors
            let mut stack: Vec<Vec<u64>> = (2..=max).map(|d| vec![d]).collect();
            while let Some(f) = stack.pop() {
                let prod: u64 = f.iter().product();
                let last = *f.last().unwrap();
                let mut next = last;
                while prod * next <= max {
                    let mut g = f.clone();
                    g.push(next);
                    out.push(GroupSpec::Abelian(g.clone()));
                    stack.push(g);
                    next += last;
                }
            }
            out.sort();
        }
        Family::Symmetric => out.extend(
            (3..=5u32)
                .filter(|&n| (1..=n as u64).product::<u64>() <= max)
                .map(GroupSpec::Symmetric),
        ),
        Family::Product | Family::Subgroups => {}
    }
    out
}

/// Every valid `PQ(p,α,q,β,r)` tuple with `p^α·q^β <= max`.
pub fn pq_specs(max: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for p in (3..=max / 2).filter(|&p| is_prime(p)) {
        let mut pa = p;
        let mut alpha = 1;
        while pa * 2 <= max {
            for q in (2..=max / pa).filter(|&q| is_prime(q) && q != p) {
                let mut qb = q;
                let mut beta = 1;
                while pa * qb <= max {
                    for r in 1..pa {
                        if gcd(r, pa) == 1 && pow_mod(r, qb, pa) == 1 {
                            out.push(GroupSpec::SemidirectPq {
                                p,
                                alpha,
                                q,
                                beta,
                                r,
                            });
                        }
                    }
                    qb *= q;
                    beta += 1;
                }
            }
            pa *= p;
            alpha += 1;
        }
    }
    out
}

/// Cheap isomorphism invariants used to bucket groups before a full test.
#[derive(PartialEq, Eq, Hash)]
pub(crate) struct CheapKey {
    pub order: usize,
    pub profile: Vec<(usize, usize)>,
    pub center: usize,
    pub abelian: bool,
}

pub(crate) fn cheap_key(g: &FiniteGroup) -> CheapKey {
    CheapKey {
        order: g.order(),
        profile: order_profile(g).into_iter().collect(),
        center: g.center().size(),
        abelian: g.is_abelian(),
    }
}

/// Keeps the first entry of each isomorphism class, preserving order.
pub fn dedupe(entries: Vec<CorpusEntry>) -> Vec<CorpusEntry> {
    let keys: Vec<CheapKey> = entries.par_iter().map(|e| cheap_key(&e.group)).collect();
    let mut buckets: HashMap<CheapKey, Vec<usize>> = HashMap::new();
    let mut kept: Vec<CorpusEntry> = Vec::new();
    for (entry, key) in entries.into_iter().zip(keys) {
        let bucket = buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|&i| are_isomorphic(&kept[i].group, &entry.group).is_some())
        {
            continue;
        }
        bucket.push(kept.len());
        kept.push(entry);
    }
    kept
}

fn build_entries(specs: Vec<(GroupSpec, Family)>) -> Result<Vec<CorpusEntry>> {
    specs
        .into_par_iter()
        .map(|(spec, family)| {
            let group = spec.build()?;
            Ok(CorpusEntry {
                spec,
                family,
                group,
            })
        })
        .collect()
}

pub fn build_corpus(opts: &CorpusOptions) -> Result<Vec<CorpusEntry>> {
    let max = opts.max_order;
    if max == 0 {
        return Err(Error::InvalidArgument(
            "max order must be at least 1".into(),
        ));
    }
    if max > crate::MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: max,
            cap: crate::MAX_ORDER,
        });
    }
    let selected = opts.selected();
    let mut specs: Vec<(GroupSpec, Family)> = Vec::new();
    for family in Family::BASE {
        if selected.contains(&family) {
            specs.extend(family_specs(family, max).into_iter().map(|s| (s, family)));
        }
    }
    let mut entries = build_entries(specs)?;

    if selected.contains(&Family::Product) {
        // factors: nontrivial base-family representatives up to isomorphism
        let factor_specs = Family::BASE
            .into_iter()
            .flat_map(|f| family_specs(f, max / 2).into_iter().map(move |s| (s, f)))
            .filter(|(s, _)| s.order_hint().is_some_and(|o| o >= 2))
            .collect();
        let factors = dedupe(build_entries(factor_specs)?);
        let mut pairs = Vec::new();
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i..] {
                if a.group.order() * b.group.order() <= max {
                    pairs.push((
                        GroupSpec::Product(Box::new(a.spec.clone()), Box::new(b.spec.clone())),
                        Family::Product,
                    ));
                }
            }
        }
        entries.extend(build_entries(pairs)?);
    }

    if selected.contains(&Family::Subgroups) {
        let mut subs = Vec::new();
        for n in [4u32, 5] {
            let ambient = GroupSpec::Symmetric(n);
            let g = ambient.build()?;
            for (k, mask) in g.lattice().masks().iter().enumerate() {
                if mask.len() <= max {
                    subs.push(CorpusEntry {
                        spec: GroupSpec::Sub(Box::new(ambient.clone()), k),
                        family: Family::Subgroups,
                        group: g.subgroup(*mask)?.to_group(),
                    });
                }
            }
        }
        entries.extend(subs);
    }

    Ok(dedupe(entries))
}
