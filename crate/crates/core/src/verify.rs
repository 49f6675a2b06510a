//! Corpus sweeps: classifier-versus-oracle verification, the CSA sweep, and
//! per-group lattice surveys. Reports are plain serde structs so the CLI can
//! render them as text or JSON from the same numbers.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{build_corpus, cheap_key, CheapKey, CorpusEntry, CorpusOptions, Family};
use crate::csa::{is_commutative_transitive, is_csa, CsaWitness};
use crate::decomp::{classify, decomposable_subgroup, ClassLabel, Decomposition};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::iso::are_isomorphic;
use crate::spec::GroupSpec;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub description: String,
    pub max_order: usize,
    pub families: Vec<Family>,
    pub per_family_counts: BTreeMap<Family, usize>,
    /// The requested bound exceeded the order cap and was lowered.
    pub partial: bool,
}

impl CorpusSummary {
    fn new(opts: &CorpusOptions, entries: &[CorpusEntry], partial: bool) -> Self {
        let mut per_family_counts = BTreeMap::new();
        for e in entries {
            *per_family_counts.entry(e.family).or_insert(0) += 1;
        }
        CorpusSummary {
            description: opts.describe(),
            max_order: opts.max_order,
            families: opts.selected(),
            per_family_counts,
            partial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupResult {
    pub spec: GroupSpec,
    pub family: Family,
    pub order: usize,
    pub classification: ClassLabel,
    pub oracle_strongly_indecomposable: bool,
    /// Smallest decomposable subgroup found by the oracle.
    pub oracle_witness: Option<Decomposition>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub spec: GroupSpec,
    pub classifier: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub report_version: u32,
    pub corpus: CorpusSummary,
    pub groups_checked: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub elapsed_ms: u64,
    pub results: Vec<GroupResult>,
}

impl VerificationReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Clamps the requested bound to `cap`, reporting whether anything was cut.
fn clamp(opts: &CorpusOptions, cap: usize) -> (CorpusOptions, bool) {
    if opts.max_order > cap {
        let mut o = opts.clone();
        o.max_order = cap;
        (o, true)
    } else {
        (opts.clone(), false)
    }
}

pub fn check_entry(entry: &CorpusEntry) -> GroupResult {
    let g = &entry.group;
    let oracle_witness = decomposable_subgroup(g);
    let oracle_si = oracle_witness.is_none();
    let classification = classify(g);
    let agree = match &classification {
        ClassLabel::NotStronglyIndecomposable { witness } => {
            !oracle_si && witness.is_some_and(|w| w.verify(g))
        }
        _ => oracle_si,
    };
    GroupResult {
        spec: entry.spec.clone(),
        family: entry.family,
        order: g.order(),
        classification,
        oracle_strongly_indecomposable: oracle_si,
        oracle_witness,
        agree,
    }
}

/// Runs classifier and oracle on every corpus group up to
/// `min(opts.max_order, cap)`.
pub fn run_verification(opts: &CorpusOptions, cap: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let (opts, partial) = clamp(opts, cap);
    let corpus = build_corpus(&opts)?;
    let mut results: Vec<GroupResult> = corpus.par_iter().map(check_entry).collect();
    results.sort_by_cached_key(|r| r.spec.to_string());
    let disagreements: Vec<Disagreement> = results
        .iter()
        .filter(|r| !r.agree)
        .map(|r| Disagreement {
            spec: r.spec.clone(),
            classifier: r.classification.to_string(),
            oracle: if r.oracle_strongly_indecomposable {
                "strongly indecomposable".into()
            } else {
                "has a decomposable subgroup".into()
            },
        })
        .collect();
    Ok(VerificationReport {
        report_version: REPORT_VERSION,
        corpus: CorpusSummary::new(&opts, &corpus, partial),
        groups_checked: results.len(),
        agreements: results.len() - disagreements.len(),
        disagreements,
        elapsed_ms: start.elapsed().as_millis() as u64,
        results,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsaResult {
    pub spec: GroupSpec,
    pub family: Family,
    pub order: usize,
    pub abelian: bool,
    pub csa: bool,
    pub commutative_transitive: bool,
    pub witness: Option<CsaWitness>,
    /// Whether the witness passed an independent re-check.
    pub witness_valid: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsaReport {
    pub report_version: u32,
    pub corpus: CorpusSummary,
    pub groups_checked: usize,
    pub abelian_groups: usize,
    pub non_abelian_groups: usize,
    /// Non-abelian groups that passed the CSA test. Expected to be empty.
    pub non_abelian_csa: Vec<GroupSpec>,
    pub invalid_witnesses: Vec<GroupSpec>,
    pub elapsed_ms: u64,
    pub results: Vec<CsaResult>,
}

impl CsaReport {
    pub fn clean(&self) -> bool {
        self.non_abelian_csa.is_empty() && self.invalid_witnesses.is_empty()
    }
}

pub fn check_csa_entry(entry: &CorpusEntry) -> CsaResult {
    let g = &entry.group;
    let verdict = is_csa(g);
    let witness = verdict.err();
    CsaResult {
        spec: entry.spec.clone(),
        family: entry.family,
        order: g.order(),
        abelian: g.is_abelian(),
        csa: witness.is_none(),
        commutative_transitive: is_commutative_transitive(g),
        witness,
        witness_valid: witness.map(|w| w.verify(g)),
    }
}

pub fn run_csa_check(opts: &CorpusOptions, cap: usize) -> Result<CsaReport> {
    let start = Instant::now();
    let (opts, partial) = clamp(opts, cap);
    let corpus = build_corpus(&opts)?;
    let mut results: Vec<CsaResult> = corpus.par_iter().map(check_csa_entry).collect();
    results.sort_by_cached_key(|r| r.spec.to_string());
    let abelian_groups = results.iter().filter(|r| r.abelian).count();
    Ok(CsaReport {
        report_version: REPORT_VERSION,
        corpus: CorpusSummary::new(&opts, &corpus, partial),
        groups_checked: results.len(),
        abelian_groups,
        non_abelian_groups: results.len() - abelian_groups,
        non_abelian_csa: results
            .iter()
            .filter(|r| !r.abelian && r.csa)
            .map(|r| r.spec.clone())
            .collect(),
        invalid_witnesses: results
            .iter()
            .filter(|r| r.witness_valid == Some(false))
            .map(|r| r.spec.clone())
            .collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        results,
    })
}

/// One isomorphism type among the subgroups of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyClass {
    /// The first subgroup of this type, as `Sub(ambient, k)`.
    pub representative: GroupSpec,
    pub order: usize,
    pub subgroups: usize,
    pub normal_subgroups: usize,
    pub classification: ClassLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub report_version: u32,
    pub ambient: GroupSpec,
    pub order: usize,
    pub subgroup_count: usize,
    pub normal_count: usize,
    pub conjugacy_classes: usize,
    pub strongly_indecomposable: bool,
    pub classes: Vec<SurveyClass>,
}

pub fn survey(ambient: &GroupSpec) -> Result<SurveyReport> {
    Ok(survey_group(ambient, &ambient.build()?))
}

/// Surveys an already built group; `ambient` is only used for labels.
pub fn survey_group(ambient: &GroupSpec, g: &FiniteGroup) -> SurveyReport {
    let lat = g.lattice();
    // Conjugate subgroups are isomorphic, so one representative per
    // conjugacy class suffices. Classes are visited by smallest member.
    let mut class_rep = vec![usize::MAX; lat.class_count()];
    let mut reps = Vec::new();
    for k in 0..lat.len() {
        let c = lat.conjugacy_class_id(k);
        if class_rep[c] == usize::MAX {
            class_rep[c] = k;
            reps.push(k);
        }
    }
    let groups: Vec<(FiniteGroup, CheapKey)> = reps
        .par_iter()
        .map(|&k| {
            let h = g.subgroup_unchecked(lat.masks()[k]).to_group();
            let key = cheap_key(&h);
            (h, key)
        })
        .collect();

    let mut types: Vec<(usize, SurveyClass)> = Vec::new();
    let mut by_key: HashMap<&CheapKey, Vec<usize>> = HashMap::new();
    let mut class_type = vec![0; lat.class_count()];
    for (i, (h, key)) in groups.iter().enumerate() {
        let candidates = by_key.entry(key).or_default();
        // abelian groups with equal element-order counts are isomorphic
        let found = candidates
            .iter()
            .copied()
            .find(|&t| key.abelian || are_isomorphic(&groups[types[t].0].0, h).is_some());
        let t = found.unwrap_or_else(|| {
            candidates.push(types.len());
            types.push((
                i,
                SurveyClass {
                    representative: GroupSpec::Sub(Box::new(ambient.clone()), reps[i]),
                    order: h.order(),
                    subgroups: 0,
                    normal_subgroups: 0,
                    classification: classify(h),
                },
            ));
            types.len() - 1
        });
        class_type[lat.conjugacy_class_id(reps[i])] = t;
    }
    for k in 0..lat.len() {
        let t = &mut types[class_type[lat.conjugacy_class_id(k)]].1;
        t.subgroups += 1;
        t.normal_subgroups += lat.is_normal(k) as usize;
    }
    SurveyReport {
        report_version: REPORT_VERSION,
        ambient: ambient.clone(),
        order: g.order(),
        subgroup_count: lat.len(),
        normal_count: (0..lat.len()).filter(|&i| lat.is_normal(i)).count(),
        conjugacy_classes: lat.class_count(),
        strongly_indecomposable: decomposable_subgroup(g).is_none(),
        classes: types.into_iter().map(|(_, c)| c).collect(),
    }
}
