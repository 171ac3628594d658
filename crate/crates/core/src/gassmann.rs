//! Almost-conjugacy of subgroups.
//!
//! Two subgroups `H1`, `H2 ≤ G` form a Gassmann pair when every conjugacy
//! class of `G` meets them in the same number of elements. The certificate
//! also re-derives the verdict from permutation characters, a second and
//! independent code path.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{GassmannError, PermError};
use crate::group::{
    are_conjugate_subgroups, close_in, fixed_point_count, left_cosets, ClassPartition, GroupTable,
    Subgroup,
};

/// `counts[c] = |C_c ∩ H|`, indexed by class id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ClassProfile {
    pub counts: Vec<usize>,
}

impl ClassProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Orders {
    pub group: usize,
    pub h1: usize,
    pub h2: usize,
    /// `[G:H1]`; equals `[G:H2]` whenever the pair is Gassmann.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GassmannCertificate {
    pub profile1: ClassProfile,
    pub profile2: ClassProfile,
    pub is_gassmann: bool,
    pub conjugacy_witness: Option<usize>,
    pub char_check: bool,
    pub orders: Orders,
}

impl GassmannCertificate {
    /// Gassmann but not conjugate: the interesting case.
    pub fn is_nontrivial(&self) -> bool {
        self.is_gassmann && self.conjugacy_witness.is_none()
    }
}

pub fn class_profile(group: &GroupTable, classes: &ClassPartition, h: &Subgroup) -> ClassProfile {
    debug_assert_eq!(classes.class_of.len(), group.order());
    let mut counts = vec![0; classes.len()];
    for &m in h.members() {
        counts[classes.class_of[m]] += 1;
    }
    ClassProfile { counts }
}

pub fn is_gassmann(
    group: &GroupTable,
    classes: &ClassPartition,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Result<GassmannCertificate, PermError> {
    let profile1 = class_profile(group, classes, h1);
    let profile2 = class_profile(group, classes, h2);
    let is_gassmann = profile1 == profile2;

    let x1 = left_cosets(group, h1)?;
    let x2 = left_cosets(group, h2)?;
    let char_check = classes
        .representatives()
        .into_iter()
        .all(|g| fixed_point_count(&x1, g) == fixed_point_count(&x2, g));

    let conjugacy_witness = are_conjugate_subgroups(group, h1, h2);
    Ok(GassmannCertificate {
        profile1,
        profile2,
        is_gassmann,
        conjugacy_witness,
        char_check,
        orders: Orders {
            group: group.order(),
            h1: h1.order(),
            h2: h2.order(),
            index: x1.index(),
        },
    })
}

/// Limits for [`search_pairs`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Subgroups are closures of at most this many elements.
    pub max_generators: usize,
    /// Keep joining until no new subgroups appear (all subgroups). Only
    /// allowed for `|G| <= EXHAUSTIVE_LIMIT`.
    pub exhaustive: bool,
    /// Maximum number of distinct subgroups examined.
    pub budget: usize,
}

pub const EXHAUSTIVE_LIMIT: usize = 48;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_generators: 3,
            exhaustive: false,
            budget: 50_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GassmannPair {
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub certificate: GassmannCertificate,
}

/// Enumerates subgroups generated by up to `max_generators` elements,
/// keeps one representative per conjugacy class (the conjugate with the
/// lexicographically smallest member list) and returns every unordered
/// pair of non-conjugate representatives with equal class profiles.
///
/// Output is sorted by `(|H|, members of H1, members of H2)`.
pub fn search_pairs(
    group: &GroupTable,
    classes: &ClassPartition,
    order_filter: Option<usize>,
    options: SearchOptions,
) -> Result<Vec<GassmannPair>, GassmannError> {
    let n = group.order();
    if options.exhaustive && n > EXHAUSTIVE_LIMIT {
        return Err(GassmannError::ExhaustiveTooLarge {
            order: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let can_extend = |order: usize| order_filter.is_none_or(|f| f % order == 0 && order < f);
    let wanted = |order: usize| order_filter.is_none_or(|f| f == order);

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    // (subgroup, generators used to reach it)
    let mut level: Vec<(Subgroup, Vec<usize>)> = Vec::new();

    let mut record = |h: Subgroup, gens: Vec<usize>, next: &mut Vec<(Subgroup, Vec<usize>)>| {
        if seen.insert(h.members().to_vec()) {
            if seen.len() > options.budget {
                return Err(GassmannError::SearchBudgetExceeded {
                    budget: options.budget,
                });
            }
            if order_filter.is_none_or(|f| f % h.order() == 0) {
                next.push((h.clone(), gens));
            }
            found.push(h);
        }
        Ok(())
    };

    record(Subgroup::trivial(group), vec![], &mut level)?;
    let mut depth = 0;
    while !level.is_empty() && (options.exhaustive || depth < options.max_generators) {
        let mut next = Vec::new();
        for (k, gens) in &level {
            if !can_extend(k.order()) {
                continue;
            }
            for g in 0..n {
                if k.contains(g) {
                    continue;
                }
                let mut joined_gens = gens.clone();
                joined_gens.push(g);
                let j = close_in(group, vec![false; n], &joined_gens);
                record(j, joined_gens, &mut next)?;
            }
        }
        level = next;
        depth += 1;
    }

    // One representative per conjugacy class of subgroups.
    let mut reps: BTreeMap<(usize, Vec<usize>), Subgroup> = BTreeMap::new();
    let mut canon_seen: HashSet<Vec<usize>> = HashSet::new();
    for h in found.iter().filter(|h| wanted(h.order())) {
        if canon_seen.contains(h.members()) {
            continue;
        }
        let mut best = h.members().to_vec();
        for g in 0..n {
            let c = h.conjugate_by(group, g);
            canon_seen.insert(c.members().to_vec());
            if c.members() < best.as_slice() {
                best = c.members().to_vec();
            }
        }
        reps.entry((h.order(), best.clone()))
            .or_insert_with(|| Subgroup::from_sorted_unchecked(n, best));
    }

    let reps: Vec<Subgroup> = reps.into_values().collect();
    let profiles: Vec<_> = reps.iter().map(|h| class_profile(group, classes, h)).collect();
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if reps[i].order() != reps[j].order() || profiles[i] != profiles[j] {
                continue;
            }
            let certificate = is_gassmann(group, classes, &reps[i], &reps[j])
                .expect("representatives are subgroups of the searched group");
            debug_assert!(certificate.is_nontrivial());
            pairs.push(GassmannPair {
                h1: reps[i].clone(),
                h2: reps[j].clone(),
                certificate,
            });
        }
    }
    Ok(pairs)
}

/// Checks the structural invariants of a certificate; used by tests and the
/// CLI before emitting a report.
pub fn certificate_is_consistent(cert: &GassmannCertificate) -> bool {
    let equal = cert.profile1 == cert.profile2;
    let identity_ok = cert.profile1.counts.first() == Some(&1) && cert.profile2.counts.first() == Some(&1);
    cert.is_gassmann == equal
        && identity_ok
        && cert.profile1.total() == cert.orders.h1
        && cert.profile2.total() == cert.orders.h2
        && (!cert.is_gassmann || (cert.orders.h1 == cert.orders.h2 && cert.char_check))
        && (cert.conjugacy_witness.is_none() || cert.is_gassmann)
}
