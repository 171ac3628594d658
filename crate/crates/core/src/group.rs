//! Fully enumerated finite permutation groups.
//!
//! Elements are stored in lexicographic order of their image arrays, so the
//! identity is always index 0. Every derived ordering (classes, cosets,
//! double cosets) is a function of these indices and is therefore
//! reproducible.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::PermError;
use crate::perm::Permutation;

/// Default upper bound on the order of an enumerated group.
pub const DEFAULT_CAP: usize = 100_000;

/// Groups up to this order keep a dense multiplication table.
const DENSE_MUL_LIMIT: usize = 4096;

/// Index of the identity element in every [`GroupTable`].
pub const IDENTITY: usize = 0;

#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    mul: Option<Vec<u32>>,
    inv: Vec<usize>,
    generator_indices: Vec<usize>,
}

impl GroupTable {
    /// Breadth-first closure of `generators` under composition.
    ///
    /// Fails with [`PermError::CapExceeded`] as soon as more than `cap`
    /// distinct elements have been produced.
    pub fn closure(generators: &[Permutation], cap: usize) -> Result<GroupTable, PermError> {
        let first = generators.first().ok_or(PermError::EmptyGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }

        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut found = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let y = g.compose_unchecked(&found[i]);
                if !seen.contains_key(&y) {
                    if found.len() >= cap {
                        return Err(PermError::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(found.len());
                    found.push(y);
                }
            }
        }

        found.sort();
        let lookup: HashMap<Permutation, usize> = found
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inv = found.iter().map(|p| lookup[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();

        let mut table = GroupTable {
            degree,
            elements: found,
            lookup,
            mul: None,
            inv,
            generator_indices,
        };
        let n = table.order();
        if n <= DENSE_MUL_LIMIT {
            let mut mul = Vec::with_capacity(n * n);
            for a in &table.elements {
                for b in &table.elements {
                    mul.push(table.lookup[&a.compose_unchecked(b)] as u32);
                }
            }
            table.mul = Some(mul);
        }
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// Index of `element(a) ∘ element(b)`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(table) => table[a * self.order() + b] as usize,
            None => self.lookup[&self.elements[a].compose_unchecked(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), PermError> {
        if index < self.order() {
            Ok(())
        } else {
            Err(PermError::IndexOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    /// Elements whose cycle-notation is listed, resolved to indices.
    pub fn indices_of(&self, perms: &[Permutation]) -> Option<Vec<usize>> {
        perms.iter().map(|p| self.index_of(p)).collect()
    }
}

/// Conjugacy classes, ordered by `(size, smallest member)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

pub fn conjugacy_classes(group: &GroupTable) -> ClassPartition {
    let n = group.order();
    let mut raw_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if raw_of[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let mut members = vec![start];
        raw_of[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in group.generator_indices() {
                let y = group.conjugate(g, x);
                if raw_of[y] == usize::MAX {
                    raw_of[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        raw.push(members);
    }
    // Generation order already sorts by smallest member; a stable sort by
    // size gives the (size, smallest member) order.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| raw[c].len());
    let mut class_of = vec![0; n];
    let mut classes = Vec::with_capacity(raw.len());
    for (new_id, &old) in order.iter().enumerate() {
        for &x in &raw[old] {
            class_of[x] = new_id;
        }
        classes.push(std::mem::take(&mut raw[old]));
    }
    ClassPartition { class_of, classes }
}

/// A subgroup of a [`GroupTable`], stored as a sorted member list plus a
/// membership mask over the parent's element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(group: &GroupTable) -> Subgroup {
        Self::from_sorted_unchecked(group.order(), vec![IDENTITY])
    }

    pub fn whole(group: &GroupTable) -> Subgroup {
        Self::from_sorted_unchecked(group.order(), (0..group.order()).collect())
    }

    /// Validates that `members` is a subgroup of `group`.
    pub fn from_members(group: &GroupTable, members: &[usize]) -> Result<Subgroup, PermError> {
        for &m in members {
            group.check_index(m)?;
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let h = Self::from_sorted_unchecked(group.order(), members);
        if !h.contains(IDENTITY) {
            return Err(PermError::NotASubgroup);
        }
        for &a in &h.members {
            if !h.contains(group.inv(a)) {
                return Err(PermError::NotASubgroup);
            }
            for &b in &h.members {
                if !h.contains(group.mul(a, b)) {
                    return Err(PermError::NotASubgroup);
                }
            }
        }
        Ok(h)
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub(crate) fn check_parent(&self, group: &GroupTable) -> Result<(), PermError> {
        if self.parent_order() == group.order() {
            Ok(())
        } else {
            Err(PermError::NotASubgroup)
        }
    }

    /// `g H g⁻¹`.
    pub fn conjugate_by(&self, group: &GroupTable, g: usize) -> Subgroup {
        let mut mask = vec![false; group.order()];
        for &h in &self.members {
            mask[group.conjugate(g, h)] = true;
        }
        Subgroup::from_mask(mask)
    }
}

/// Closure of the given elements inside `group`.
pub fn subgroup_from_generators(group: &GroupTable, gens: &[usize]) -> Result<Subgroup, PermError> {
    for &g in gens {
        group.check_index(g)?;
    }
    Ok(close_in(group, vec![false; group.order()], gens))
}

/// Extends `mask` (assumed to be a subgroup or empty) by `gens` and closes.
pub(crate) fn close_in(group: &GroupTable, mut mask: Vec<bool>, gens: &[usize]) -> Subgroup {
    let mut members: Vec<usize> = mask
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    if !mask[IDENTITY] {
        mask[IDENTITY] = true;
        members.push(IDENTITY);
    }
    // Left-multiplying every member by every generator closes a finite set.
    let mut all_gens: Vec<usize> = gens.to_vec();
    all_gens.extend(members.iter().copied().filter(|&m| m != IDENTITY));
    let mut i = 0;
    let mut queue: Vec<usize> = members.clone();
    while i < queue.len() {
        let x = queue[i];
        for &g in &all_gens {
            let y = group.mul(g, x);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
        i += 1;
    }
    Subgroup::from_mask(mask)
}

/// The left coset space `G/H` with its left `G`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    act: Vec<u32>,
}

impl CosetSpace {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Number of cosets, `[G:H]`.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Representatives in ascending order; each is the smallest element
    /// index of its coset.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Coset id of `gH`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// `g · (x-th coset)`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.index() + x] as usize
    }

    pub fn group_order(&self) -> usize {
        self.coset_of.len()
    }
}

pub fn left_cosets(group: &GroupTable, h: &Subgroup) -> Result<CosetSpace, PermError> {
    h.check_parent(group)?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::with_capacity(n / h.order().max(1));
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for &m in h.members() {
            let y = group.mul(g, m);
            if coset_of[y] != usize::MAX {
                return Err(PermError::NotASubgroup);
            }
            coset_of[y] = id;
        }
    }
    let index = reps.len();
    if index * h.order() != n {
        return Err(PermError::NotASubgroup);
    }
    let mut act = Vec::with_capacity(n * index);
    for g in 0..n {
        for &r in &reps {
            act.push(coset_of[group.mul(g, r)] as u32);
        }
    }
    Ok(CosetSpace {
        subgroup: h.clone(),
        reps,
        coset_of,
        act,
    })
}

/// Double cosets `H2 g H1`, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCosets {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl DoubleCosets {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn double_cosets(group: &GroupTable, h2: &Subgroup, h1: &Subgroup) -> Result<DoubleCosets, PermError> {
    h1.check_parent(group)?;
    h2.check_parent(group)?;
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for &a in h2.members() {
            let ag = group.mul(a, g);
            for &b in h1.members() {
                let x = group.mul(ag, b);
                if class_of[x] == usize::MAX {
                    class_of[x] = id;
                    members.push(x);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(DoubleCosets { class_of, classes })
}

/// First `g` in canonical order with `g H1 g⁻¹ = H2`.
pub fn are_conjugate_subgroups(group: &GroupTable, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
    if h1.order() != h2.order() {
        return None;
    }
    (0..group.order()).find(|&g| {
        h1.members()
            .iter()
            .all(|&h| h2.contains(group.conjugate(g, h)))
    })
}

/// Number of cosets fixed by `g`: the permutation character of `G/H` at `g`.
pub fn fixed_point_count(space: &CosetSpace, g: usize) -> usize {
    (0..space.index()).filter(|&x| space.act(g, x) == x).count()
}

/// The permutation character as a vector over all elements.
pub fn permutation_character(space: &CosetSpace) -> Vec<usize> {
    (0..space.group_order())
        .map(|g| fixed_point_count(space, g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn s3() -> GroupTable {
        let gens = [parse_cycles("(1 2)", 3).unwrap(), parse_cycles("(1 2 3)", 3).unwrap()];
        GroupTable::closure(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn s3_closure_is_sorted_with_identity_first() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.element(IDENTITY).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trivial_group() {
        let g = GroupTable::closure(&[Permutation::identity(4)], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(conjugacy_classes(&g).len(), 1);
    }

    #[test]
    fn closure_respects_cap() {
        let gens = [parse_cycles("(1 2)", 4).unwrap(), parse_cycles("(1 2 3 4)", 4).unwrap()];
        assert_eq!(
            GroupTable::closure(&gens, 10).unwrap_err(),
            PermError::CapExceeded { cap: 10 }
        );
        assert_eq!(GroupTable::closure(&gens, 24).unwrap().order(), 24);
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert_eq!(GroupTable::closure(&[], 10).unwrap_err(), PermError::EmptyGenerators);
        let gens = [Permutation::identity(2), Permutation::identity(3)];
        assert!(matches!(
            GroupTable::closure(&gens, 10),
            Err(PermError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let c = conjugacy_classes(&g);
        assert_eq!(c.sizes(), vec![1, 2, 3]);
        assert_eq!(c.classes[0], vec![IDENTITY]);
    }

    #[test]
    fn trivial_and_whole_subgroups() {
        let g = s3();
        assert_eq!(subgroup_from_generators(&g, &[]).unwrap().members(), &[IDENTITY]);
        let all = subgroup_from_generators(&g, g.generator_indices()).unwrap();
        assert_eq!(all, Subgroup::whole(&g));
        assert_eq!(
            subgroup_from_generators(&g, &[6]).unwrap_err(),
            PermError::IndexOutOfRange { index: 6, order: 6 }
        );
    }

    #[test]
    fn from_members_validates() {
        let g = s3();
        let t = g.index_of(&parse_cycles("(1 2)", 3).unwrap()).unwrap();
        assert!(Subgroup::from_members(&g, &[IDENTITY, t]).is_ok());
        assert_eq!(Subgroup::from_members(&g, &[t]).unwrap_err(), PermError::NotASubgroup);
        let c = g.index_of(&parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        assert_eq!(
            Subgroup::from_members(&g, &[IDENTITY, c]).unwrap_err(),
            PermError::NotASubgroup
        );
    }

    #[test]
    fn coset_edge_cases() {
        let g = s3();
        let whole = left_cosets(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.index(), 1);
        let triv = left_cosets(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(triv.index(), 6);
        assert_eq!(triv.reps(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn cosets_reject_foreign_subgroup() {
        let g = s3();
        let other = GroupTable::closure(&[parse_cycles("(1 2)", 2).unwrap()], 10).unwrap();
        let h = Subgroup::whole(&other);
        assert_eq!(left_cosets(&g, &h).unwrap_err(), PermError::NotASubgroup);
        assert_eq!(double_cosets(&g, &h, &h).unwrap_err(), PermError::NotASubgroup);
    }

    #[test]
    fn three_cycle_fixes_no_coset_of_transposition() {
        let g = s3();
        let t = g.index_of(&parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let c = g.index_of(&parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let h = subgroup_from_generators(&g, &[t]).unwrap();
        let x = left_cosets(&g, &h).unwrap();
        assert_eq!(fixed_point_count(&x, c), 0);
        assert_eq!(fixed_point_count(&x, IDENTITY), 3);
        let whole = left_cosets(&g, &Subgroup::whole(&g)).unwrap();
        assert!((0..6).all(|e| fixed_point_count(&whole, e) == 1));
    }

    #[test]
    fn double_coset_edge_cases() {
        let g = s3();
        let all = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &all, &all).unwrap().len(), 1);
        assert_eq!(double_cosets(&g, &triv, &triv).unwrap().len(), 6);
    }

    #[test]
    fn equal_subgroups_are_conjugate_by_identity() {
        let g = s3();
        let t = g.index_of(&parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let h = subgroup_from_generators(&g, &[t]).unwrap();
        assert_eq!(are_conjugate_subgroups(&g, &h, &h), Some(IDENTITY));
    }
}
