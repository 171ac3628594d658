#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use gassmann_core::group::{conjugacy_classes, left_cosets, ClassPartition, CosetSpace, GroupTable, Subgroup, DEFAULT_CAP};
use gassmann_core::input::{catalog_entry, CatalogEntry};
use gassmann_core::spectral::symmetrize;

pub type Images = Vec<usize>;

pub struct Fixture {
    pub entry: CatalogEntry,
    pub table: GroupTable,
    pub classes: ClassPartition,
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub x1: CosetSpace,
    pub x2: CosetSpace,
    /// Symmetrized default generating set.
    pub gens: Vec<usize>,
}

pub fn fixture(name: &str) -> Fixture {
    let entry = catalog_entry(name).unwrap();
    let loaded = entry.group.load(DEFAULT_CAP).unwrap();
    let h1 = loaded.subgroup(&entry.h1).unwrap();
    let h2 = loaded.subgroup(&entry.h2).unwrap();
    let raw = loaded.elements(&entry.default_gens).unwrap();
    let table = loaded.table;
    let gens = symmetrize(&table, &raw).unwrap();
    let x1 = left_cosets(&table, &h1).unwrap();
    let x2 = left_cosets(&table, &h2).unwrap();
    let classes = conjugacy_classes(&table);
    Fixture {
        entry,
        table,
        classes,
        h1,
        h2,
        x1,
        x2,
        gens,
    }
}

pub const CATALOG: [&str; 4] = ["gl32", "affine8", "s4", "s3"];
pub const POSITIVE: [&str; 2] = ["gl32", "affine8"];

pub fn images(table: &GroupTable, g: usize) -> Images {
    table.element(g).images().iter().map(|&v| v as usize).collect()
}

pub fn all_images(table: &GroupTable) -> Vec<Images> {
    (0..table.order()).map(|g| images(table, g)).collect()
}

/// `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Images {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert(p: &[usize]) -> Images {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Closure by repeated pairwise products until nothing new appears.
pub fn naive_closure(gens: &[Images]) -> BTreeSet<Images> {
    let degree = gens[0].len();
    let mut set: BTreeSet<Images> = gens.iter().cloned().collect();
    set.insert((0..degree).collect());
    loop {
        let current: Vec<Images> = set.iter().cloned().collect();
        let before = set.len();
        for a in &current {
            for b in &current {
                set.insert(compose(a, b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Conjugacy classes as sets of permutations, by full conjugation.
pub fn brute_classes(elements: &[Images]) -> BTreeSet<BTreeSet<Images>> {
    elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|g| compose(&compose(g, x), &invert(g)))
                .collect()
        })
        .collect()
}

/// `|C ∩ H|` for each class, listed in the order of `classes`.
pub fn brute_profile(classes: &BTreeSet<BTreeSet<Images>>, h: &BTreeSet<Images>) -> Vec<usize> {
    classes.iter().map(|c| c.intersection(h).count()).collect()
}

pub fn member_images(table: &GroupTable, h: &Subgroup) -> BTreeSet<Images> {
    h.members().iter().map(|&m| images(table, m)).collect()
}

/// Coset `xH` is fixed by `g` iff `x⁻¹ g x ∈ H`.
pub fn brute_fixed_points(table: &GroupTable, space: &CosetSpace, g: usize) -> usize {
    let h = member_images(table, space.subgroup());
    let gi = images(table, g);
    space
        .reps()
        .iter()
        .filter(|&&r| {
            let ri = images(table, r);
            h.contains(&compose(&compose(&invert(&ri), &gi), &ri))
        })
        .count()
}

/// All invertible 3×3 matrices over F2 acting on nonzero vectors, with the
/// vector `b0 + 2 b1 + 4 b2` labelled as point `b0 + 2 b1 + 4 b2` (0-indexed
/// point = value − 1).
pub fn gl32_matrix_group() -> BTreeSet<Images> {
    let mut out = BTreeSet::new();
    for bits in 0u32..512 {
        // columns c0, c1, c2 as 3-bit vectors
        let cols = [(bits & 7) as usize, ((bits >> 3) & 7) as usize, ((bits >> 6) & 7) as usize];
        let apply = |v: usize| -> usize {
            (0..3).filter(|k| v >> k & 1 == 1).fold(0, |acc, k| acc ^ cols[k])
        };
        let img: Images = (1..8).map(apply).collect();
        if img.contains(&0) {
            continue;
        }
        let set: BTreeSet<usize> = img.iter().copied().collect();
        if set.len() == 7 {
            out.insert(img.iter().map(|&v| v - 1).collect());
        }
    }
    out
}

/// Maps `x ↦ a x + b` on `Z/8`, with residue `x` as 0-indexed point `x`.
pub fn affine8_map(a: usize, b: usize) -> Images {
    (0..8).map(|x| (a * x + b) % 8).collect()
}

pub fn affine8_group() -> BTreeSet<Images> {
    [1, 3, 5, 7]
        .iter()
        .flat_map(|&a| (0..8).map(move |b| affine8_map(a, b)))
        .collect()
}

pub fn index_map(table: &GroupTable) -> HashMap<Images, usize> {
    (0..table.order()).map(|g| (images(table, g), g)).collect()
}

/// Determinant by permutation expansion, for small matrices.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][p[i]] as i128).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Permutation matrix of `g` on a coset space: `P[g·x][x] = 1`.
pub fn coset_matrix(space: &CosetSpace, g: usize) -> Vec<Vec<i64>> {
    let n = space.index();
    let mut m = vec![vec![0; n]; n];
    for x in 0..n {
        m[space.act(g, x)][x] = 1;
    }
    m
}

pub fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}
