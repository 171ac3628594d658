//! Cayley graphs, Schreier quotients and exact spectral invariants.
//!
//! A symmetric generating set `S` turns `G` into a Cayley graph with an
//! edge `x → x·s` for every `s ∈ S`; left multiplication by `G` permutes
//! the vertices freely and preserves edges. Quotienting by a subgroup `H`
//! acting on the left gives the Schreier graph on right cosets `Hx`.
//!
//! The Laplacian is `L = |S|·I − A`, so loops contribute nothing to it.
//! Spectral verdicts compare exact integer polynomials; the float spectra
//! are only for display.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::SpectralError;
use crate::group::{subgroup_from_generators, CosetSpace, GroupTable, Subgroup, IDENTITY};
use crate::linalg::{bareiss_det, interpolate_integer};
use crate::transplant::Intertwiner;

/// Multigraph on `n` vertices; `adj[i][j]` counts generator-labelled edges
/// `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub n: usize,
    pub adj: Vec<Vec<u32>>,
    pub generator_count: usize,
}

impl LabeledGraph {
    /// Builds a graph from an explicit adjacency matrix.
    pub fn from_adjacency(adj: Vec<Vec<u32>>, generator_count: usize) -> LabeledGraph {
        LabeledGraph {
            n: adj.len(),
            adj,
            generator_count,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.adj[i][j] == self.adj[j][i]))
    }

    pub fn is_regular(&self) -> bool {
        self.adj
            .iter()
            .all(|r| r.iter().map(|&v| v as usize).sum::<usize>() == self.generator_count)
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let k = self.generator_count as i64;
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| i64::from(i == j) * k - i64::from(self.adj[i][j]))
                    .collect()
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if self.adj[v][w] > 0 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Disjoint union; the generator count must agree.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> LabeledGraph {
        let n = self.n + other.n;
        let mut adj = vec![vec![0; n]; n];
        for i in 0..self.n {
            adj[i][..self.n].copy_from_slice(&self.adj[i]);
        }
        for i in 0..other.n {
            adj[self.n + i][self.n..].copy_from_slice(&other.adj[i]);
        }
        LabeledGraph {
            n,
            adj,
            generator_count: self.generator_count,
        }
    }

    /// Graphviz rendering: one record per unordered vertex pair `{i, j}`
    /// (including loops) with a nonzero count, labelled by the count.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
        for i in 0..self.n {
            let _ = writeln!(out, "  v{i};");
        }
        for i in 0..self.n {
            for j in i..self.n {
                let m = self.adj[i][j];
                if m > 0 {
                    let _ = writeln!(out, "  v{i} -- v{j} [label=\"{m}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Number of edge records [`Self::to_dot`] emits.
    pub fn edge_record_count(&self) -> usize {
        (0..self.n)
            .map(|i| (i..self.n).filter(|&j| self.adj[i][j] > 0).count())
            .sum()
    }
}

/// Checks that `s` is a multiset of valid non-identity elements closed
/// under inversion (with multiplicity).
pub fn validate_generating_set(group: &GroupTable, s: &[usize]) -> Result<(), SpectralError> {
    for &x in s {
        if x >= group.order() {
            return Err(SpectralError::IndexOutOfRange {
                index: x,
                order: group.order(),
            });
        }
        if x == IDENTITY {
            return Err(SpectralError::IdentityInGeneratingSet);
        }
    }
    for &x in s {
        let inv = group.inv(x);
        let fwd = s.iter().filter(|&&y| y == x).count();
        let back = s.iter().filter(|&&y| y == inv).count();
        if fwd != back {
            return Err(SpectralError::NotSymmetric { element: x });
        }
    }
    Ok(())
}

/// Adds missing inverses and sorts; duplicates are removed.
pub fn symmetrize(group: &GroupTable, gens: &[usize]) -> Result<Vec<usize>, SpectralError> {
    let mut s: Vec<usize> = Vec::with_capacity(2 * gens.len());
    for &g in gens {
        if g >= group.order() {
            return Err(SpectralError::IndexOutOfRange {
                index: g,
                order: group.order(),
            });
        }
        if g == IDENTITY {
            return Err(SpectralError::IdentityInGeneratingSet);
        }
        s.push(g);
        s.push(group.inv(g));
    }
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Whether `s` generates all of `group`.
pub fn generates(group: &GroupTable, s: &[usize]) -> bool {
    subgroup_from_generators(group, s).is_ok_and(|h| h.order() == group.order())
}

/// Vertices are the elements of `G`, with `adj[x][y] = #{s : x·s = y}`.
pub fn cayley_graph(group: &GroupTable, s: &[usize]) -> Result<LabeledGraph, SpectralError> {
    validate_generating_set(group, s)?;
    let n = group.order();
    let mut adj = vec![vec![0u32; n]; n];
    for (x, row) in adj.iter_mut().enumerate() {
        for &g in s {
            row[group.mul(x, g)] += 1;
        }
    }
    Ok(LabeledGraph {
        n,
        adj,
        generator_count: s.len(),
    })
}

/// Schreier graph on the right cosets `Hx`.
///
/// Vertex `i` is the right coset `H·rep_i⁻¹`, where `rep_i` is the `i`-th
/// left-coset representative of `space`. Right cosets therefore share the
/// indexing of `G/H` used by intertwiners.
pub fn schreier_on_cosets(
    group: &GroupTable,
    space: &CosetSpace,
    s: &[usize],
) -> Result<LabeledGraph, SpectralError> {
    validate_generating_set(group, s)?;
    let n = space.index();
    let mut adj = vec![vec![0u32; n]; n];
    // H·rep⁻¹·s corresponds to the left coset s⁻¹·rep·H.
    for (i, row) in adj.iter_mut().enumerate() {
        for &g in s {
            row[space.act(group.inv(g), i)] += 1;
        }
    }
    Ok(LabeledGraph {
        n,
        adj,
        generator_count: s.len(),
    })
}

pub fn schreier_quotient(group: &GroupTable, h: &Subgroup, s: &[usize]) -> Result<LabeledGraph, SpectralError> {
    let space = crate::group::left_cosets(group, h).map_err(|_| SpectralError::BasisMismatch)?;
    schreier_on_cosets(group, &space, s)
}

fn det_of(m: Vec<Vec<BigInt>>) -> BigInt {
    bareiss_det(m)
}

/// Coefficients (constant term first) of `det(xI − L)`, recovered exactly
/// from its values at `x = 0, …, n`.
pub fn laplacian_charpoly(g: &LabeledGraph) -> Vec<BigInt> {
    let lap = g.laplacian();
    let xs: Vec<BigInt> = (0..=g.n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            det_of(
                (0..g.n)
                    .map(|i| {
                        (0..g.n)
                            .map(|j| {
                                let diag = if i == j { x.clone() } else { BigInt::zero() };
                                diag - lap[i][j]
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    interpolate_integer(&xs, &ys).expect("characteristic polynomial of an integer matrix is integral")
}

/// `det(I − A·u + (D − I)·u²)` evaluated at a rational `u`.
pub fn ihara_determinant_at(g: &LabeledGraph, u: &BigRational) -> BigRational {
    let d = BigRational::from_integer(BigInt::from(g.generator_count));
    let u2 = u * u;
    let m = crate::linalg::QMatrix::from_fn(g.n, g.n, |i, j| {
        let a = BigRational::from_integer(BigInt::from(g.adj[i][j]));
        let mut v = -(a * u);
        if i == j {
            v += BigRational::one() + (&d - BigRational::one()) * &u2;
        }
        v
    });
    m.det()
}

/// Coefficients (constant term first) of `det(I − A·u + (D − I)·u²)` with
/// `D = |S|·I`, recovered from its values at `u = 0, …, 2n`. Trailing zero
/// coefficients are dropped.
pub fn ihara_zeta_poly(g: &LabeledGraph) -> Vec<BigInt> {
    let dm1 = g.generator_count as i64 - 1;
    let us: Vec<BigInt> = (0..=2 * g.n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = us
        .iter()
        .map(|u| {
            let u2 = u * u;
            det_of(
                (0..g.n)
                    .map(|i| {
                        (0..g.n)
                            .map(|j| {
                                let mut v = -(u * BigInt::from(g.adj[i][j]));
                                if i == j {
                                    v += BigInt::one() + &u2 * dm1;
                                }
                                v
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    let mut coeffs = interpolate_integer(&us, &ys).expect("integer polynomial");
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Sorted Laplacian eigenvalues in floating point, for display only.
pub fn float_spectrum(g: &LabeledGraph) -> Vec<f64> {
    let lap = g.laplacian();
    let m = DMatrix::from_fn(g.n, g.n, |i, j| lap[i][j] as f64);
    let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub charpoly1: Vec<BigInt>,
    pub charpoly2: Vec<BigInt>,
    pub equal: bool,
    pub float_spectra: Option<(Vec<f64>, Vec<f64>)>,
}

pub fn isospectral_verdict(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    with_float_spectra: bool,
) -> Result<SpectralReport, SpectralError> {
    if g1.generator_count != g2.generator_count {
        return Err(SpectralError::RegularityMismatch {
            left: g1.generator_count,
            right: g2.generator_count,
        });
    }
    let charpoly1 = laplacian_charpoly(g1);
    let charpoly2 = laplacian_charpoly(g2);
    let equal = charpoly1 == charpoly2;
    let float_spectra = with_float_spectra.then(|| (float_spectrum(g1), float_spectrum(g2)));
    Ok(SpectralReport {
        charpoly1,
        charpoly2,
        equal,
        float_spectra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub poly1: Vec<BigInt>,
    pub poly2: Vec<BigInt>,
    pub equal: bool,
}

pub fn zeta_verdict(g1: &LabeledGraph, g2: &LabeledGraph) -> ZetaReport {
    let poly1 = ihara_zeta_poly(g1);
    let poly2 = ihara_zeta_poly(g2);
    let equal = poly1 == poly2;
    ZetaReport { poly1, poly2, equal }
}

/// Exact check of `S·L1 = L2·S` with `Li` the Schreier Laplacians on the
/// coset bases of `x1` and `x2`.
pub fn verify_transplantation_on_graphs(
    group: &GroupTable,
    x1: &CosetSpace,
    x2: &CosetSpace,
    s_gens: &[usize],
    intertwiner: &Intertwiner,
) -> Result<bool, SpectralError> {
    if !intertwiner.matches(x1, x2) {
        return Err(SpectralError::BasisMismatch);
    }
    let l1 = schreier_on_cosets(group, x1, s_gens)?.laplacian();
    let l2 = schreier_on_cosets(group, x2, s_gens)?.laplacian();
    let s = &intertwiner.matrix;
    Ok(int_mul(s, &l1) == int_mul(&l2, s))
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()
        })
        .collect()
}

/// Default vertex limit for [`graphs_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 12;

/// First bijection `f` (lexicographically) with
/// `g1.adj[i][j] == g2.adj[f(i)][f(j)]` for all `i`, `j`.
pub fn graphs_isomorphic(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    cap: usize,
) -> Result<Option<Vec<usize>>, SpectralError> {
    let n = g1.n.max(g2.n);
    if n > cap {
        return Err(SpectralError::TooLarge { n, cap });
    }
    if g1.n != g2.n {
        return Ok(None);
    }
    let mut image = Vec::with_capacity(g1.n);
    let mut used = vec![false; g1.n];
    Ok(extend_isomorphism(g1, g2, &mut image, &mut used).then_some(image))
}

fn extend_isomorphism(g1: &LabeledGraph, g2: &LabeledGraph, image: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = image.len();
    if i == g1.n {
        return true;
    }
    for cand in 0..g2.n {
        if used[cand] {
            continue;
        }
        let consistent = g1.adj[i][i] == g2.adj[cand][cand]
            && image
                .iter()
                .enumerate()
                .all(|(j, &fj)| g1.adj[i][j] == g2.adj[cand][fj] && g1.adj[j][i] == g2.adj[fj][cand]);
        if !consistent {
            continue;
        }
        image.push(cand);
        used[cand] = true;
        if extend_isomorphism(g1, g2, image, used) {
            return true;
        }
        image.pop();
        used[cand] = false;
    }
    false
}

/// A random symmetric generating set: `picks` non-identity elements drawn
/// uniformly, closed under inversion, resampled until it generates `G`
/// (up to `attempts` times).
pub fn random_generating_set<R: Rng>(group: &GroupTable, picks: usize, attempts: usize, rng: &mut R) -> Option<Vec<usize>> {
    if group.order() < 2 {
        return None;
    }
    let pool: Vec<usize> = (1..group.order()).collect();
    for _ in 0..attempts {
        let chosen: Vec<usize> = (0..picks).map(|_| *pool.choose(rng).expect("nonempty pool")).collect();
        let s = symmetrize(group, &chosen).expect("pool excludes the identity");
        if generates(group, &s) {
            return Some(s);
        }
    }
    None
}
