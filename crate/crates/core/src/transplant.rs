//! Intertwiners between permutation modules and the transplantation maps
//! they induce on invariant vectors.
//!
//! Conventions: an intertwiner `S: ℚ[G/H1] → ℚ[G/H2]` is a
//! `[G:H2] × [G:H1]` integer matrix with `S[y][x]` the coefficient of `e_y`
//! in `S(e_x)`. The pair of cosets `(aH2, bH1)` lies over the double coset
//! `H2 a⁻¹ b H1`, and `phi` assigns one integer to each double coset. With
//! this orientation the operator `v ↦ (1/|H1|) Σ_g phi[H2 g H1] g·v` equals
//! the Frobenius-reciprocity composite exactly.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::TransplantError;
use crate::group::{double_cosets, CosetSpace, DoubleCosets, GroupTable, Subgroup, IDENTITY};
use crate::linalg::{bareiss_det, EchelonBasis, QMatrix};

/// One 0/1 matrix per orbit of `G` on `(G/H2) × (G/H1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerBasis {
    rows: usize,
    cols: usize,
    /// Orbit id of each pair, row-major.
    orbit_of: Vec<usize>,
    /// Orbit id → double-coset id in `H2\G/H1`.
    pub orbit_to_double_coset: Vec<usize>,
    /// Double-coset id → orbit id.
    double_coset_to_orbit: Vec<usize>,
    row_reps: Vec<usize>,
    col_reps: Vec<usize>,
}

impl IntertwinerBasis {
    pub fn len(&self) -> usize {
        self.orbit_to_double_coset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit_to_double_coset.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Indicator matrix of orbit `k`.
    pub fn matrix(&self, k: usize) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|y| {
                (0..self.cols)
                    .map(|x| i64::from(self.orbit_of[y * self.cols + x] == k))
                    .collect()
            })
            .collect()
    }

    pub fn matrices(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.len()).map(|k| self.matrix(k)).collect()
    }

    pub fn orbit_of(&self, y: usize, x: usize) -> usize {
        self.orbit_of[y * self.cols + x]
    }

    /// `Σ_d phi[d] · M_{orbit(d)}`.
    pub fn combine(&self, phi: &[i64]) -> Vec<Vec<i64>> {
        assert_eq!(phi.len(), self.len(), "phi must have one entry per double coset");
        (0..self.rows)
            .map(|y| {
                (0..self.cols)
                    .map(|x| phi[self.orbit_to_double_coset[self.orbit_of(y, x)]])
                    .collect()
            })
            .collect()
    }

    pub fn intertwiner(&self, phi: Vec<i64>) -> Intertwiner {
        let matrix = self.combine(&phi);
        let det = if self.rows == self.cols {
            bareiss_det(
                matrix
                    .iter()
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
            )
        } else {
            BigInt::zero()
        };
        Intertwiner {
            phi,
            matrix,
            det,
            row_reps: self.row_reps.clone(),
            col_reps: self.col_reps.clone(),
        }
    }

    /// Orbit id containing the pair over the identity double coset.
    pub fn identity_double_coset(&self) -> usize {
        self.orbit_to_double_coset[self.orbit_of(0, 0)]
    }

    pub fn double_coset_to_orbit(&self) -> &[usize] {
        &self.double_coset_to_orbit
    }
}

pub fn intertwiner_basis(
    group: &GroupTable,
    x1: &CosetSpace,
    x2: &CosetSpace,
) -> Result<IntertwinerBasis, TransplantError> {
    if x1.group_order() != group.order() || x2.group_order() != group.order() {
        return Err(TransplantError::DimensionMismatch(
            "coset spaces belong to a different group".into(),
        ));
    }
    let dcs = double_cosets(group, x2.subgroup(), x1.subgroup())
        .map_err(|e| TransplantError::DimensionMismatch(e.to_string()))?;
    let (rows, cols) = (x2.index(), x1.index());
    let mut orbit_of = vec![usize::MAX; rows * cols];
    let mut orbit_to_double_coset = Vec::new();
    // Pairs scanned in lexicographic order, so each orbit is numbered by its
    // minimal pair.
    for y0 in 0..rows {
        for x0 in 0..cols {
            if orbit_of[y0 * cols + x0] != usize::MAX {
                continue;
            }
            let id = orbit_to_double_coset.len();
            orbit_of[y0 * cols + x0] = id;
            let mut stack = vec![(y0, x0)];
            while let Some((y, x)) = stack.pop() {
                for &g in group.generator_indices() {
                    let (gy, gx) = (x2.act(g, y), x1.act(g, x));
                    if orbit_of[gy * cols + gx] == usize::MAX {
                        orbit_of[gy * cols + gx] = id;
                        stack.push((gy, gx));
                    }
                }
            }
            let a = x2.reps()[y0];
            let b = x1.reps()[x0];
            orbit_to_double_coset.push(dcs.class_of[group.mul(group.inv(a), b)]);
        }
    }
    let mut double_coset_to_orbit = vec![usize::MAX; dcs.len()];
    for (k, &d) in orbit_to_double_coset.iter().enumerate() {
        double_coset_to_orbit[d] = k;
    }
    debug_assert_eq!(orbit_to_double_coset.len(), dcs.len());
    Ok(IntertwinerBasis {
        rows,
        cols,
        orbit_of,
        orbit_to_double_coset,
        double_coset_to_orbit,
        row_reps: x2.reps().to_vec(),
        col_reps: x1.reps().to_vec(),
    })
}

/// An integral `G`-equivariant map `ℚ[G/H1] → ℚ[G/H2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    /// One coefficient per double coset `H2\G/H1`.
    pub phi: Vec<i64>,
    /// `[G:H2] × [G:H1]`, row-major.
    pub matrix: Vec<Vec<i64>>,
    pub det: BigInt,
    pub(crate) row_reps: Vec<usize>,
    pub(crate) col_reps: Vec<usize>,
}

impl Intertwiner {
    pub fn max_norm(&self) -> i64 {
        self.phi.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det.is_zero()
    }

    /// Whether the row and column cosets are those of `x2` and `x1`.
    pub fn matches(&self, x1: &CosetSpace, x2: &CosetSpace) -> bool {
        self.col_reps == x1.reps() && self.row_reps == x2.reps()
    }

    /// `matrix[g·y][g·x] == matrix[y][x]` for every generator `g`.
    pub fn is_equivariant(&self, group: &GroupTable, x1: &CosetSpace, x2: &CosetSpace) -> bool {
        self.matches(x1, x2)
            && group.generator_indices().iter().all(|&g| {
                (0..x2.index()).all(|y| {
                    (0..x1.index())
                        .all(|x| self.matrix[x2.act(g, y)][x1.act(g, x)] == self.matrix[y][x])
                })
            })
    }

    /// Same map with the matrix replaced; used to build negative controls.
    pub fn with_matrix(&self, matrix: Vec<Vec<i64>>) -> Intertwiner {
        Intertwiner {
            matrix,
            ..self.clone()
        }
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_integers(&self.matrix)
    }
}

/// Budgets for [`find_invertible_intertwiner`].
#[derive(Clone, Copy, Debug)]
pub struct IntertwinerSearch {
    /// Scan every vector with entries in `[-c, c]` for `c = 1..=max_norm`.
    pub max_norm: i64,
    /// Stop the systematic scan after this many candidates.
    pub scan_budget: usize,
    /// Seeded random candidates tried after the scan.
    pub random_tries: usize,
    /// Entries of random candidates are drawn from `[-random_bound, random_bound]`.
    pub random_bound: i64,
    pub seed: u64,
}

impl Default for IntertwinerSearch {
    fn default() -> Self {
        IntertwinerSearch {
            max_norm: 3,
            scan_budget: 100_000,
            random_tries: 64,
            random_bound: 9,
            seed: 0,
        }
    }
}

/// Entries ordered `0, 1, -1, 2, -2, …`; vectors are compared
/// lexicographically in that order, first coordinate most significant.
fn entry_for_rank(rank: usize) -> i64 {
    if rank == 0 {
        0
    } else if rank % 2 == 1 {
        rank.div_ceil(2) as i64
    } else {
        -((rank / 2) as i64)
    }
}

/// Advances `digits` (each in `0..base`) to the next vector in lexicographic
/// order. Returns false once exhausted.
fn next_digits(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Smallest max-norm integer combination of the basis that is invertible.
///
/// Candidates of max-norm `c` are scanned for `c = 1, 2, …` before any of
/// norm `c + 1`; the first invertible one in scan order is returned. After
/// the scan (or its budget) is exhausted, seeded random vectors are tried.
pub fn find_invertible_intertwiner(
    basis: &IntertwinerBasis,
    search: IntertwinerSearch,
) -> Result<Intertwiner, TransplantError> {
    let k = basis.len();
    if k == 0 {
        return Err(TransplantError::EmptyBasis);
    }
    let exhausted = |scanned, random_tries| TransplantError::NoInvertibleFound {
        scanned,
        max_norm: search.max_norm,
        random_tries,
    };
    if basis.rows != basis.cols {
        return Err(exhausted(0, 0));
    }

    let mut scanned = 0;
    'scan: for c in 1..=search.max_norm {
        let base = 2 * c as usize + 1;
        let mut digits = vec![0usize; k];
        loop {
            let phi: Vec<i64> = digits.iter().map(|&r| entry_for_rank(r)).collect();
            if phi.iter().any(|v| v.abs() == c) {
                if scanned >= search.scan_budget {
                    break 'scan;
                }
                scanned += 1;
                let candidate = basis.intertwiner(phi);
                if candidate.is_invertible() {
                    return Ok(candidate);
                }
            }
            if !next_digits(&mut digits, base) {
                break;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.random_tries {
        let phi: Vec<i64> = (0..k)
            .map(|_| rng.random_range(-search.random_bound..=search.random_bound))
            .collect();
        let candidate = basis.intertwiner(phi);
        if candidate.is_invertible() {
            return Ok(candidate);
        }
    }
    Err(exhausted(scanned, search.random_tries))
}

/// How a [`GModule`] stores its action.
#[derive(Clone, Debug)]
enum Action {
    /// `rho(g) e_i = e_{images[g][i]}`.
    Permutation(Vec<Vec<usize>>),
    Matrices(Vec<QMatrix>),
}

/// A finite-dimensional rational representation of a [`GroupTable`].
#[derive(Clone, Debug)]
pub struct GModule {
    dim: usize,
    action: Action,
}

impl GModule {
    /// Functions on `G` with `(g·f)(x) = f(g⁻¹x)`, i.e. `g·e_x = e_{gx}`.
    pub fn regular(group: &GroupTable) -> GModule {
        let n = group.order();
        let images = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
        GModule {
            dim: n,
            action: Action::Permutation(images),
        }
    }

    /// The defining action on `degree` points.
    pub fn natural(group: &GroupTable) -> GModule {
        let images = group
            .elements()
            .iter()
            .map(|p| (0..group.degree()).map(|i| p.apply(i)).collect())
            .collect();
        GModule {
            dim: group.degree(),
            action: Action::Permutation(images),
        }
    }

    /// The permutation module `ℚ[G/H]`.
    pub fn cosets(space: &CosetSpace) -> GModule {
        let images = (0..space.group_order())
            .map(|g| (0..space.index()).map(|x| space.act(g, x)).collect())
            .collect();
        GModule {
            dim: space.index(),
            action: Action::Permutation(images),
        }
    }

    pub fn trivial(group: &GroupTable) -> GModule {
        GModule {
            dim: 1,
            action: Action::Permutation(vec![vec![0]; group.order()]),
        }
    }

    /// Checks `rho(e) = I` and `rho(s·h) = rho(s) rho(h)` for every
    /// generator `s` and every `h`, which forces the homomorphism property.
    pub fn from_matrices(group: &GroupTable, rho: Vec<QMatrix>) -> Result<GModule, TransplantError> {
        if rho.len() != group.order() {
            return Err(TransplantError::NotAModule(format!(
                "{} matrices for a group of order {}",
                rho.len(),
                group.order()
            )));
        }
        let dim = rho[IDENTITY].rows();
        if rho.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(TransplantError::NotAModule("matrices are not all dim × dim".into()));
        }
        if rho[IDENTITY] != QMatrix::identity(dim) {
            return Err(TransplantError::NotAModule("identity does not act trivially".into()));
        }
        for &s in group.generator_indices() {
            for h in 0..group.order() {
                if rho[group.mul(s, h)] != rho[s].mul(&rho[h]) {
                    return Err(TransplantError::NotAModule(format!(
                        "rho({s}·{h}) != rho({s}) rho({h})"
                    )));
                }
            }
        }
        Ok(GModule {
            dim,
            action: Action::Matrices(rho),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> QMatrix {
        match &self.action {
            Action::Permutation(images) => {
                let mut m = QMatrix::zeros(self.dim, self.dim);
                for (i, &j) in images[g].iter().enumerate() {
                    m.set(j, i, BigRational::one());
                }
                m
            }
            Action::Matrices(ms) => ms[g].clone(),
        }
    }

    pub fn apply(&self, g: usize, v: &[BigRational]) -> Vec<BigRational> {
        match &self.action {
            Action::Permutation(images) => {
                let mut out = vec![BigRational::zero(); self.dim];
                for (i, &j) in images[g].iter().enumerate() {
                    out[j] = v[i].clone();
                }
                out
            }
            Action::Matrices(ms) => ms[g].mul_vec(v),
        }
    }

    /// `rho(g) · m`.
    pub fn left_mul(&self, g: usize, m: &QMatrix) -> QMatrix {
        match &self.action {
            Action::Permutation(images) => {
                let mut out = QMatrix::zeros(m.rows(), m.cols());
                for (i, &j) in images[g].iter().enumerate() {
                    for c in 0..m.cols() {
                        out.set(j, c, m.get(i, c).clone());
                    }
                }
                out
            }
            Action::Matrices(ms) => ms[g].mul(m),
        }
    }

    /// `m · rho(g)`.
    pub fn right_mul(&self, m: &QMatrix, g: usize) -> QMatrix {
        match &self.action {
            Action::Permutation(images) => {
                // (m · rho(g))[r][i] = m[r][images[g][i]]
                QMatrix::from_fn(m.rows(), m.cols(), |r, i| m.get(r, images[g][i]).clone())
            }
            Action::Matrices(ms) => m.mul(&ms[g]),
        }
    }

    /// `Σ_{g ∈ elements} rho(g)`.
    pub fn element_sum(&self, elements: &[usize]) -> QMatrix {
        let mut sum = QMatrix::zeros(self.dim, self.dim);
        match &self.action {
            Action::Permutation(images) => {
                for &g in elements {
                    for (i, &j) in images[g].iter().enumerate() {
                        let v = sum.get(j, i) + BigRational::one();
                        sum.set(j, i, v);
                    }
                }
            }
            Action::Matrices(ms) => {
                for &g in elements {
                    sum = sum.add(&ms[g]);
                }
            }
        }
        sum
    }
}

/// `P_H = (1/|H|) Σ_{h ∈ H} rho(h)`.
pub fn invariant_projector(module: &GModule, h: &Subgroup) -> QMatrix {
    let scale = BigRational::new(BigInt::one(), BigInt::from(h.order()));
    module.element_sum(h.members()).scale(&scale)
}

/// Basis of `V^H` by exact column reduction of `P_H`.
pub fn invariant_basis(module: &GModule, h: &Subgroup) -> EchelonBasis {
    EchelonBasis::column_space(&invariant_projector(module, h))
}

fn is_invariant(module: &GModule, h: &Subgroup, v: &[BigRational]) -> bool {
    h.members().iter().all(|&m| module.apply(m, v) == v)
}

/// `v ↦ Σ_{x ∈ G/H} rho(rep_x) v ⊗ e_x`, returned as a `dim × [G:H]`
/// matrix whose column `x` is the `e_x` component.
pub fn frobenius_embed(
    module: &GModule,
    space: &CosetSpace,
    v: &[BigRational],
) -> Result<QMatrix, TransplantError> {
    if v.len() != module.dim() {
        return Err(TransplantError::DimensionMismatch(format!(
            "vector of length {} in a module of dimension {}",
            v.len(),
            module.dim()
        )));
    }
    if !is_invariant(module, space.subgroup(), v) {
        return Err(TransplantError::NotInvariant);
    }
    let columns: Vec<Vec<BigRational>> = space.reps().iter().map(|&r| module.apply(r, v)).collect();
    Ok(QMatrix::from_columns(module.dim(), &columns))
}

/// Whether a tensor in `V ⊗ ℚ[G/H]` (as returned by [`frobenius_embed`]) is
/// fixed by every generator: `T[:, g·x] = rho(g) T[:, x]`.
pub fn is_tensor_invariant(group: &GroupTable, module: &GModule, space: &CosetSpace, t: &QMatrix) -> bool {
    group.generator_indices().iter().all(|&g| {
        (0..space.index()).all(|x| module.apply(g, &t.column(x)) == t.column(space.act(g, x)))
    })
}

/// The transplantation `V^{H1} → V^{H2}` in the echelon bases of the two
/// invariant subspaces.
#[derive(Clone, Debug)]
pub struct Transplantation {
    pub source: EchelonBasis,
    pub target: EchelonBasis,
    /// `dim V^{H2} × dim V^{H1}`.
    pub matrix: QMatrix,
}

impl Transplantation {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Weight of `g` in the operator form: `phi` at the double coset `H2 g H1`.
fn operator_weight(dcs: &DoubleCosets, phi: &[i64], g: usize) -> i64 {
    phi[dcs.class_of[g]]
}

fn check_intertwiner(x1: &CosetSpace, x2: &CosetSpace, s: &Intertwiner) -> Result<(), TransplantError> {
    if s.matches(x1, x2) {
        Ok(())
    } else {
        Err(TransplantError::DimensionMismatch(
            "intertwiner was built for different coset spaces".into(),
        ))
    }
}

fn coordinates_or_err(basis: &EchelonBasis, v: &[BigRational]) -> Result<Vec<BigRational>, TransplantError> {
    basis.coordinates(v).ok_or_else(|| {
        TransplantError::DimensionMismatch("image is not in the target invariant subspace".into())
    })
}

/// Operator form: `T v = P_{H2} (1/|H1|) Σ_g phi[H2 g H1] rho(g) v`.
pub fn transplant_operator_form(
    group: &GroupTable,
    module: &GModule,
    x1: &CosetSpace,
    x2: &CosetSpace,
    s: &Intertwiner,
) -> Result<Transplantation, TransplantError> {
    check_intertwiner(x1, x2, s)?;
    let (h1, h2) = (x1.subgroup(), x2.subgroup());
    let dcs = double_cosets(group, h2, h1).map_err(|e| TransplantError::DimensionMismatch(e.to_string()))?;
    let source = invariant_basis(module, h1);
    let target = invariant_basis(module, h2);
    let p2 = invariant_projector(module, h2);
    let inv_h1 = BigRational::new(BigInt::one(), BigInt::from(h1.order()));

    let mut columns = Vec::with_capacity(source.dim());
    for j in 0..source.dim() {
        let b = source.basis.column(j);
        let mut acc = vec![BigRational::zero(); module.dim()];
        for g in 0..group.order() {
            let w = operator_weight(&dcs, &s.phi, g);
            if w == 0 {
                continue;
            }
            let w = BigRational::from_integer(w.into());
            for (a, v) in acc.iter_mut().zip(module.apply(g, &b)) {
                if !v.is_zero() {
                    *a += &w * v;
                }
            }
        }
        let acc: Vec<BigRational> = acc.into_iter().map(|a| a * &inv_h1).collect();
        columns.push(coordinates_or_err(&target, &p2.mul_vec(&acc))?);
    }
    let matrix = QMatrix::from_columns(target.dim(), &columns);
    Ok(Transplantation { source, target, matrix })
}

/// Composite form: embed `v` into `[V ⊗ ℚ[G/H1]]^G`, apply `id ⊗ S`, and
/// read off the component at the identity coset of `G/H2`.
pub fn transplant_composite_form(
    group: &GroupTable,
    module: &GModule,
    x1: &CosetSpace,
    x2: &CosetSpace,
    s: &Intertwiner,
) -> Result<Transplantation, TransplantError> {
    check_intertwiner(x1, x2, s)?;
    let source = invariant_basis(module, x1.subgroup());
    let target = invariant_basis(module, x2.subgroup());
    let s_t = s.to_qmatrix().transpose();
    let home = x2.coset_of(IDENTITY);

    let mut columns = Vec::with_capacity(source.dim());
    for j in 0..source.dim() {
        let t1 = frobenius_embed(module, x1, &source.basis.column(j))?;
        let t2 = t1.mul(&s_t);
        debug_assert!(is_tensor_invariant(group, module, x2, &t2));
        columns.push(coordinates_or_err(&target, &t2.column(home))?);
    }
    let matrix = QMatrix::from_columns(target.dim(), &columns);
    Ok(Transplantation { source, target, matrix })
}

/// The transplantation induced by `s`; fails unless it is an isomorphism.
pub fn transplantation(
    group: &GroupTable,
    module: &GModule,
    x1: &CosetSpace,
    x2: &CosetSpace,
    s: &Intertwiner,
) -> Result<Transplantation, TransplantError> {
    let t = transplant_operator_form(group, module, x1, x2, s)?;
    let expected = t.source.dim();
    let rank = t.rank();
    if rank != expected || t.target.dim() != expected {
        return Err(TransplantError::RankDeficient { rank, expected });
    }
    Ok(t)
}

/// Restriction of `delta` to the subspace spanned by `basis`, in that basis.
fn restrict(delta: &QMatrix, basis: &EchelonBasis) -> Result<QMatrix, TransplantError> {
    let columns = (0..basis.dim())
        .map(|j| coordinates_or_err(basis, &delta.mul_vec(&basis.basis.column(j))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_columns(basis.dim(), &columns))
}

/// Exact check of `T ∘ Δ|_{V^{H1}} = Δ|_{V^{H2}} ∘ T`.
///
/// `delta` must commute with every generator of `G`; otherwise the call
/// fails with [`TransplantError::DeltaNotEquivariant`].
pub fn verify_commutation(
    group: &GroupTable,
    module: &GModule,
    delta: &QMatrix,
    t: &Transplantation,
) -> Result<bool, TransplantError> {
    if delta.rows() != module.dim() || delta.cols() != module.dim() {
        return Err(TransplantError::DimensionMismatch("Δ has the wrong shape".into()));
    }
    for &g in group.generator_indices() {
        if module.left_mul(g, delta) != module.right_mul(delta, g) {
            return Err(TransplantError::DeltaNotEquivariant { generator: g });
        }
    }
    let d1 = restrict(delta, &t.source)?;
    let d2 = restrict(delta, &t.target)?;
    Ok(t.matrix.mul(&d1) == d2.mul(&t.matrix))
}

/// Result of the polar iteration.
#[derive(Clone, Debug)]
pub struct Orthogonalized {
    pub u: DMatrix<f64>,
    pub iterations: usize,
    /// `‖UᵀU − I‖∞` at exit.
    pub residual: f64,
}

pub const POLAR_MAX_ITERATIONS: usize = 100;

/// Induced ∞-norm (maximum absolute row sum).
pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn orthogonality_residual(u: &DMatrix<f64>) -> f64 {
    let n = u.nrows();
    inf_norm(&(u.transpose() * u - DMatrix::<f64>::identity(n, n)))
}

/// Orthogonal polar factor of an integer matrix, by the iteration
/// `U ← (U + U⁻ᵀ)/2`.
pub fn orthogonalize_matrix(s: &[Vec<i64>], tol: f64) -> Result<Orthogonalized, TransplantError> {
    let n = s.len();
    if s.iter().any(|r| r.len() != n) {
        return Err(TransplantError::DimensionMismatch("matrix is not square".into()));
    }
    let mut u = DMatrix::from_fn(n, n, |r, c| s[r][c] as f64);
    let mut residual = orthogonality_residual(&u);
    let mut iterations = 0;
    while residual >= tol {
        if iterations == POLAR_MAX_ITERATIONS {
            return Err(TransplantError::NoConvergence { iterations, residual });
        }
        let inv = u.clone().try_inverse().ok_or(TransplantError::Singular)?;
        u = (&u + inv.transpose()) * 0.5;
        residual = orthogonality_residual(&u);
        iterations += 1;
    }
    Ok(Orthogonalized { u, iterations, residual })
}

/// The unitary refinement of an invertible intertwiner.
pub fn orthogonalize(s: &Intertwiner, tol: f64) -> Result<Orthogonalized, TransplantError> {
    if !s.is_invertible() {
        return Err(TransplantError::Singular);
    }
    orthogonalize_matrix(&s.matrix, tol)
}

/// `max_g ‖U ρ1(g) − ρ2(g) U‖∞` over the generators, with `ρi` the coset
/// permutation matrices.
pub fn equivariance_residual(group: &GroupTable, u: &DMatrix<f64>, x1: &CosetSpace, x2: &CosetSpace) -> f64 {
    group
        .generator_indices()
        .iter()
        .map(|&g| {
            // (U ρ1(g))[y][x] = U[y][g·x];  (ρ2(g) U)[y][x] = U[g⁻¹·y][x]
            let ginv = group.inv(g);
            let diff = DMatrix::from_fn(x2.index(), x1.index(), |y, x| {
                u[(y, x1.act(g, x))] - u[(x2.act(ginv, y), x)]
            });
            inf_norm(&diff)
        })
        .fold(0.0, f64::max)
}
