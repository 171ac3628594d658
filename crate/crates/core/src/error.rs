use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation degree must be at least 1")]
    ZeroDegree,
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("member set is not a subgroup of the given group")]
    NotASubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GassmannError {
    #[error("subgroup enumeration exceeded the budget of {budget} subgroups")]
    SearchBudgetExceeded { budget: usize },
    #[error("exhaustive subgroup search is limited to groups of order <= {limit}, got {order}")]
    ExhaustiveTooLarge { order: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransplantError {
    #[error("intertwiner basis is empty")]
    EmptyBasis,
    #[error(
        "no invertible intertwiner found ({scanned} candidates up to max-norm {max_norm}, {random_tries} random tries)"
    )]
    NoInvertibleFound {
        scanned: usize,
        max_norm: i64,
        random_tries: usize,
    },
    #[error("vector is not invariant under the subgroup")]
    NotInvariant,
    #[error("transplantation has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("endomorphism does not commute with generator {generator}")]
    DeltaNotEquivariant { generator: usize },
    #[error("polar iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("module action is not a homomorphism: {0}")]
    NotAModule(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("the identity element is in the generating set")]
    IdentityInGeneratingSet,
    #[error("generating set is not closed under inverses (element {element})")]
    NotSymmetric { element: usize },
    #[error("generating-set sizes differ: {left} vs {right}")]
    RegularityMismatch { left: usize, right: usize },
    #[error("coset orderings of the graphs and the intertwiner differ")]
    BasisMismatch,
    #[error("graph isomorphism scan limited to {cap} vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid group JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in {context}: {source}")]
    Perm {
        context: String,
        #[source]
        source: PermError,
    },
    #[error("unknown subgroup label {0:?}")]
    UnknownLabel(String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
}

/// Any failure raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Gassmann(#[from] GassmannError),
    #[error(transparent)]
    Transplant(#[from] TransplantError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Input(#[from] InputError),
}
