use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("divergent: lambda={lambda}")]
    Divergent {
        /// max cycle geometric mean in the max-times view
        lambda: f64,
    },
    #[error("matrix is not definite (lambda != 1)")]
    NotDefinite,
    #[error("matrix is not a Kleene star")]
    NotKleeneStar,
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("vector must be positive")]
    NotPositive,
    #[error("zero coordinate at index {0} where a nonzero entry is required")]
    ZeroCoordinate(usize),
    #[error("matrix has a zero row or zero column")]
    ZeroRowOrColumn,
    #[error("matrix has a zero row (row {0})")]
    ZeroRow(usize),
    #[error("residual undefined: entry {0} of the min-times product is +inf")]
    UndefinedResidual(usize),
    #[error("vector is not in the span; uncovered coordinates {0:?}")]
    NotInSpan(Vec<usize>),
    #[error("point is already a member of the cone")]
    AlreadyMember,
    #[error("permanent is zero")]
    ZeroPermanent,
    #[error("degenerate colorful instance (zero permanent) is unsupported")]
    DegenerateColorful,
    #[error("enumeration cap exceeded: {candidates} candidate types, cap {cap}")]
    CapExceeded { candidates: u128, cap: u128 },
    #[error("inconclusive within iteration budget (Collatz-Wielandt bracket [{lower}, {upper}])")]
    Indeterminate { lower: f64, upper: f64 },
    #[error("cones have nontrivial intersection; the bound is inapplicable")]
    ConesIntersect,
    #[error("all entries must be positive")]
    PositivityRequired,
    #[error("all entries must be integer in the max-plus view")]
    IntegerRequired,
    #[error("need at least {0} inputs")]
    TooFew(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
