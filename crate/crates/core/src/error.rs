use thiserror::Error;

/// Errors raised by the geometric core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("metric matrix is not symmetric (|g[{i}][{j}] - g[{j}][{i}]| = {gap:e})")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("metric matrix is not positive definite (leading minor {order} = {value:e})")]
    NotPositiveDefinite { order: usize, value: f64 },

    #[error("bracket table violates the Jacobi identity (residual {residual:e})")]
    JacobiViolated { residual: f64 },

    #[error("vectors are linearly dependent (Gram determinant {gram:e})")]
    Degenerate { gram: f64 },
}

/// Errors raised when building or evaluating Finsler metrics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FinslerError {
    #[error("{kind} metric is not admissible: |X| = {norm} must be < {bound}")]
    Inadmissible { kind: &'static str, norm: f64, bound: f64 },

    #[error("Matsumoto denominator alpha - beta = {0:e} is not positive")]
    OutsideDomain(f64),

    #[error("fundamental tensor requested at the zero vector")]
    ZeroBase,

    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Errors raised by flag-curvature evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("degenerate flag (normalized denominator {0:e})")]
    DegenerateFlag(f64),

    #[error("flag vectors are not orthonormal for the metric (Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("metric parameter nu must be positive, got {0}")]
    InvalidNu(f64),

    #[error("closed-form denominator vanishes ({0:e})")]
    ZeroDenominator(f64),

    #[error("metric is not of Berwald type (parallel residual {0:e})")]
    NotBerwald(f64),

    #[error(transparent)]
    Finsler(#[from] FinslerError),

    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Errors raised by the case catalog.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown case id {0} (expected 1..=15)")]
    UnknownCase(u8),

    #[error("case {case}: missing parameter `{name}`")]
    MissingParameter { case: u8, name: &'static str },

    #[error("case {case}: unexpected parameter `{name}`")]
    UnexpectedParameter { case: u8, name: String },

    #[error("case {case}: parameter constraint violated: {constraint}")]
    OutOfDomain { case: u8, constraint: &'static str },

    #[error("case {0} admits no Berwald-type deformation")]
    NoBerwaldDeformation(u8),

    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
