use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice does not span the degree-1 hyperplane direction (rank {rank}, expected {expected})")]
    NotFullRank { rank: usize, expected: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("no samples supplied to the concave envelope")]
    NoSamples,
    #[error("subgraph body is empty: the function lies below the floor everywhere")]
    EmptyBody,
    #[error("semigroup has a nonzero degree-0 generator but is claimed linearly bounded")]
    DegreeZeroNontrivial,
    #[error("semigroup is not linearly bounded: {0}")]
    NotLinearlyBounded(String),
    #[error("test cone touches the boundary of the semigroup cone away from the origin")]
    BoundaryCone,
    #[error("anchor is not an element of the semigroup")]
    AnchorNotInSemigroup,
    #[error("subspace is not rational with respect to the semigroup lattice: {0}")]
    NotSemigroupRational(String),
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("valuation center lies in the support of the divisor representative")]
    CenterInSupport,
    #[error("basis elements are linearly dependent; value triangularization failed")]
    ValueCollision,
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("filtration is incomplete or not linearly bounded: {0}")]
    InvalidFiltration(String),
    #[error("point is not a smooth torus-fixed point of the surface")]
    NotFixedPoint,
    #[error("line bundle is not ample")]
    NotAmple,
    #[error("bundle parameter b = {b} must exceed the effective threshold {mu}")]
    BTooSmall { b: String, mu: String },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("integer overflow in lattice enumeration")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
