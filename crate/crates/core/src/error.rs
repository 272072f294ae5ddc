use thiserror::Error;

/// Errors produced by the exact and numeric engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix does not square to the identity")]
    NotInvolution,

    #[error("invalid symplectic form: {0}")]
    InvalidSymplecticForm(&'static str),

    #[error("dimension {0} is odd or zero; a positive even dimension is required")]
    OddDimension(usize),

    #[error("linear map does not preserve the weight lattice")]
    LatticeNotPreserved,

    #[error("expected a weight of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("invalid section space parameters: {0}")]
    InvalidSpec(String),

    #[error("index k = {k} out of range 0..={max}")]
    KOutOfRange { k: i64, max: i64 },

    #[error("polynomial is not a weight vector: weights {first} and {second} both occur")]
    MixedWeights { first: i64, second: i64 },

    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,

    #[error("monomial exponents do not match bidegree ({0}, {1})")]
    BidegreeMismatch(u32, u32),

    #[error("the sum and product closed forms of the highest weight vector disagree")]
    ClosedFormMismatch,

    #[error("invalid flag point: {0}")]
    InvalidPoint(String),

    #[error("weights must be positive integers, got ({0}, {1})")]
    InvalidWeights(i64, i64),

    #[error("point has non-real coordinates")]
    NotReal,

    #[error("unknown subgroup '{0}' (expected B, H, G or G')")]
    UnknownSubgroup(String),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("section vanishes at the evaluation point")]
    SectionVanishes,

    #[error("gradient identity checked before the normalization constant was calibrated")]
    NormalizationUncalibrated,

    #[error("the two routes to the real moment polytope disagree")]
    RouteDisagreement,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
