use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("partition {partition} does not fit in the {rows}x{cols} box")]
    OutsideBox {
        partition: String,
        rows: usize,
        cols: u32,
    },
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("invalid Grassmannian Gr({k},{n}): need 0 < k < n")]
    InvalidContext { k: usize, n: usize },
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("element is not pure of codimension {expected}")]
    Grading { expected: usize },
    #[error("weights {left} + {right} do not add up to the dimension {dim}")]
    WeightMismatch { left: usize, right: usize, dim: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("classes live on different surface rings")]
    RingMismatch,
    #[error("symmetric powers are only supported for rank 2 bundles, got rank {0}")]
    UnsupportedRank(u32),
    #[error("pairing {0} is not declared on this surface")]
    MissingPairing(String),
    #[error("0-cycle contains the undetermined symbol {0}")]
    Symbolic(String),
    #[error("expected a class of degree {expected}")]
    Degree { expected: u8 },
    #[error("Gram matrix is not symmetric at {0}")]
    Asymmetric(String),
    #[error("unknown divisor {0}")]
    UnknownDivisor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("classes live on different lattices")]
    LatticeMismatch,
    #[error("product is not linear in the unknowns: {0}")]
    Nonlinear(String),
    #[error("intersection {0} is not declared on this lattice")]
    MissingPairing(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("underdetermined system: cannot pin {0}")]
    Underdetermined(String),
    #[error("value still depends on unknowns: {0}")]
    NotNumeric(String),
    #[error("arithmetic genus {0} is not an integer")]
    NonIntegral(String),
    #[error("lattice has no canonical class")]
    NoCanonical,
    #[error("unknown basis class {0}")]
    UnknownBasis(String),
    #[error("Gram matrix is not symmetric at {0}")]
    Asymmetric(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("Pluecker data is underdetermined: {0} could not be fixed")]
    Underdetermined(String),
    #[error("Pluecker data is inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid cover data: ramification {0} is negative")]
    NegativeRamification(String),
    #[error("invalid scroll configuration: {0}")]
    InvalidScroll(String),
    #[error("a degree {d} curve cannot have genus {g}")]
    GenusTooLarge { d: i64, g: i64 },
    #[error("inconsistent ledger: residual {0} is negative")]
    NegativeResidual(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
