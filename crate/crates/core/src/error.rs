use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operand is not purely vectorial")]
    NotPure,
    #[error("not a line: {0}")]
    NotALine(String),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("direction has irrational length; rational lines need rational unit directions")]
    IrrationalLength,
    #[error("dual quaternion with zero primal part is not invertible")]
    NonInvertible,
    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
    #[error("closure product vanishes identically")]
    DegenerateConfiguration,
    #[error("configuration does not close (residual {residual:e})")]
    ClosureFailed { residual: f64 },
    #[error("joints {0} and {1} lie on the same axis")]
    IdenticalAxes(usize, usize),
    #[error("exact (rational) scalars required")]
    ExactScalarsRequired,
    #[error("operation needs lambda-matrix rank {expected}, found {found}")]
    RankPrecondition { expected: usize, found: usize },
    #[error("no linear factor b·x + c·y + d with bc ≠ 0 in the resultant gcd (bidegree {0:?})")]
    NoAdmissibleFactor((usize, usize)),
    #[error("every g_i has zero primal part (planar degenerate linkage)")]
    PlanarDegenerate,
    #[error("not line symmetric: {0}")]
    NotLineSymmetric(String),
    #[error("symmetry axis has an irrational normalization")]
    IrrationalAxis,
    #[error("non-generic factor: {0}")]
    NonGeneric(String),
    #[error("norm polynomial is not real")]
    NormNotReal,
    #[error("norm polynomial has a real root")]
    RealRootInNorm,
    #[error("no factorization verifies")]
    NoFactorization,
    #[error("identity check failed: {0}")]
    Verification(String),
    #[error("precondition violated ({step}): {message}")]
    Precondition { step: &'static str, message: String },
    #[error("no real angle-symmetric motion found on grid")]
    NoRealMotion,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
