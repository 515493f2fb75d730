use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis is singular or not square")]
    DegenerateLattice,

    #[error("dimension {0} is outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice is not a sublattice: coefficient matrix is not integral")]
    NotASublattice,

    #[error("vector is not a point of the lattice")]
    NotInLattice,

    #[error("matrix is not orthogonal: max |QᵀQ - I| = {deviation:e} exceeds {tol:e}")]
    NotOrthogonal { deviation: f64, tol: f64 },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("coset {label:?} has no representative in the codebook")]
    EmptyCoset { label: Vec<u64> },

    #[error("coset label {label:?} is out of range for divisors {divisors:?}")]
    LabelOutOfRange { label: Vec<u64>, divisors: Vec<u64> },

    #[error("codebook of {size} points exceeds the limit of {limit}")]
    CodebookTooLarge { size: u128, limit: u128 },

    #[error("invalid signaling set size {0}: must be even and positive")]
    InvalidSignaling(u32),

    #[error("{0} is not a square-free integer greater than 1")]
    NotSquareFree(i64),

    #[error("quadratic integer ({p} + {q}√{d})/2 violates the parity rule of the ring of integers")]
    NotAnAlgebraicInteger { d: i64, p: String, q: String },

    #[error("elements belong to different fields (D = {0} vs D = {1})")]
    FieldMismatch(i64, i64),

    #[error("zero generator")]
    ZeroGenerator,

    #[error("lattice is not well-rounded")]
    NotWellRounded,

    #[error("truncation radius² {radius_sq} is below λ₁ = {lambda1}")]
    RadiusTooSmall { radius_sq: f64, lambda1: f64 },

    #[error("no hits after {iterations} sampled tuples")]
    BudgetExhausted { iterations: u64 },

    #[error("exhaustive search bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sigma grids or trial counts differ between plans")]
    GridMismatch,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
