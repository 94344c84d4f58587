use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants carry big values as strings so the enum stays `Clone + Eq`
/// without dragging arbitrary-precision types into error handling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial C({n}, {k}) is undefined under the extended convention")]
    UnsupportedBinomial { n: i64, k: i64 },

    #[error("integer square root of a negative value")]
    NegativeInput,

    #[error("{value} is not a perfect square")]
    NotAPerfectSquare { value: String },

    #[error("malformed spec: {0}")]
    MalformedSpec(String),

    #[error("generalized Pascal spec needs alpha[0] = beta[0], got {alpha0} and {beta0}")]
    SpecMismatch { alpha0: String, beta0: String },

    #[error("perturbation index ({i}, {j}) exceeds the declared support bound {bound}")]
    PerturbationOutOfSupport { i: usize, j: usize, bound: usize },

    #[error("matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("antisymmetric square root needs an even order, got {0}")]
    OddOrder(usize),

    #[error("cofactor expansion is capped at order {max}, got {order}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("need at least {needed} sequence terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("no linear recursion of order <= {d_max} found")]
    NoRecursionFound { d_max: usize },

    #[error("Hankel kernel at order {d} exists but every kernel vector ends in 0")]
    DegenerateKernel { d: usize },

    #[error("unsupported oracle family or parameters: {0}")]
    UnsupportedFamily(String),

    #[error("prefix violates unimodularity at order {order}: det = {det}")]
    InvariantViolated { order: usize, det: String },

    #[error("quadratic fit has leading coefficient {a2}, expected 1")]
    QuadraticFitFailed { a2: String },

    #[error("prefix fails the determinant pattern at order {order}: got {got}, want {want}")]
    PatternViolated { order: usize, got: String, want: String },

    #[error("extension determinant is not quadratic: {0}")]
    DegreeAssertionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
