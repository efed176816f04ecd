use alloc::string::String;

/// Errors raised by the algebraic layers.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the given superspace")]
    NotASubspace,
    #[error("map does not induce a well-defined map on the quotients")]
    NotWellDefined,
    #[error("not a chain complex: d∘d ≠ 0 or shape mismatch at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("not a chain map: fails to commute with differentials at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("not a subcomplex: face {face} is missing from the ambient complex")]
    NotASubcomplex { face: String },
    #[error("images are not totally ordered by inclusion")]
    NotNested,
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("algebra is not finite-dimensional within degree bound {bound}")]
    NotFiniteDimensional { bound: usize },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("limit comparison failed at n = {n}, p = {p}: E∞ has dimension {e_inf}, gr H has dimension {gr}")]
    ComparisonFailure { n: i64, p: i64, e_inf: usize, gr: usize },
    #[error("subspace is not graded with respect to the internal degrees")]
    NotGraded,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
