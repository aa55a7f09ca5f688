use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the index, enumeration and capacity routines.
///
/// Everything except [`Error::Inconsistency`] is an input problem. An
/// `Inconsistency` means a closed-form result disagreed with its search or
/// oracle and should never be observed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("euler number must be <= -1, got {0}")]
    NonNegativeEuler(i64),

    #[error("orbit set has {found} hyperbolic multiplicities, bundle of genus {genus} needs {expected}")]
    HyperbolicCount {
        genus: u32,
        expected: usize,
        found: usize,
    },

    #[error("morse profile has {found} saddle values, orbit set has {expected} hyperbolic orbits")]
    ProfileLength { expected: usize, found: usize },

    #[error("morse profile must satisfy min < every saddle < max")]
    ProfileOrder,

    #[error("arithmetic overflow")]
    Overflow,

    #[error("invalid curve end data: {0}")]
    CurveData(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("orbit sets lie in different classes: {alpha} != {beta} mod {abs_e}")]
    ResidueMismatch { alpha: u64, beta: u64, abs_e: u64 },

    #[error("grading is only defined in the null class, orbit set has class {0}")]
    NonzeroClass(u64),

    #[error("orbit set is not an ECH generator (hyperbolic multiplicity above 1)")]
    NotGenerator,

    #[error("multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("grading must be a nonnegative even integer, got {0}")]
    BadGrading(i64),

    #[error("U map is not defined on the empty orbit set")]
    EmptyInput,

    #[error("k = {k} equals n(n-1)/2 for n = {n}; the closed form does not apply")]
    TriangularIndex { k: u64, n: u64 },

    #[error("torus capacities need k >= 1")]
    TorusIndexZero,

    #[error("capacity sequences have different lengths ({source_len} vs {target_len})")]
    LengthMismatch { source_len: usize, target_len: usize },

    #[error("value must be positive: {0}")]
    NonPositive(String),

    #[error("invalid capacity sequence: {0}")]
    BadSequence(String),

    #[error("cannot parse orbit set: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True when the error signals a contradiction with a proven identity
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
