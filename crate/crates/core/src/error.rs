use thiserror::Error;

/// Errors raised across the crate.
///
/// The verification variants (`CountMismatch`, `IsoCollision`,
/// `StructureViolation`, `MismatchFound`) mean a computed result contradicts
/// a proven classification. Everything else is a usage or input error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators have mismatched degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("permutation is not an element of the group")]
    ElementNotInGroup,
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("group does not act transitively")]
    NotTransitive,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what} = {value} is above the supported bound {bound}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("q = {0} is too small (need q > 2)")]
    QTooSmall(u64),
    #[error("q = {0} is too large for full enumeration (need q <= 9)")]
    QTooLarge(u64),
    #[error("no element of order q^2 - 1 found in GL(2,{0})")]
    SingerNotFound(u64),
    #[error("triple is not a loop folder: {0}")]
    NotAFolder(String),
    #[error("invalid construction label: {0}")]
    InvalidLabel(String),
    #[error("transversal does not generate the group")]
    NotGenerating,
    #[error("degree {n} too large for exhaustive search (max {max})")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("orbit count {numerator}/{denominator} is not an integer")]
    NonIntegerOrbitCount {
        numerator: String,
        denominator: u64,
    },
    #[error("count mismatch for {what}: expected {expected}, found {found}")]
    CountMismatch {
        what: String,
        expected: String,
        found: String,
    },
    #[error("entries {first} and {second} are isomorphic")]
    IsoCollision { first: String, second: String },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("cross-check mismatch: {0}")]
    MismatchFound(String),
    #[error("search budget of {seconds}s exceeded")]
    BudgetExceeded { seconds: u64 },
    #[error("invalid loop table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that report a failed verification rather than bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::CountMismatch { .. }
                | Error::IsoCollision { .. }
                | Error::StructureViolation(_)
                | Error::MismatchFound(_)
                | Error::NonIntegerOrbitCount { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
