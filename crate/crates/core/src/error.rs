use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variants fall into two groups: invalid input (bad matrices, unknown names,
/// malformed tables) and computational failure (budgets, bounds and
/// randomized procedures that could not finish). [`Error::is_input_error`]
/// tells them apart; the command line maps them to exit codes 2 and 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty matrix or zero polynomial")]
    Degenerate,
    #[error("polynomial is not a {0}-th power")]
    NotAPower(usize),
    #[error("generated group exceeds the element bound {0}")]
    NotFinite(usize),
    #[error("generator {0} is not invertible over the integers")]
    NotInvertible(usize),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("prime {p} is not congruent to 1 modulo the group order {order}")]
    BadPrime { p: u64, order: usize },
    #[error("no suitable prime below the search bound {0}")]
    PrimeSearchFailed(u64),
    #[error("constituent dimensions disagree across primes: {0}")]
    InconsistentSplit(String),
    #[error("could not certify a splitting within the retry budget")]
    InconclusiveSplit,
    #[error("class function length {got} does not match class count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("character table rows are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("class word {0:?} does not resolve to a class of matching size")]
    UnresolvedClassWord(Vec<usize>),
    #[error("image of the matrix is not invariant under the representation")]
    NotInvariant,
    #[error("matrix does not commute with generator {0}")]
    NotCommuting(usize),
    #[error("representation is not irreducible over the rationals")]
    NotIrreducible,
    #[error("commutant certificate check failed: {0}")]
    CertificateFailed(String),
    #[error("zero vector has no finite divisibility")]
    ZeroVector,
    #[error("index budget exhausted; best known upper bound {best}")]
    BudgetExceeded { best: BigInt },
    #[error("insufficient data for a fit: {0}")]
    InsufficientData(String),
    #[error("prime search exceeded the bound {0}")]
    SearchBoundExceeded(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed representation file: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the caller's data rather than by a budget
    /// or an internal check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix
                | Error::DimensionMismatch { .. }
                | Error::Degenerate
                | Error::NotAPower(_)
                | Error::NotInvertible(_)
                | Error::UnknownName(_)
                | Error::BadPrime { .. }
                | Error::LengthMismatch { .. }
                | Error::NotOrthonormal(_)
                | Error::UnresolvedClassWord(_)
                | Error::NotInvariant
                | Error::NotCommuting(_)
                | Error::NotIrreducible
                | Error::ZeroVector
                | Error::Invalid(_)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
