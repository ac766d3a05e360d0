use std::fmt;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square system turned out to have determinant zero.
    SingularMatrix,
    /// Operand shapes do not line up.
    DimensionMismatch(String),
    /// The input does not have the rank the operation requires.
    RankDeficient { required: usize, actual: usize },
    /// An operand that must be nonzero was zero.
    DivisionByZero,
    /// A brute-force enumeration would visit more candidates than allowed.
    TooLarge { candidates: u128, cap: u64 },
    /// A structural guarantee of an algorithm did not hold at run time.
    InvariantViolation(String),
    /// A matrix file or argument could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::DimensionMismatch(what) => write!(f, "dimension mismatch: {what}"),
            Error::RankDeficient { required, actual } => {
                write!(f, "rank deficient: need rank {required}, found {actual}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::TooLarge { candidates, cap } => {
                write!(f, "enumeration too large: {candidates} candidates exceed cap {cap}")
            }
            Error::InvariantViolation(what) => write!(f, "invariant violated: {what}"),
            Error::Parse(what) => write!(f, "parse error: {what}"),
        }
    }
}

impl std::error::Error for Error {}
