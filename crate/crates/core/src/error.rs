use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("prime {0} too large for packed linear algebra (must be < 256)")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("F_{src} is not a subfield of F_{dst}")]
    NotASubfield { src: u64, dst: u64 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("collection did not terminate within {0} steps")]
    CollectionDiverged(u64),
    #[error("unknown built-in group `{0}`")]
    UnknownBuiltin(String),
    #[error("algebra is not associative: (b{a}*b{b})*b{c} != b{a}*(b{b}*b{c})", a = .0 .0 + 1, b = .0 .1 + 1, c = .0 .2 + 1)]
    NotAssociative((usize, usize, usize)),
    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("group order guard exceeded: {0}")]
    OrderGuardExceeded(String),
    #[error("generator guard exceeded: {0}")]
    GeneratorGuardExceeded(String),
    #[error("coadjoint profile guard exceeded: {0}")]
    ProfileGuardExceeded(String),
    #[error("oracle guard exceeded: {0}")]
    OracleGuardExceeded(String),

    #[error("homomorphism is not well defined on invariant generator {0}")]
    IllDefinedMap(usize),
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("invariant factor does not fit in 64 bits")]
    FactorOverflow,
    #[error("ratio {0} is not a power of p")]
    NonIntegralRatio(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for guard violations (resource limits rather than bad input).
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::OrderGuardExceeded(_)
                | Error::GeneratorGuardExceeded(_)
                | Error::ProfileGuardExceeded(_)
                | Error::OracleGuardExceeded(_)
                | Error::DegreeOutOfRange(_)
                | Error::PrimeTooLarge(_)
        )
    }

    /// True for errors caused by malformed or invalid input data.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::InconsistentPresentation(_)
                | Error::NotAssociative(_)
                | Error::NotNilpotent
                | Error::NotPrime(_)
                | Error::UnknownBuiltin(_)
                | Error::FieldMismatch(_)
                | Error::NotASubfield { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
