use thiserror::Error;

/// Errors reported by the library.
///
/// Most variants are precondition violations: the caller handed an input the
/// operation is not defined on. [`Error::Invariant`] is different — it marks
/// a broken internal invariant (a bug, or a refutation of a property the
/// implementation relies on) and carries the offending witnesses in its
/// message so the failure is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("the empty word cannot be a member of a word set")]
    EmptyWordInSet,
    #[error("expected two distinct words")]
    EqualWords,
    #[error("word `{0}` is not primitive")]
    NotPrimitive(String),
    #[error("word `{0}` is not theta-primitive")]
    NotThetaPrimitive(String),
    #[error("word `{word}` contains the square `{square}`")]
    NotSquareFree { word: String, square: String },
    #[error("words do not satisfy the overlap equation tu = uv")]
    NotAnOverlap,
    #[error("overlap decomposition requires t != v")]
    DegenerateOverlap,
    #[error("max size bound must be at least 2")]
    MaxSizeTooSmall,
    #[error("{{{0}, {1}}} is not a primitive pair")]
    NotPrimitivePair(String, String),
    #[error("the two pairs must be distinct as sets")]
    SamePair,
    #[error("symbol `{}` is outside the map's alphabet", *.0 as char)]
    SymbolOutsideAlphabet(u8),
    #[error("letter map is not an involution")]
    NotInvolutive,
    #[error("the identity map is not admitted as a morphic involution")]
    IdentityMorphism,
    #[error("theta-palindromes are defined for antimorphic maps only")]
    MorphicPalindrome,
    #[error("set is not invariant under the letter map")]
    NotThetaInvariant,
    #[error("expected a non-commuting pair of words")]
    CommutingPair,
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("malformed witness record: {0}")]
    MalformedWitness(String),
    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    /// Invariant violations signal bugs or refutations rather than bad input;
    /// the CLI maps them to a dedicated exit code.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
