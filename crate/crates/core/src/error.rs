use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("letter {0:?} is not in the alphabet")]
    ForeignLetter(char),

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("orientations differ")]
    OrientationMismatch,

    #[error("{0:?} is not a prefix of {1:?}")]
    NotAPrefix(String, String),

    #[error("longest common prefix of an empty set")]
    EmptyMeet,

    #[error("transducer is not functional (witness input {witness:?})")]
    NotFunctional { witness: String },

    #[error("transducer is ambiguous (witness input {witness:?}); run disambiguate first")]
    Ambiguous { witness: String },

    #[error("not sequentialisable: states {left} and {right} drift apart (delays {first} vs {second})")]
    NotSequentialisable {
        left: String,
        right: String,
        first: String,
        second: String,
    },

    #[error("function has an empty domain")]
    EmptyDomain,

    #[error("automaton is partial; complement needs a complete automaton")]
    Partial,

    #[error("bimachine is not complete; run complete_bimachine first")]
    Incomplete,

    #[error("partition is not a congruence: block of {0} is split by letter {1:?}")]
    NotACongruence(String, char),

    #[error("carriers differ ({0} vs {1})")]
    CarrierMismatch(usize, usize),

    #[error("refinement fails: {0}")]
    NotFiner(String),

    #[error("monoid law violated: {0}")]
    MonoidLaw(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
