use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed nanoword `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("letter {letter} occurs {count} times (expected exactly twice)")]
    LetterCount { letter: char, count: usize },

    #[error("type word has {types} entries but the Gauss word has {letters} letters")]
    TypeArity { types: usize, letters: usize },

    #[error("alphabet of {0} letters cannot be rendered (limit 26)")]
    AlphabetTooLarge(usize),

    #[error("letter {0} is not present in the nanoword")]
    MissingLetter(u8),

    #[error("cannot shift the empty nanoword")]
    EmptyShift,

    #[error("move instance no longer matches the nanoword: {0}")]
    StaleMove(String),

    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),

    #[error("the special element has no m-profile")]
    SpecialElement,

    #[error("exploration truncated after {members} members / {steps} steps")]
    Truncated { members: usize, steps: usize },

    #[error("transform of {id} could not be identified: {detail}")]
    Unidentified { id: String, detail: String },

    #[error("census cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
