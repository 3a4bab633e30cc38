use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid bit character {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("width mismatch: expected {expected} bits, got {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("cannot split singleton interval {0}; read the label instead")]
    SingletonSplit(String),

    #[error("member {index} has width {found}, expected {expected}")]
    MemberWidth {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("width {width} exceeds the bitmap cap of {cap}; use a predicate oracle backend")]
    BitmapCap { width: usize, cap: usize },

    #[error("operation `{0}` requires the bitmap backend")]
    OracleUnsupported(&'static str),

    #[error("mapped point has width {found}, expected {expected}")]
    FunctionWidth { expected: usize, found: usize },

    #[error("malformed labelled-set encoding: {0}")]
    Format(String),

    #[error("diagonal predicate agrees with code {0} at its own point")]
    DiagonalInImage(String),

    #[error("non-canonical ordinal: {0}")]
    NonCanonical(String),

    #[error("cannot parse ordinal {input:?}: {reason}")]
    OrdinalParse { input: String, reason: String },

    #[error("sequence position {position} is not below length {length}")]
    PositionOutOfRange { position: String, length: String },

    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(String, String),

    #[error("length {0} has no final position to strip")]
    NoLabel(String),

    #[error("position index overflow while compressing")]
    CompressionOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
