use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("probability {0} outside [0, 1]")]
    OutOfRange(String),
    #[error("total mass is {0}, expected exactly 1")]
    MassNotNormalized(String),
    #[error("duplicate mass entry for ({0}, {1})")]
    DuplicateEntry(String, String),
    #[error("negative mass {2} for ({0}, {1})")]
    NegativeMass(String, String, String),
    #[error("empty label")]
    EmptyLabel,
    #[error("duplicate label {0:?} in alphabet")]
    DuplicateLabel(String),
    #[error("label {0:?} not declared in alphabet")]
    UnknownLabel(String),
    #[error("index {index} out of range for alphabet of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("joint distribution has empty support")]
    EmptySupport,
    #[error("output {0:?} has zero marginal probability")]
    ZeroMarginal(String),
    #[error("theta must be a positive integer")]
    InvalidTheta,
    #[error("alpha {alpha} must be below 1/|support| = 1/{support}")]
    AlphaTooLarge { alpha: String, support: usize },
    #[error("event set did not stabilize up to theta = {0}")]
    NoStabilization(u32),
    #[error("minimum error probability is 1; optimal output law undefined")]
    DegeneratePe1,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("crossover probability {0} must satisfy 0 < p < 1/2")]
    InvalidCrossover(String),
    #[error("erasure probability {0} must satisfy 0 < epsilon < 1")]
    InvalidErasure(String),
    #[error("codeword length {found} differs from blocklength {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("duplicate codeword {0}")]
    DuplicateCodeword(String),
    #[error("a code needs at least two codewords, got {0}")]
    TooFewCodewords(usize),
    #[error("blocklength must be positive")]
    EmptyWord,
    #[error("invalid codeword character {0:?}")]
    InvalidBit(char),
    #[error("line {line}: {message}")]
    CodeFile { line: usize, message: String },
    #[error("blocklength {n} exceeds the enumeration ceiling {ceiling}")]
    BlocklengthTooLarge { n: usize, ceiling: usize },
    #[error("cannot draw {m} distinct codewords of length {n}")]
    TooManyCodewords { m: usize, n: usize },
    #[error("argument out of range: {0}")]
    RangeError(String),
    #[error("exponent series is empty")]
    EmptySeries,
    #[error("malformed distribution file: {0}")]
    Format(String),
}
