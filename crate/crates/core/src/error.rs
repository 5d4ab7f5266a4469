//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Construction of a domain object from invalid data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A q-binomial denominator factor vanished away from the handled
    /// q = 1 and q = -1 evaluations.
    #[error("degenerate q-binomial evaluation at q = {0}")]
    DegenerateEvaluation(String),

    /// Exhaustive enumeration of a shuffle law would exceed the budget.
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),

    /// Distributions over decks of different sizes cannot be convolved.
    #[error("deck size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    /// Signed-word insertion was given an unresolved zero symbol.
    #[error("word contains a zero symbol at position {0}")]
    ZeroSymbol(usize),

    /// A tableau pair does not satisfy the signed insertion conditions.
    #[error("invalid tableau pair: {0}")]
    InvalidPair(String),

    /// Cycle index extraction past the configured deck-size cap.
    #[error("deck size {0} exceeds cap {1}")]
    CapExceeded(usize, usize),

    /// The primitive-necklace count in a limit law came out negative.
    #[error("negative geometric multiplicity {0} for cycle length {1}")]
    NegativeMultiplicity(i64, usize),

    /// A limit-law parameter sits on the boundary where the distribution
    /// degenerates (geometric parameter equal to 1).
    #[error("boundary parameter: {0}")]
    BoundaryParameter(String),

    /// The Toeplitz symbol for the gap probability diverges at the point
    /// where the coefficient tail is bounded.
    #[error("symbol diverges: {0}")]
    SymbolDivergence(String),

    /// Brute-force partition extraction is capped at 10 points.
    #[error("too many points for brute force: {0} > {1}")]
    TooManyPoints(usize, usize),

    /// Two points share an x coordinate.
    #[error("duplicate x coordinate {0}")]
    DuplicateX(f64),

    /// A serialized artifact could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
