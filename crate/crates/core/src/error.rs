use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a position needs at least one Left and one Right option")]
    EmptySide,
    #[error("inf + oinf is not defined")]
    UndefinedSum,
    #[error("an empty sum has no outcome")]
    EmptySum,
    #[error("form is not affine impartial: {0}")]
    NotImpartial(String),
    #[error("form is not quiet: {0}")]
    NotQuiet(String),
    #[error("form is not a Conway form: {0}")]
    NotConway(String),
    #[error(
        "protected-nimber tail is unstable for {form} at probe ceiling {bound}: membership {membership:?}"
    )]
    UnstableTail {
        form: String,
        bound: u32,
        membership: Vec<bool>,
    },
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge {0} lies outside the board")]
    OutOfBounds(String),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(String),
    #[error("edge {0} is already drawn")]
    IllegalMove(String),
    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
