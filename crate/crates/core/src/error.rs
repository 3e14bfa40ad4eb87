use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// Variants are split so front ends can tell malformed input apart from a
/// detected mathematical inconsistency.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation window {0:?}")]
    InvalidPermutation(Vec<u32>),

    #[error("permutation {perm:?} does not fit in S_{ambient}")]
    AmbientTooSmall { perm: Vec<u32>, ambient: usize },

    #[error("partition {partition:?} has more than {max_rows} rows")]
    TooManyRows { partition: Vec<u32>, max_rows: usize },

    #[error("partition {partition:?} does not fit in a {rows}x{cols} rectangle")]
    OutsideRectangle {
        partition: Vec<u32>,
        rows: usize,
        cols: usize,
    },

    #[error("invalid rank conditions: {0}")]
    InvalidRanks(String),

    #[error("descent precondition violated: {0}")]
    DescentCondition(String),

    #[error("polynomial is not symmetric in block {block}")]
    NotBlockSymmetric { block: usize },

    #[error("polynomial is not divisible by the monomial: {0}")]
    NotDivisible(String),

    #[error("expansion failed: {0}")]
    Expansion(String),

    #[error("ambient cap S_{cap} exceeded while expanding")]
    AmbientCapExceeded { cap: usize },

    #[error("route `{route}` does not support {what}")]
    Unsupported { route: String, what: String },

    #[error("unknown route `{0}`")]
    UnknownRoute(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the caller's data rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidPermutation(_)
                | Error::AmbientTooSmall { .. }
                | Error::TooManyRows { .. }
                | Error::OutsideRectangle { .. }
                | Error::InvalidRanks(_)
                | Error::DescentCondition(_)
                | Error::Unsupported { .. }
                | Error::UnknownRoute(_)
                | Error::Input(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
