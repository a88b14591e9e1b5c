use thiserror::Error;

use crate::ltl::ParseError;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("scene error at line {line}: {message}")]
    Scene { line: usize, message: String },

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("{what} limit of {cap} exceeded")]
    Resource { what: &'static str, cap: usize },

    #[error("trace formulas have different prefix lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("inconsistent cube: atom `{0}` appears with both polarities")]
    InconsistentCube(String),

    #[error("goal index {index} out of range for a scene with {goals} goals")]
    GoalIndex { index: usize, goals: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
