use thiserror::Error;

use crate::search::ConfigError;

/// Failures raised while searching or replaying a move sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// A non-terminal state offered no legal move and the problem defines no
    /// dead-end score.
    #[error("dead end: non-terminal state with no legal moves after {depth} moves")]
    DeadEnd { depth: usize },
    /// A move in a replayed sequence was not legal when reached.
    #[error("move at step {step} is not legal in the reached state")]
    IllegalMove { step: usize },
    /// A replayed sequence continues past a terminal state.
    #[error("sequence continues past a terminal state at step {step}")]
    PastTerminal { step: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}
