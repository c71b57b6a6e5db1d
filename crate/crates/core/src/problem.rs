use alloc::vec::Vec;
use core::fmt;

use crate::error::SearchError;

/// Stable 64-bit fingerprint of a (state context, move) pair. Policy weights
/// are shared between all pairs that map to the same code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveCode(pub u64);

/// Exact, totally ordered score. Higher is better.
///
/// Problems with fractional scores store them as fixed-point integers and
/// report the number of decimals through [`Problem::score_decimals`], so that
/// equality tests between scores are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(pub i64);

impl Score {
    /// Real value of a fixed-point score with `decimals` decimal places.
    pub fn to_f64(self, decimals: u32) -> f64 {
        self.0 as f64 / 10u64.pow(decimals) as f64
    }

    /// Formats the score exactly, e.g. `Score(-12345)` with 2 decimals is
    /// `-123.45`.
    pub fn display(self, decimals: u32) -> FixedPoint {
        FixedPoint {
            raw: self.0,
            decimals,
        }
    }
}

/// Exact decimal rendering of a fixed-point integer.
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    raw: i64,
    decimals: u32,
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.decimals == 0 {
            return write!(f, "{}", self.raw);
        }
        let scale = 10u64.pow(self.decimals);
        let abs = self.raw.unsigned_abs();
        let sign = if self.raw < 0 { "-" } else { "" };
        write!(
            f,
            "{sign}{}.{:0width$}",
            abs / scale,
            abs % scale,
            width = self.decimals as usize
        )
    }
}

/// A combinatorial problem searched by sequential construction.
///
/// Moves are opaque to the engine: it only sees their codes and biases.
pub trait Problem {
    type State: Clone;
    type Move: Clone + PartialEq + fmt::Debug;

    fn root(&self) -> Self::State;

    /// Writes the legal moves of `state` into `moves`, replacing its contents.
    fn legal_moves(&self, state: &Self::State, moves: &mut Vec<Self::Move>);

    /// Applies a legal move. Must be a pure transition.
    fn play(&self, state: &mut Self::State, mv: &Self::Move);

    fn is_terminal(&self, state: &Self::State) -> bool;

    /// Score of a terminal state.
    fn score(&self, state: &Self::State) -> Score;

    fn code(&self, state: &Self::State, mv: &Self::Move) -> MoveCode;

    /// Additive prior inside the softmax. Defaults to no bias.
    fn bias(&self, _state: &Self::State, _mv: &Self::Move) -> f64 {
        0.0
    }

    /// Score assigned to a non-terminal state without legal moves. `None`
    /// turns such a state into a hard [`SearchError::DeadEnd`].
    fn dead_end_score(&self, _state: &Self::State) -> Option<Score> {
        None
    }

    /// Decimal places of the fixed-point score representation.
    fn score_decimals(&self) -> u32 {
        0
    }
}

/// Replays `sequence` from the root, checking each move against the legal
/// move list of the state it is played in.
pub fn replay<P: Problem + ?Sized>(
    problem: &P,
    sequence: &[P::Move],
) -> Result<P::State, SearchError> {
    let mut state = problem.root();
    let mut moves = Vec::new();
    for (step, mv) in sequence.iter().enumerate() {
        if problem.is_terminal(&state) {
            return Err(SearchError::PastTerminal { step });
        }
        problem.legal_moves(&state, &mut moves);
        if !moves.contains(mv) {
            return Err(SearchError::IllegalMove { step });
        }
        problem.play(&mut state, mv);
    }
    Ok(state)
}
