//! Weak Schur partitions.
//!
//! The integers `1, 2, 3, ...` are placed in order into `k` parts. A part is
//! weakly sum-free when it holds no `z = x + y` with `x != y` both in the
//! part. The search ends when the next integer fits in no part, and the score
//! is the last integer placed.
//!
//! Move codes pack `(part, integer, previous element of the part)`:
//!
//! ```text
//! bits 63..56  part index
//! bits 55..28  integer being placed
//! bits 27..0   largest element already in the part, 0 if empty
//! ```

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::problem::{MoveCode, Problem, Score};

/// Largest integer the move code can carry.
pub const MAX_CODED_INTEGER: u32 = (1 << 28) - 1;

/// Largest supported number of parts.
pub const MAX_PARTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("number of parts must be between 1 and {MAX_PARTS}, got {0}")]
    Parts(usize),
    #[error("integer {0} exceeds the encodable range")]
    CodeOverflow(u32),
}

/// How move generation treats the part holding the previous integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveRule {
    /// When the part holding `next - 1` accepts `next`, that part is the only
    /// move; otherwise every accepting part is a move.
    #[default]
    Selective,
    /// Every accepting part is a move.
    All,
}

#[derive(Debug, Clone, Default)]
struct Part {
    members: Vec<u32>,
    /// Bit `z` set when `z` is the sum of two distinct members.
    forbidden: Vec<u64>,
}

impl Part {
    fn admits(&self, z: u32) -> bool {
        let (word, bit) = (z as usize / 64, z % 64);
        self.forbidden.get(word).is_none_or(|w| w & (1 << bit) == 0)
    }

    fn insert(&mut self, x: u32) {
        for &y in &self.members {
            let z = (x + y) as usize;
            let word = z / 64;
            if word >= self.forbidden.len() {
                self.forbidden.resize(word + 1, 0);
            }
            self.forbidden[word] |= 1 << (z % 64);
        }
        self.members.push(x);
    }

    fn last(&self) -> u32 {
        self.members.last().copied().unwrap_or(0)
    }
}

/// Partial partition of `1..=last_placed` into `k` parts.
#[derive(Debug, Clone)]
pub struct SchurState {
    parts: Vec<Part>,
    /// Part index of each placed integer; index 0 unused.
    owner: Vec<u8>,
}

impl SchurState {
    fn new(k: usize) -> Self {
        SchurState {
            parts: vec![Part::default(); k],
            owner: vec![0],
        }
    }

    /// Next integer to place.
    pub fn next(&self) -> u32 {
        self.owner.len() as u32
    }

    pub fn last_placed(&self) -> u32 {
        self.next() - 1
    }

    /// Whether `part` can take the next integer.
    pub fn admits(&self, part: usize) -> bool {
        self.parts[part].admits(self.next())
    }

    /// Members of every part, in placement order.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        self.parts.iter().map(|p| p.members.clone()).collect()
    }

    /// Part holding `x`, if placed.
    pub fn part_of(&self, x: u32) -> Option<usize> {
        (x >= 1 && x < self.next()).then(|| self.owner[x as usize] as usize)
    }

    fn place(&mut self, part: usize) {
        let x = self.next();
        self.parts[part].insert(x);
        self.owner.push(part as u8);
    }
}

/// The Weak Schur problem with `k` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeakSchur {
    k: usize,
    rule: MoveRule,
}

impl WeakSchur {
    pub fn new(k: usize, rule: MoveRule) -> Result<Self, SchurError> {
        if k == 0 || k > MAX_PARTS {
            return Err(SchurError::Parts(k));
        }
        Ok(WeakSchur { k, rule })
    }

    pub fn parts(&self) -> usize {
        self.k
    }

    pub fn rule(&self) -> MoveRule {
        self.rule
    }
}

/// Packs `(part, integer, previous)` into a move code.
pub fn schur_code(part: usize, integer: u32, previous: u32) -> Result<MoveCode, SchurError> {
    if integer > MAX_CODED_INTEGER {
        return Err(SchurError::CodeOverflow(integer));
    }
    if part >= MAX_PARTS {
        return Err(SchurError::Parts(part + 1));
    }
    debug_assert!(previous < integer);
    Ok(MoveCode(
        (part as u64) << 56 | (integer as u64) << 28 | previous as u64,
    ))
}

impl Problem for WeakSchur {
    type State = SchurState;
    /// Part index receiving the next integer.
    type Move = usize;

    fn root(&self) -> SchurState {
        SchurState::new(self.k)
    }

    fn legal_moves(&self, state: &SchurState, moves: &mut Vec<usize>) {
        moves.clear();
        if self.rule == MoveRule::Selective {
            if let Some(prev) = state.part_of(state.next() - 1) {
                if state.admits(prev) {
                    moves.push(prev);
                    return;
                }
            }
        }
        moves.extend((0..self.k).filter(|&p| state.admits(p)));
    }

    fn play(&self, state: &mut SchurState, part: &usize) {
        assert!(
            state.admits(*part),
            "part {part} does not admit {}",
            state.next()
        );
        state.place(*part);
    }

    fn is_terminal(&self, state: &SchurState) -> bool {
        (0..self.k).all(|p| !state.admits(p))
    }

    fn score(&self, state: &SchurState) -> Score {
        Score(state.last_placed() as i64)
    }

    fn code(&self, state: &SchurState, part: &usize) -> MoveCode {
        schur_code(*part, state.next(), state.parts[*part].last())
            .expect("integer exceeds the move code range")
    }
}

/// Why a partition is not a valid Weak Schur partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `x + y = z` with `x < y`, all three in `part`.
    Sum { x: u32, y: u32, z: u32, part: usize },
    /// `value` is missing from `1..=max`.
    Missing { value: u32 },
    /// `value` appears more than once (or is zero).
    Duplicate { value: u32 },
}

/// Checks that every part is weakly sum-free and, with `check_cover`, that
/// the parts jointly hold each of `1..=max` exactly once. Reports the first
/// violation found, scanning parts in order and each part's sums by
/// increasing `z`, then `x`.
pub fn validate_partition(parts: &[Vec<u32>], check_cover: bool) -> Result<(), Violation> {
    for (p, part) in parts.iter().enumerate() {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        for &z in &sorted {
            for &x in sorted.iter().take_while(|&&x| 2 * x < z) {
                if sorted.binary_search(&(z - x)).is_ok() {
                    return Err(Violation::Sum {
                        x,
                        y: z - x,
                        z,
                        part: p,
                    });
                }
            }
        }
    }
    if check_cover {
        let max = parts.iter().flatten().copied().max().unwrap_or(0);
        let mut seen = vec![false; max as usize + 1];
        for &v in parts.iter().flatten() {
            if v == 0 || seen[v as usize] {
                return Err(Violation::Duplicate { value: v });
            }
            seen[v as usize] = true;
        }
        if let Some(value) = (1..=max).find(|&v| !seen[v as usize]) {
            return Err(Violation::Missing { value });
        }
    }
    Ok(())
}

/// Move sequence placing each of `1..=max` into its part in `parts`.
pub fn sequence_for(parts: &[Vec<u32>]) -> Vec<usize> {
    let max = parts.iter().flatten().copied().max().unwrap_or(0);
    let mut seq = vec![usize::MAX; max as usize];
    for (p, part) in parts.iter().enumerate() {
        for &v in part {
            seq[v as usize - 1] = p;
        }
    }
    seq
}
