//! Nested rollout policy adaptation.
//!
//! The crate provides the policy table and the search procedures (biased
//! softmax playouts, policy adaptation, fixed-iteration nesting and
//! repetition-limited nesting) over the [`Problem`] trait, plus two problem
//! adapters: the traveling salesman problem with time windows ([`tsptw`]) and
//! the Weak Schur partition problem ([`weakschur`]).
//!
//! The crate is `no_std` and only needs `alloc`. Wall-clock time enters the
//! search through the [`Clock`] trait so callers with an OS can supply one.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod policy;
mod problem;
mod rng;
mod search;

pub mod tsptw;
pub mod weakschur;

pub use crate::error::SearchError;
pub use crate::policy::Policy;
pub use crate::problem::{replay, MoveCode, Problem, Score};
pub use crate::rng::SearchRng;
pub use crate::search::{
    adapt, adapt_in_place, move_probabilities, playout, run_search, run_search_with, step_deltas,
    Algorithm, AnytimeRecord, Clock, ConfigError, PlayoutResult, SearchConfig, SearchOutcome,
    Searcher, StepClock,
};
