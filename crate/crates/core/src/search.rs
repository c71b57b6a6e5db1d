use alloc::vec::Vec;
use core::cell::Cell;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::error::SearchError;
use crate::policy::Policy;
use crate::problem::{MoveCode, Problem, Score};
use crate::rng::SearchRng;

/// Which nesting procedure drives the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Fixed iterations per level, every bias forced to zero.
    Nrpa,
    /// Fixed iterations per level with the problem's bias.
    Gnrpa,
    /// Each level loops until its best score has been found again more than
    /// `repetitions` times.
    Gnrpalr,
}

impl Algorithm {
    pub fn uses_bias(self) -> bool {
        !matches!(self, Algorithm::Nrpa)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nrpa => "nrpa",
            Algorithm::Gnrpa => "gnrpa",
            Algorithm::Gnrpalr => "gnrpalr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nrpa" => Ok(Algorithm::Nrpa),
            "gnrpa" => Ok(Algorithm::Gnrpa),
            "gnrpalr" => Ok(Algorithm::Gnrpalr),
            _ => Err(ConfigError::UnknownAlgorithm),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown algorithm (expected nrpa, gnrpa or gnrpalr)")]
    UnknownAlgorithm,
    #[error("iterations per level must be at least 1")]
    ZeroIterations,
    #[error("alpha must be a finite non-negative number")]
    InvalidAlpha,
    #[error("iteration cap must be at least 1")]
    ZeroIterationCap,
    #[error("time budget must be a finite non-negative number of seconds")]
    InvalidBudget,
    #[error("restarting requires a time budget or a target score")]
    UnboundedRestart,
}

/// Parameters of one search run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    /// Nesting depth; level 0 is a single playout.
    pub level: u32,
    /// Iterations per level (NRPA and GNRPA).
    pub iterations: u32,
    /// Repetition threshold per level (GNRPALR).
    pub repetitions: u32,
    /// Adaptation step size.
    pub alpha: f64,
    /// Optional bound on GNRPALR iterations per level.
    pub iteration_cap: Option<u64>,
    pub seed: u64,
    /// Wall-clock budget in seconds, checked at level-loop boundaries.
    pub time_budget: Option<f64>,
    /// Stop as soon as a playout scores at least this much.
    pub target: Option<Score>,
    /// Start a fresh top-level search with an empty policy whenever one
    /// finishes, until the budget expires or the target is reached.
    pub restart: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::Gnrpa,
            level: 3,
            iterations: 100,
            repetitions: 0,
            alpha: 1.0,
            iteration_cap: None,
            seed: 1,
            time_budget: None,
            target: None,
            restart: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.iterations == 0 && self.algorithm != Algorithm::Gnrpalr {
            return Err(ConfigError::ZeroIterations);
        }
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(ConfigError::InvalidAlpha);
        }
        if self.iteration_cap == Some(0) {
            return Err(ConfigError::ZeroIterationCap);
        }
        if let Some(b) = self.time_budget {
            if !(b.is_finite() && b >= 0.0) {
                return Err(ConfigError::InvalidBudget);
            }
        }
        if self.restart && self.time_budget.is_none() && self.target.is_none() {
            return Err(ConfigError::UnboundedRestart);
        }
        Ok(())
    }
}

/// Source of elapsed time, in seconds since the search started.
pub trait Clock {
    fn elapsed_seconds(&self) -> f64;
}

impl<F: Fn() -> f64> Clock for F {
    fn elapsed_seconds(&self) -> f64 {
        self()
    }
}

/// Deterministic clock that advances by a fixed step on every reading.
#[derive(Debug, Default)]
pub struct StepClock {
    now: Cell<f64>,
    step: f64,
}

impl StepClock {
    pub fn new(step: f64) -> Self {
        StepClock {
            now: Cell::new(0.0),
            step,
        }
    }

    /// A clock that always reads zero.
    pub fn frozen() -> Self {
        StepClock::new(0.0)
    }
}

impl Clock for StepClock {
    fn elapsed_seconds(&self) -> f64 {
        let t = self.now.get();
        self.now.set(t + self.step);
        t
    }
}

/// Score of a terminal state together with the moves that reached it.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayoutResult<M> {
    pub score: Score,
    pub sequence: Vec<M>,
}

/// Improvement of the global best score during a search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnytimeRecord {
    pub elapsed: f64,
    pub score: Score,
    /// Playouts executed so far, including the improving one.
    pub playouts: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<M> {
    pub best: PlayoutResult<M>,
    pub records: Vec<AnytimeRecord>,
    pub playouts: u64,
    /// Top-level searches started after the first one.
    pub restarts: u64,
    /// Whether the budget or the target ended the search.
    pub stopped: bool,
}

/// Fills `probs` with the softmax of `weight(code(m)) + bias(m)` over `moves`.
///
/// The maximum logit is subtracted before exponentiation. With `use_bias`
/// false every bias is taken as zero.
pub fn move_probabilities<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    state: &P::State,
    moves: &[P::Move],
    use_bias: bool,
    probs: &mut Vec<f64>,
) -> Result<(), SearchError> {
    if moves.is_empty() {
        return Err(SearchError::DeadEnd { depth: 0 });
    }
    probs.clear();
    let mut max = f64::NEG_INFINITY;
    for mv in moves {
        let mut logit = policy.weight(problem.code(state, mv));
        if use_bias {
            let b = problem.bias(state, mv);
            debug_assert!(b.is_finite(), "bias must be finite");
            logit += b;
        }
        if logit > max {
            max = logit;
        }
        probs.push(logit);
    }
    let mut z = 0.0;
    for p in probs.iter_mut() {
        *p = libm::exp(*p - max);
        z += *p;
    }
    for p in probs.iter_mut() {
        *p /= z;
    }
    Ok(())
}

fn sample(probs: &[f64], rng: &mut SearchRng) -> usize {
    let u = rng.next_f64();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // Rounding left `acc` just below 1; fall back to the last supported move.
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

#[derive(Debug)]
struct Scratch<M> {
    moves: Vec<M>,
    probs: Vec<f64>,
    deltas: Vec<(MoveCode, f64)>,
}

impl<M> Scratch<M> {
    fn new() -> Self {
        Scratch {
            moves: Vec::new(),
            probs: Vec::new(),
            deltas: Vec::new(),
        }
    }
}

fn playout_with<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    rng: &mut SearchRng,
    use_bias: bool,
    scratch: &mut Scratch<P::Move>,
) -> Result<PlayoutResult<P::Move>, SearchError> {
    let mut state = problem.root();
    let mut sequence = Vec::new();
    loop {
        if problem.is_terminal(&state) {
            return Ok(PlayoutResult {
                score: problem.score(&state),
                sequence,
            });
        }
        problem.legal_moves(&state, &mut scratch.moves);
        if scratch.moves.is_empty() {
            return match problem.dead_end_score(&state) {
                Some(score) => Ok(PlayoutResult { score, sequence }),
                None => Err(SearchError::DeadEnd {
                    depth: sequence.len(),
                }),
            };
        }
        let mv = if scratch.moves.len() == 1 {
            scratch.moves[0].clone()
        } else {
            move_probabilities(
                problem,
                policy,
                &state,
                &scratch.moves,
                use_bias,
                &mut scratch.probs,
            )?;
            scratch.moves[sample(&scratch.probs, rng)].clone()
        };
        problem.play(&mut state, &mv);
        sequence.push(mv);
    }
}

/// Samples one trajectory from the root, choosing each move from the
/// softmax of weights plus biases.
pub fn playout<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    rng: &mut SearchRng,
    use_bias: bool,
) -> Result<PlayoutResult<P::Move>, SearchError> {
    playout_with(problem, policy, rng, use_bias, &mut Scratch::new())
}

#[allow(clippy::too_many_arguments)]
fn push_step_deltas<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    state: &P::State,
    moves: &[P::Move],
    played: usize,
    alpha: f64,
    use_bias: bool,
    probs: &mut Vec<f64>,
    out: &mut Vec<(MoveCode, f64)>,
) -> Result<(), SearchError> {
    move_probabilities(problem, policy, state, moves, use_bias, probs)?;
    for (i, (mv, &p)) in moves.iter().zip(probs.iter()).enumerate() {
        let delta = if i == played { 1.0 } else { 0.0 };
        out.push((problem.code(state, mv), -alpha * (p - delta)));
    }
    Ok(())
}

/// Weight changes contributed by one step of [`adapt`]: one entry per legal
/// move, `-alpha * (p_m - [m == played])`.
pub fn step_deltas<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    state: &P::State,
    moves: &[P::Move],
    played: &P::Move,
    alpha: f64,
    use_bias: bool,
) -> Result<Vec<(MoveCode, f64)>, SearchError> {
    let idx = moves
        .iter()
        .position(|m| m == played)
        .ok_or(SearchError::IllegalMove { step: 0 })?;
    let mut out = Vec::with_capacity(moves.len());
    push_step_deltas(
        problem,
        policy,
        state,
        moves,
        idx,
        alpha,
        use_bias,
        &mut Vec::new(),
        &mut out,
    )?;
    Ok(out)
}

fn adapt_with<P: Problem + ?Sized>(
    problem: &P,
    policy: &mut Policy,
    sequence: &[P::Move],
    alpha: f64,
    use_bias: bool,
    scratch: &mut Scratch<P::Move>,
) -> Result<(), SearchError> {
    let mut state = problem.root();
    scratch.deltas.clear();
    for (step, mv) in sequence.iter().enumerate() {
        problem.legal_moves(&state, &mut scratch.moves);
        let idx = scratch
            .moves
            .iter()
            .position(|m| m == mv)
            .ok_or(SearchError::IllegalMove { step })?;
        // Probabilities always come from the policy as it was on entry; the
        // accumulated changes are applied once the whole sequence is walked.
        push_step_deltas(
            problem,
            policy,
            &state,
            &scratch.moves,
            idx,
            alpha,
            use_bias,
            &mut scratch.probs,
            &mut scratch.deltas,
        )?;
        problem.play(&mut state, mv);
    }
    for &(code, delta) in &scratch.deltas {
        policy.add(code, delta);
    }
    Ok(())
}

/// Moves `policy` toward `sequence` in place. See [`adapt`].
pub fn adapt_in_place<P: Problem + ?Sized>(
    problem: &P,
    policy: &mut Policy,
    sequence: &[P::Move],
    alpha: f64,
    use_bias: bool,
) -> Result<(), SearchError> {
    adapt_with(
        problem,
        policy,
        sequence,
        alpha,
        use_bias,
        &mut Scratch::new(),
    )
}

/// Returns a copy of `policy` reinforced toward `sequence`.
///
/// At every step the played move gains `alpha * (1 - p)` and every other
/// legal move loses `alpha * p`, with `p` computed from the input policy.
pub fn adapt<P: Problem + ?Sized>(
    problem: &P,
    policy: &Policy,
    sequence: &[P::Move],
    alpha: f64,
    use_bias: bool,
) -> Result<Policy, SearchError> {
    let mut out = policy.clone();
    adapt_in_place(problem, &mut out, sequence, alpha, use_bias)?;
    Ok(out)
}

/// Stateful driver for one search: owns the random stream, counts playouts,
/// tracks the global best and decides when to stop.
pub struct Searcher<'a, P: Problem, C: Clock + ?Sized> {
    problem: &'a P,
    clock: &'a C,
    config: SearchConfig,
    rng: SearchRng,
    scratch: Scratch<P::Move>,
    playouts: u64,
    best: Option<Score>,
    records: Vec<AnytimeRecord>,
    listener: Option<&'a mut dyn FnMut(&AnytimeRecord)>,
    stopped: bool,
}

impl<'a, P: Problem, C: Clock + ?Sized> Searcher<'a, P, C> {
    pub fn new(problem: &'a P, config: &SearchConfig, clock: &'a C) -> Result<Self, ConfigError> {
        config.validate()?;
        Ok(Searcher {
            problem,
            clock,
            config: *config,
            rng: SearchRng::new(config.seed),
            scratch: Scratch::new(),
            playouts: 0,
            best: None,
            records: Vec::new(),
            listener: None,
            stopped: false,
        })
    }

    /// Registers a callback invoked on every improvement of the global best.
    pub fn with_listener(mut self, listener: &'a mut dyn FnMut(&AnytimeRecord)) -> Self {
        self.listener = Some(listener);
        self
    }

    pub fn playouts(&self) -> u64 {
        self.playouts
    }

    pub fn records(&self) -> &[AnytimeRecord] {
        &self.records
    }

    pub fn best_score(&self) -> Option<Score> {
        self.best
    }

    fn use_bias(&self) -> bool {
        self.config.algorithm.uses_bias()
    }

    fn note(&mut self, score: Score) {
        if self.best.is_some_and(|b| score <= b) {
            return;
        }
        self.best = Some(score);
        let record = AnytimeRecord {
            elapsed: self.clock.elapsed_seconds(),
            score,
            playouts: self.playouts,
        };
        self.records.push(record);
        if let Some(listener) = self.listener.as_mut() {
            listener(&record);
        }
    }

    /// True once the target is reached or the time budget has expired.
    /// Sticky: after returning true it keeps returning true.
    pub fn should_stop(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if let (Some(target), Some(best)) = (self.config.target, self.best) {
            if best >= target {
                self.stopped = true;
                return true;
            }
        }
        if let Some(budget) = self.config.time_budget {
            if self.clock.elapsed_seconds() >= budget {
                self.stopped = true;
            }
        }
        self.stopped
    }

    pub fn playout(&mut self, policy: &Policy) -> Result<PlayoutResult<P::Move>, SearchError> {
        let use_bias = self.use_bias();
        let result = playout_with(
            self.problem,
            policy,
            &mut self.rng,
            use_bias,
            &mut self.scratch,
        )?;
        self.playouts += 1;
        self.note(result.score);
        Ok(result)
    }

    pub fn adapt(&mut self, policy: &mut Policy, sequence: &[P::Move]) -> Result<(), SearchError> {
        let use_bias = self.use_bias();
        adapt_with(
            self.problem,
            policy,
            sequence,
            self.config.alpha,
            use_bias,
            &mut self.scratch,
        )
    }

    /// Fixed-iteration nesting. Each of the `iterations` rounds searches one
    /// level lower with a copy of this level's policy, keeps the result if it
    /// scores at least as well as the level best, then adapts this level's
    /// policy toward the level best.
    pub fn gnrpa(
        &mut self,
        level: u32,
        policy: Policy,
    ) -> Result<PlayoutResult<P::Move>, SearchError> {
        if level == 0 {
            return self.playout(&policy);
        }
        let mut policy = policy;
        let mut best: Option<PlayoutResult<P::Move>> = None;
        for _ in 0..self.config.iterations {
            let result = self.gnrpa(level - 1, policy.clone())?;
            match &best {
                Some(b) if result.score < b.score => {}
                _ => best = Some(result),
            }
            if self.should_stop() {
                break;
            }
            let seq = &best.as_ref().expect("set on first iteration").sequence;
            self.adapt(&mut policy, seq)?;
        }
        Ok(best.expect("iterations >= 1"))
    }

    /// Repetition-limited nesting. A level keeps searching one level lower
    /// until the score of its best sequence has been returned again more than
    /// `repetitions` times. Strict improvements reset the count; lower scores
    /// leave it untouched.
    pub fn gnrpalr(
        &mut self,
        level: u32,
        policy: Policy,
    ) -> Result<PlayoutResult<P::Move>, SearchError> {
        if level == 0 {
            return self.playout(&policy);
        }
        let mut policy = policy;
        let mut best: Option<PlayoutResult<P::Move>> = None;
        let mut repetitions = 0u32;
        let mut iterations = 0u64;
        while repetitions <= self.config.repetitions {
            let result = self.gnrpalr(level - 1, policy.clone())?;
            iterations += 1;
            match &best {
                Some(b) if result.score == b.score => repetitions += 1,
                Some(b) if result.score < b.score => {}
                _ => {
                    repetitions = 0;
                    best = Some(result);
                }
            }
            if self.should_stop()
                || self
                    .config
                    .iteration_cap
                    .is_some_and(|cap| iterations >= cap)
            {
                break;
            }
            let seq = &best.as_ref().expect("set on first iteration").sequence;
            self.adapt(&mut policy, seq)?;
        }
        Ok(best.expect("loop runs at least once"))
    }

    /// One top-level search at the configured level with an empty policy.
    pub fn search_once(&mut self) -> Result<PlayoutResult<P::Move>, SearchError> {
        let level = self.config.level;
        match self.config.algorithm {
            Algorithm::Nrpa | Algorithm::Gnrpa => self.gnrpa(level, Policy::new()),
            Algorithm::Gnrpalr => self.gnrpalr(level, Policy::new()),
        }
    }
}

/// Runs a search to completion, restarting if configured, and returns the
/// best result with the anytime trace of global-best improvements.
pub fn run_search<P: Problem, C: Clock + ?Sized>(
    problem: &P,
    config: &SearchConfig,
    clock: &C,
) -> Result<SearchOutcome<P::Move>, SearchError> {
    run_search_with(problem, config, clock, &mut |_| {})
}

/// [`run_search`] with a callback invoked on every global-best improvement.
pub fn run_search_with<P: Problem, C: Clock + ?Sized>(
    problem: &P,
    config: &SearchConfig,
    clock: &C,
    on_improve: &mut dyn FnMut(&AnytimeRecord),
) -> Result<SearchOutcome<P::Move>, SearchError> {
    let mut searcher = Searcher::new(problem, config, clock)?.with_listener(on_improve);
    let mut best: Option<PlayoutResult<P::Move>> = None;
    let mut restarts = 0;
    loop {
        let result = searcher.search_once()?;
        if best.as_ref().is_none_or(|b| result.score > b.score) {
            best = Some(result);
        }
        if !config.restart || searcher.should_stop() {
            break;
        }
        restarts += 1;
    }
    let stopped = searcher.should_stop();
    Ok(SearchOutcome {
        best: best.expect("at least one search"),
        playouts: searcher.playouts,
        records: core::mem::take(&mut searcher.records),
        restarts,
        stopped,
    })
}
