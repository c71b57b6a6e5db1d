//! Traveling salesman problem with time windows.
//!
//! Node 0 is the depot. A tour leaves the depot at its ready time, visits
//! every other node once and returns to the depot. Arriving before a node's
//! ready time means waiting; arriving after its due time counts one
//! violation. The score is `-(violations * 10^6) - travel cost`.
//!
//! All times and costs are held as fixed-point integers with the largest
//! number of decimals found in the instance, so scores compare exactly.
//!
//! Instances use the plain text layout: the node count on the first line,
//! then one row of the travel-time matrix per line, then one `ready due`
//! pair per line. Blank lines and lines starting with `#` are ignored.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::problem::{MoveCode, Problem, Score};

/// Penalty per violated window, in cost units.
pub const VIOLATION_PENALTY: i64 = 1_000_000;

/// Most decimals accepted in instance numbers.
pub const MAX_DECIMALS: u32 = 6;

/// Magnitude of the distance bias at the longest edge.
pub const BIAS_SCALE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing node count")]
    MissingCount,
    #[error("invalid node count")]
    BadCount,
    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("not a number: {0:?}")]
    NotANumber(alloc::string::String),
    #[error("more than {MAX_DECIMALS} decimals")]
    TooPrecise,
    #[error("value out of range")]
    OutOfRange,
    #[error("travel times must be non-negative")]
    NegativeCost,
    #[error("travel time from a node to itself must be 0")]
    NonZeroDiagonal,
    #[error("ready time exceeds due time")]
    InvertedWindow,
    #[error("file ends before the {0} section is complete")]
    Truncated(&'static str),
    #[error("unexpected data after the time windows")]
    Trailing,
}

/// Instance parse failure. `line` is 1-based; 0 means end of input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance needs at least one node")]
    Empty,
    #[error("cost matrix must be {n}x{n}")]
    Shape { n: usize },
    #[error("cost[{from}][{to}] is invalid (negative, or non-zero on the diagonal)")]
    Cost { from: usize, to: usize },
    #[error("window of node {0} has ready > due")]
    Window(usize),
    #[error("decimals must be at most {MAX_DECIMALS}")]
    Decimals,
}

/// Fixed-point decimal literal: `digits / 10^decimals`.
#[derive(Debug, Clone, Copy)]
struct Decimal {
    digits: i64,
    decimals: u32,
}

impl Decimal {
    fn parse(token: &str) -> Result<Self, ParseErrorKind> {
        let bad = || ParseErrorKind::NotANumber(token.into());
        let (neg, body) = match token.as_bytes().first() {
            Some(b'-') => (true, &token[1..]),
            Some(b'+') => (false, &token[1..]),
            _ => (false, token),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > MAX_DECIMALS as usize {
            return Err(ParseErrorKind::TooPrecise);
        }
        let mut digits: i64 = 0;
        for b in int.bytes().chain(frac.bytes()) {
            digits = digits
                .checked_mul(10)
                .and_then(|d| d.checked_add((b - b'0') as i64))
                .ok_or(ParseErrorKind::OutOfRange)?;
        }
        Ok(Decimal {
            digits: if neg { -digits } else { digits },
            decimals: frac.len() as u32,
        })
    }

    fn rescale(self, decimals: u32) -> Option<i64> {
        self.digits.checked_mul(10i64.pow(decimals - self.decimals))
    }
}

/// Travel-time matrix and time windows, in fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsptwInstance {
    n: usize,
    decimals: u32,
    /// Row-major `n * n`.
    cost: Vec<i64>,
    windows: Vec<(i64, i64)>,
    min_cost: i64,
    max_cost: i64,
}

impl TsptwInstance {
    /// Builds an instance from fixed-point values with `decimals` decimals.
    pub fn new(
        cost: Vec<Vec<i64>>,
        windows: Vec<(i64, i64)>,
        decimals: u32,
    ) -> Result<Self, InstanceError> {
        let n = cost.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if decimals > MAX_DECIMALS {
            return Err(InstanceError::Decimals);
        }
        if windows.len() != n || cost.iter().any(|row| row.len() != n) {
            return Err(InstanceError::Shape { n });
        }
        for (i, row) in cost.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c < 0 || (i == j && c != 0) {
                    return Err(InstanceError::Cost { from: i, to: j });
                }
            }
        }
        if let Some(i) = windows.iter().position(|&(r, d)| r > d) {
            return Err(InstanceError::Window(i));
        }
        let off_diagonal = || {
            cost.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i))
                .map(|(_, &c)| c)
        };
        let min_cost = off_diagonal().min().unwrap_or(0);
        let max_cost = off_diagonal().max().unwrap_or(0);
        Ok(TsptwInstance {
            n,
            decimals,
            cost: cost.into_iter().flatten().collect(),
            windows,
            min_cost,
            max_cost,
        })
    }

    /// Node count, depot included.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn decimals(&self) -> u32 {
        self.decimals
    }

    /// Fixed-point travel time.
    #[inline]
    pub fn cost(&self, from: usize, to: usize) -> i64 {
        self.cost[from * self.n + to]
    }

    /// Fixed-point `(ready, due)` window.
    pub fn window(&self, node: usize) -> (i64, i64) {
        self.windows[node]
    }

    /// Smallest and largest off-diagonal travel times.
    pub fn cost_range(&self) -> (i64, i64) {
        (self.min_cost, self.max_cost)
    }

    /// One fixed-point unit of the instance, i.e. `10^decimals`.
    pub fn unit(&self) -> i64 {
        10i64.pow(self.decimals)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn row(line: usize, text: &str, expected: usize) -> Result<Vec<Decimal>, ParseError> {
    let values = text
        .split_whitespace()
        .map(Decimal::parse)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|kind| ParseError { line, kind })?;
    if values.len() != expected {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Arity {
                expected,
                found: values.len(),
            },
        });
    }
    Ok(values)
}

/// Parses an instance in the text layout described in the module docs.
pub fn parse_instance(text: &str) -> Result<TsptwInstance, ParseError> {
    let mut lines = content_lines(text);
    let (count_line, count) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingCount,
    })?;
    let n: usize = count.parse().ok().filter(|&n| n > 0).ok_or(ParseError {
        line: count_line,
        kind: ParseErrorKind::BadCount,
    })?;

    let mut matrix = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = lines.next().ok_or(ParseError {
            line: 0,
            kind: ParseErrorKind::Truncated("travel time"),
        })?;
        matrix.push((line, row(line, text, n)?));
    }
    let mut windows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = lines.next().ok_or(ParseError {
            line: 0,
            kind: ParseErrorKind::Truncated("time window"),
        })?;
        windows.push((line, row(line, text, 2)?));
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Trailing,
        });
    }

    let decimals = matrix
        .iter()
        .chain(windows.iter())
        .flat_map(|(_, r)| r.iter().map(|d| d.decimals))
        .max()
        .unwrap_or(0);
    let fixed = |line: usize, d: &Decimal| {
        d.rescale(decimals).ok_or(ParseError {
            line,
            kind: ParseErrorKind::OutOfRange,
        })
    };

    let mut cost = Vec::with_capacity(n);
    for (i, (line, r)) in matrix.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, d) in r.iter().enumerate() {
            let c = fixed(*line, d)?;
            let kind = if c < 0 {
                Some(ParseErrorKind::NegativeCost)
            } else if i == j && c != 0 {
                Some(ParseErrorKind::NonZeroDiagonal)
            } else {
                None
            };
            if let Some(kind) = kind {
                return Err(ParseError { line: *line, kind });
            }
            out.push(c);
        }
        cost.push(out);
    }
    let mut tw = Vec::with_capacity(n);
    for (line, r) in &windows {
        let (ready, due) = (fixed(*line, &r[0])?, fixed(*line, &r[1])?);
        if ready > due {
            return Err(ParseError {
                line: *line,
                kind: ParseErrorKind::InvertedWindow,
            });
        }
        tw.push((ready, due));
    }
    Ok(TsptwInstance::new(cost, tw, decimals).expect("validated while parsing"))
}

/// Writes the instance back in its text layout.
impl fmt::Display for TsptwInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = |v: i64| Score(v).display(self.decimals);
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", num(self.cost(i, j)))?;
            }
            writeln!(f)?;
        }
        for &(r, d) in &self.windows {
            writeln!(f, "{} {}", num(r), num(d))?;
        }
        Ok(())
    }
}

/// Partial tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsptwState {
    route: Vec<usize>,
    visited: Vec<bool>,
    time: i64,
    violations: u32,
    cost: i64,
    closed: bool,
}

impl TsptwState {
    pub fn route(&self) -> &[usize] {
        &self.route
    }

    /// Current time (fixed point), after any waiting.
    pub fn time(&self) -> i64 {
        self.time
    }

    pub fn violations(&self) -> u32 {
        self.violations
    }

    /// Travel cost so far (fixed point).
    pub fn cost(&self) -> i64 {
        self.cost
    }

    /// True once the tour has returned to the depot.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn all_visited(&self) -> bool {
        self.route.len() == self.visited.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TourError {
    #[error("tour is already closed")]
    Closed,
    #[error("node {0} does not exist")]
    NoSuchNode(usize),
    #[error("node {0} was already visited")]
    Revisit(usize),
    #[error("the depot can only be re-entered after every node is visited")]
    EarlyReturn,
    #[error("tour is not closed")]
    Open,
}

/// Sign of the distance bias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BiasSign {
    /// Long edges get a positive bias, as in `+10 * normalized distance`.
    Positive,
    /// Long edges are penalized.
    #[default]
    Negative,
}

impl BiasSign {
    fn factor(self) -> f64 {
        match self {
            BiasSign::Positive => 1.0,
            BiasSign::Negative => -1.0,
        }
    }
}

/// TSPTW search problem over a parsed instance.
#[derive(Debug, Clone)]
pub struct Tsptw {
    instance: TsptwInstance,
    sign: BiasSign,
}

impl Tsptw {
    pub fn new(instance: TsptwInstance, sign: BiasSign) -> Self {
        Tsptw { instance, sign }
    }

    pub fn instance(&self) -> &TsptwInstance {
        &self.instance
    }

    pub fn start(&self) -> TsptwState {
        let n = self.instance.n;
        let mut visited = alloc::vec![false; n];
        visited[0] = true;
        TsptwState {
            route: alloc::vec![0],
            visited,
            time: self.instance.window(0).0,
            violations: 0,
            cost: 0,
            closed: false,
        }
    }

    /// Travels from the last node of the tour to `next`.
    pub fn visit(&self, state: &mut TsptwState, next: usize) -> Result<(), TourError> {
        let inst = &self.instance;
        if state.closed {
            return Err(TourError::Closed);
        }
        if next >= inst.n {
            return Err(TourError::NoSuchNode(next));
        }
        let closing = next == 0;
        if closing && !state.all_visited() {
            return Err(TourError::EarlyReturn);
        }
        if !closing && state.visited[next] {
            return Err(TourError::Revisit(next));
        }
        let last = *state.route.last().expect("tour starts at the depot");
        let edge = inst.cost(last, next);
        let arrival = state.time + edge;
        let (ready, due) = inst.window(next);
        if arrival > due {
            state.violations += 1;
        }
        state.time = arrival.max(ready);
        state.cost += edge;
        if closing {
            state.closed = true;
        } else {
            state.visited[next] = true;
            state.route.push(next);
        }
        Ok(())
    }

    /// `-(violations * 10^6) - cost` in the instance's fixed point.
    pub fn tour_score(&self, state: &TsptwState) -> Result<Score, TourError> {
        if !state.closed {
            return Err(TourError::Open);
        }
        let penalty = state.violations as i64 * VIOLATION_PENALTY * self.instance.unit();
        Ok(Score(-penalty - state.cost))
    }

    /// Normalized distance bias for travelling from the tour's last node to
    /// `next`, scaled to `[-10, 10]`.
    pub fn distance_bias(&self, state: &TsptwState, next: usize) -> f64 {
        let (min, max) = self.instance.cost_range();
        if max <= min {
            return 0.0;
        }
        let last = *state.route.last().expect("tour starts at the depot");
        let d = self.instance.cost(last, next);
        self.sign.factor() * BIAS_SCALE * (d - min) as f64 / (max - min) as f64
    }

    /// Builds the closed tour visiting `order` (depot excluded) in sequence.
    pub fn tour(&self, order: &[usize]) -> Result<TsptwState, TourError> {
        let mut s = self.start();
        for &node in order {
            self.visit(&mut s, node)?;
        }
        self.visit(&mut s, 0)?;
        Ok(s)
    }
}

impl Problem for Tsptw {
    type State = TsptwState;
    /// Node to travel to next; 0 closes the tour.
    type Move = usize;

    fn root(&self) -> TsptwState {
        self.start()
    }

    fn legal_moves(&self, state: &TsptwState, moves: &mut Vec<usize>) {
        moves.clear();
        if state.closed {
            return;
        }
        if state.all_visited() {
            moves.push(0);
        } else {
            moves.extend((1..self.instance.n).filter(|&i| !state.visited[i]));
        }
    }

    fn play(&self, state: &mut TsptwState, mv: &usize) {
        self.visit(state, *mv).expect("illegal TSPTW move");
    }

    fn is_terminal(&self, state: &TsptwState) -> bool {
        state.closed
    }

    fn score(&self, state: &TsptwState) -> Score {
        self.tour_score(state).expect("score of an open tour")
    }

    /// Code of the edge `(last, next)`.
    fn code(&self, state: &TsptwState, mv: &usize) -> MoveCode {
        let last = *state.route.last().expect("tour starts at the depot");
        MoveCode((last * self.instance.n + mv) as u64)
    }

    fn bias(&self, state: &TsptwState, mv: &usize) -> f64 {
        self.distance_bias(state, *mv)
    }

    fn score_decimals(&self) -> u32 {
        self.instance.decimals
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::replay;
    use alloc::string::ToString;
    use alloc::vec;

    const THREE: &str = "3\n0 1 2\n1 0 1\n2 1 0\n0 100\n0 100\n0 100\n";

    fn three(sign: BiasSign) -> Tsptw {
        Tsptw::new(parse_instance(THREE).unwrap(), sign)
    }

    #[test]
    fn parses_single_node() {
        let inst = parse_instance("1\n0\n0 100\n").unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.window(0), (0, 100));
        let p = Tsptw::new(inst, BiasSign::Negative);
        let end = replay(&p, &[0]).unwrap();
        assert_eq!(p.score(&end), Score(0));
    }

    #[test]
    fn parses_three_nodes_exactly() {
        let inst = parse_instance(THREE).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.decimals(), 0);
        let m: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| inst.cost(i, j)).collect())
            .collect();
        assert_eq!(m, vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
        assert!((0..3).all(|i| inst.window(i) == (0, 100)));
        assert_eq!(inst.cost_range(), (1, 2));
        assert_eq!(inst.to_string(), THREE);
    }

    #[test]
    fn decimals_become_fixed_point() {
        let text = "# header\n\n2\n0 1.25\n3.5 0.0\n0 10\n0.125 99.5\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.decimals(), 3);
        assert_eq!(inst.cost(0, 1), 1250);
        assert_eq!(inst.cost(1, 0), 3500);
        assert_eq!(inst.window(1), (125, 99_500));
        assert_eq!(parse_instance(&inst.to_string()).unwrap(), inst);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = |t: &str| parse_instance(t).unwrap_err();
        assert_eq!(err("").kind, ParseErrorKind::MissingCount);
        assert_eq!(err("x\n").line, 1);
        assert_eq!(
            err("2\n0 1\n1\n0 1\n0 1\n"),
            ParseError {
                line: 3,
                kind: ParseErrorKind::Arity {
                    expected: 2,
                    found: 1
                }
            }
        );
        assert_eq!(
            err("2\n0 1\n1 zero\n0 1\n0 1\n"),
            ParseError {
                line: 3,
                kind: ParseErrorKind::NotANumber("zero".to_string())
            }
        );
        assert_eq!(
            err("2\n0 1\n1 0\n0 1\n5 1\n"),
            ParseError {
                line: 5,
                kind: ParseErrorKind::InvertedWindow
            }
        );
        assert_eq!(
            err("2\n0 -1\n1 0\n0 1\n0 1\n").kind,
            ParseErrorKind::NegativeCost
        );
        assert_eq!(
            err("2\n1 1\n1 0\n0 1\n0 1\n").kind,
            ParseErrorKind::NonZeroDiagonal
        );
        assert_eq!(
            err("2\n0 1\n1 0\n0 1\n").kind,
            ParseErrorKind::Truncated("time window")
        );
        assert_eq!(err("2\n0 1\n1 0\n0 1\n0 1\n7\n").line, 6);
        assert_eq!(err("1\n0.0000001\n0 1\n").kind, ParseErrorKind::TooPrecise);
        assert_eq!(
            err("1\n1e3\n0 1\n").kind,
            ParseErrorKind::NotANumber("1e3".to_string())
        );
    }

    #[test]
    fn three_node_tour() {
        let p = three(BiasSign::Negative);
        let end = replay(&p, &[1, 2, 0]).unwrap();
        assert_eq!(end.cost(), 4);
        assert_eq!(end.violations(), 0);
        assert_eq!(p.score(&end), Score(-4));
    }

    #[test]
    fn arrival_at_due_is_feasible() {
        let inst =
            TsptwInstance::new(vec![vec![0, 5], vec![5, 0]], vec![(0, 100), (0, 5)], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        let s = p.tour(&[1]).unwrap();
        assert_eq!(s.violations(), 0);
        let inst =
            TsptwInstance::new(vec![vec![0, 6], vec![6, 0]], vec![(0, 100), (0, 5)], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        assert_eq!(p.tour(&[1]).unwrap().violations(), 1);
    }

    #[test]
    fn early_arrival_waits_without_cost() {
        let inst =
            TsptwInstance::new(vec![vec![0, 3], vec![3, 0]], vec![(0, 100), (10, 20)], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        let mut s = p.start();
        p.visit(&mut s, 1).unwrap();
        assert_eq!(s.time(), 10);
        assert_eq!(s.cost(), 3);
        p.visit(&mut s, 0).unwrap();
        assert_eq!(s.time(), 13);
        assert_eq!(p.score(&s), Score(-6));
    }

    #[test]
    fn late_depot_return_counts() {
        let inst =
            TsptwInstance::new(vec![vec![0, 3], vec![3, 0]], vec![(0, 5), (0, 20)], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        let s = p.tour(&[1]).unwrap();
        assert_eq!(s.violations(), 1);
        assert_eq!(p.score(&s), Score(-1_000_006));
    }

    #[test]
    fn score_formula() {
        let inst = TsptwInstance::new(vec![vec![0]], vec![(0, 0)], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        let mut s = p.start();
        p.visit(&mut s, 0).unwrap();
        assert_eq!(p.tour_score(&s), Ok(Score(0)));
        s.violations = 2;
        s.cost = 100;
        assert_eq!(p.tour_score(&s), Ok(Score(-2_000_100)));
        // fixed point: same tour with two decimals
        let inst = TsptwInstance::new(vec![vec![0]], vec![(0, 0)], 2).unwrap();
        let p = Tsptw::new(inst, BiasSign::Negative);
        s.cost = 10_000;
        assert_eq!(
            p.tour_score(&s).unwrap().display(2).to_string(),
            "-2000100.00"
        );
    }

    #[test]
    fn tour_rule_errors() {
        let p = three(BiasSign::Negative);
        let mut s = p.start();
        assert_eq!(p.visit(&mut s, 0), Err(TourError::EarlyReturn));
        assert_eq!(p.visit(&mut s, 7), Err(TourError::NoSuchNode(7)));
        p.visit(&mut s, 1).unwrap();
        assert_eq!(p.visit(&mut s, 1), Err(TourError::Revisit(1)));
        assert_eq!(p.tour_score(&s), Err(TourError::Open));
        p.visit(&mut s, 2).unwrap();
        p.visit(&mut s, 0).unwrap();
        assert_eq!(p.visit(&mut s, 1), Err(TourError::Closed));
    }

    #[test]
    fn bias_values() {
        // min 1, max 3: distances 1, 2, 3 give 0, 5, 10 in magnitude.
        let inst = TsptwInstance::new(
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 1, 1],
                vec![2, 1, 0, 1],
                vec![3, 1, 1, 0],
            ],
            vec![(0, 100); 4],
            0,
        )
        .unwrap();
        for (sign, f) in [(BiasSign::Negative, -1.0), (BiasSign::Positive, 1.0)] {
            let p = Tsptw::new(inst.clone(), sign);
            let s = p.start();
            assert_eq!(p.bias(&s, &1), 0.0);
            assert_eq!(p.bias(&s, &2), f * 5.0);
            assert_eq!(p.bias(&s, &3), f * 10.0);
        }
    }

    #[test]
    fn flat_costs_have_no_bias() {
        let inst = TsptwInstance::new(vec![vec![0, 4], vec![4, 0]], vec![(0, 9); 2], 0).unwrap();
        let p = Tsptw::new(inst, BiasSign::Positive);
        assert_eq!(p.bias(&p.start(), &1), 0.0);
    }

    #[test]
    fn legal_moves_then_depot() {
        let p = three(BiasSign::Negative);
        let mut s = p.start();
        let mut moves = Vec::new();
        p.legal_moves(&s, &mut moves);
        assert_eq!(moves, vec![1, 2]);
        p.play(&mut s, &2);
        p.legal_moves(&s, &mut moves);
        assert_eq!(moves, vec![1]);
        p.play(&mut s, &1);
        p.legal_moves(&s, &mut moves);
        assert_eq!(moves, vec![0]);
        assert_eq!(p.code(&s, &0), MoveCode(3));
        p.play(&mut s, &0);
        assert!(p.is_terminal(&s));
        p.legal_moves(&s, &mut moves);
        assert!(moves.is_empty());
    }

    #[test]
    fn instance_validation() {
        assert_eq!(
            TsptwInstance::new(vec![], vec![], 0),
            Err(InstanceError::Empty)
        );
        assert_eq!(
            TsptwInstance::new(vec![vec![0, 1]], vec![(0, 1)], 0),
            Err(InstanceError::Shape { n: 1 })
        );
        assert_eq!(
            TsptwInstance::new(vec![vec![0]], vec![(2, 1)], 0),
            Err(InstanceError::Window(0))
        );
    }
}
