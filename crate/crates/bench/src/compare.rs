use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::records::{read_curve, read_raw, RawRecord};
use crate::BenchError;

/// Time for both runs to first reach a mean score level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSpeedup {
    pub level: f64,
    pub time_a: f64,
    pub time_b: f64,
    /// `time_b / time_a`: how many times longer run B needed.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// `(checkpoint, mean A, mean B)` for checkpoints present in both curves.
    pub rows: Vec<(f64, Option<f64>, Option<f64>)>,
    pub speedups: Vec<LevelSpeedup>,
}

/// Earliest elapsed time at which the mean best score over all seeds is at
/// least `level`. The mean is only defined once every seed has a record.
fn first_reach(records: &[RawRecord], level: f64) -> Option<f64> {
    let seeds = records
        .iter()
        .map(|r| r.seed)
        .collect::<std::collections::BTreeSet<_>>();
    let mut events: Vec<&RawRecord> = records.iter().collect();
    events.sort_by(|a, b| a.elapsed.total_cmp(&b.elapsed));
    let mut best: BTreeMap<u64, f64> = BTreeMap::new();
    let mut i = 0;
    while i < events.len() {
        let t = events[i].elapsed;
        while i < events.len() && events[i].elapsed == t {
            best.insert(events[i].seed, events[i].best_score);
            i += 1;
        }
        if best.len() == seeds.len() {
            let mean = best.values().sum::<f64>() / best.len() as f64;
            if mean >= level {
                return Some(t);
            }
        }
    }
    None
}

fn ratio(a: f64, b: f64) -> f64 {
    if a == b {
        1.0
    } else {
        b / a
    }
}

/// Compares the runs stored in two experiment output directories.
pub fn compare(dir_a: &Path, dir_b: &Path) -> Result<Comparison, BenchError> {
    let curve_a = read_curve(&dir_a.join("curve.csv"))?;
    let curve_b = read_curve(&dir_b.join("curve.csv"))?;
    let rows: Vec<_> = curve_a
        .iter()
        .filter_map(|a| {
            curve_b
                .iter()
                .find(|b| b.checkpoint == a.checkpoint)
                .map(|b| (a.checkpoint, a.mean, b.mean))
        })
        .collect();
    if rows.is_empty() {
        return Err(BenchError::DisjointCheckpoints);
    }

    let raw_a = read_raw(&dir_a.join("raw.csv"))?;
    let raw_b = read_raw(&dir_b.join("raw.csv"))?;
    let mut levels: Vec<f64> = curve_a
        .iter()
        .chain(curve_b.iter())
        .filter_map(|p| p.mean)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let speedups = levels
        .into_iter()
        .filter_map(|level| {
            let time_a = first_reach(&raw_a, level)?;
            let time_b = first_reach(&raw_b, level)?;
            Some(LevelSpeedup {
                level,
                time_a,
                time_b,
                ratio: ratio(time_a, time_b),
            })
        })
        .collect();
    Ok(Comparison { rows, speedups })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.3}"))
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>12}  {:>18}  {:>18}",
            "checkpoint", "mean A", "mean B"
        )?;
        for (t, a, b) in &self.rows {
            writeln!(f, "{t:>12}  {:>18}  {:>18}", opt(*a), opt(*b))?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "{:>18}  {:>12}  {:>12}  {:>10}",
            "level", "time A (s)", "time B (s)", "B/A"
        )?;
        for s in &self.speedups {
            writeln!(
                f,
                "{:>18.3}  {:>12.6}  {:>12.6}  {:>10.3}",
                s.level, s.time_a, s.time_b, s.ratio
            )?;
        }
        Ok(())
    }
}
