use std::collections::BTreeMap;
use std::path::Path;

use nrpa_core::AnytimeRecord;

use crate::experiment::SeedRun;
use crate::BenchError;

pub const RAW_HEADER: [&str; 4] = ["seed", "elapsed", "best_score", "playouts"];
pub const CURVE_HEADER: [&str; 3] = ["checkpoint", "mean_best_score", "seeds"];

/// One row of `raw.csv`, with the score read back as a real number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawRecord {
    pub seed: u64,
    pub elapsed: f64,
    pub best_score: f64,
    pub playouts: u64,
}

/// One row of `curve.csv`. `mean` is `None` when no seed had a record yet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub checkpoint: f64,
    pub mean: Option<f64>,
    pub seeds: usize,
}

/// Checkpoints 1, 2, 4, ... seconds not exceeding `budget`, followed by
/// `budget` itself when it is not a power of two.
pub fn checkpoints(budget: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut t = 1.0;
    while t <= budget {
        out.push(t);
        t *= 2.0;
    }
    if out.last() != Some(&budget) && budget > 0.0 {
        out.push(budget);
    }
    out
}

/// Mean over seeds of each seed's best score at its last record with
/// `elapsed <= t`, for every checkpoint `t`. Seeds without such a record are
/// left out of that checkpoint's mean.
pub fn curve(records: &[RawRecord], checkpoints: &[f64]) -> Vec<CurvePoint> {
    let mut by_seed: BTreeMap<u64, Vec<&RawRecord>> = BTreeMap::new();
    for r in records {
        by_seed.entry(r.seed).or_default().push(r);
    }
    checkpoints
        .iter()
        .map(|&t| {
            let bests: Vec<f64> = by_seed
                .values()
                .filter_map(|rs| rs.iter().rfind(|r| r.elapsed <= t).map(|r| r.best_score))
                .collect();
            let mean = (!bests.is_empty()).then(|| bests.iter().sum::<f64>() / bests.len() as f64);
            CurvePoint {
                checkpoint: t,
                mean,
                seeds: bests.len(),
            }
        })
        .collect()
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> BenchError + '_ {
    move |source| BenchError::Csv {
        path: path.to_owned(),
        source,
    }
}

fn format_err(path: &Path, message: impl Into<String>) -> BenchError {
    BenchError::Format {
        path: path.to_owned(),
        message: message.into(),
    }
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>, BenchError> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(csv_err(path))
}

/// Writes every seed's improvement records, seeds in the given order.
/// Scores are printed exactly with `decimals` decimal places.
pub fn write_raw(path: &Path, runs: &[SeedRun], decimals: u32) -> Result<(), BenchError> {
    let mut w = writer(path)?;
    w.write_record(RAW_HEADER).map_err(csv_err(path))?;
    for run in runs {
        for AnytimeRecord {
            elapsed,
            score,
            playouts,
        } in &run.records
        {
            w.write_record([
                run.seed.to_string(),
                format!("{elapsed:.6}"),
                score.display(decimals).to_string(),
                playouts.to_string(),
            ])
            .map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_curve(path: &Path, points: &[CurvePoint]) -> Result<(), BenchError> {
    let mut w = writer(path)?;
    w.write_record(CURVE_HEADER).map_err(csv_err(path))?;
    for p in points {
        w.write_record([
            p.checkpoint.to_string(),
            p.mean.map(|m| m.to_string()).unwrap_or_default(),
            p.seeds.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>, BenchError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let found = r.headers().map_err(csv_err(path))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(format_err(
            path,
            format!("expected header {}", header.join(",")),
        ));
    }
    r.records().collect::<Result<_, _>>().map_err(csv_err(path))
}

fn field<T: std::str::FromStr>(
    path: &Path,
    row: &csv::StringRecord,
    i: usize,
) -> Result<T, BenchError> {
    row[i]
        .parse()
        .map_err(|_| format_err(path, format!("bad value {:?} in row {row:?}", &row[i])))
}

pub fn read_raw(path: &Path) -> Result<Vec<RawRecord>, BenchError> {
    read_rows(path, &RAW_HEADER)?
        .iter()
        .map(|row| {
            Ok(RawRecord {
                seed: field(path, row, 0)?,
                elapsed: field(path, row, 1)?,
                best_score: field(path, row, 2)?,
                playouts: field(path, row, 3)?,
            })
        })
        .collect()
}

pub fn read_curve(path: &Path) -> Result<Vec<CurvePoint>, BenchError> {
    read_rows(path, &CURVE_HEADER)?
        .iter()
        .map(|row| {
            Ok(CurvePoint {
                checkpoint: field(path, row, 0)?,
                mean: if row[1].is_empty() {
                    None
                } else {
                    Some(field(path, row, 1)?)
                },
                seeds: field(path, row, 2)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(seed: u64, elapsed: f64, best_score: f64) -> RawRecord {
        RawRecord {
            seed,
            elapsed,
            best_score,
            playouts: 1,
        }
    }

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(1.0), vec![1.0]);
        assert_eq!(checkpoints(8.0), vec![1.0, 2.0, 4.0, 8.0]);
        assert_eq!(
            checkpoints(60.0),
            vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 60.0]
        );
        assert_eq!(checkpoints(0.5), vec![0.5]);
        assert!(checkpoints(0.0).is_empty());
    }

    #[test]
    fn curve_carries_scores_forward() {
        let records = [
            rec(1, 0.1, 10.0),
            rec(1, 1.5, 20.0),
            rec(2, 0.5, 4.0),
            rec(2, 3.0, 30.0),
            rec(3, 1.8, 7.0),
        ];
        let c = curve(&records, &[1.0, 2.0, 4.0]);
        assert_eq!(
            c[0],
            CurvePoint {
                checkpoint: 1.0,
                mean: Some(7.0),
                seeds: 2
            }
        );
        assert_eq!(
            c[1],
            CurvePoint {
                checkpoint: 2.0,
                mean: Some(31.0 / 3.0),
                seeds: 3
            }
        );
        assert_eq!(
            c[2],
            CurvePoint {
                checkpoint: 4.0,
                mean: Some(19.0),
                seeds: 3
            }
        );
        assert_eq!(curve(&records, &[0.05])[0].mean, None);
    }

    #[test]
    fn curve_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        let points = vec![
            CurvePoint {
                checkpoint: 1.0,
                mean: None,
                seeds: 0,
            },
            CurvePoint {
                checkpoint: 2.0,
                mean: Some(-1234.5625),
                seeds: 3,
            },
        ];
        write_curve(&path, &points).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "checkpoint,mean_best_score,seeds\n1,,0\n2,-1234.5625,3\n"
        );
        assert_eq!(read_curve(&path).unwrap(), points);
    }

    #[test]
    fn wrong_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_raw(&path), Err(BenchError::Format { .. })));
    }
}
