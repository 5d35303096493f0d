//! Monte-Carlo batches, parameter sweeps and output files.
//!
//! Run `k` of a batch is seeded with `split_seed(master, k)`, so a batch is a
//! pure function of (config, master seed, run count) no matter how many worker
//! threads execute it.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::metrics::{aggregate, compute_run_metrics, RunMetrics, RunRow, Summary};
use crate::sim::{simulate, Event};

/// Derives the seed of run `k` from a master seed (SplitMix64 finalizer).
pub fn split_seed(master: u64, k: u64) -> u64 {
    let mut z = master ^ (k.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub row: RunRow,
    pub metrics: RunMetrics,
    pub events: Vec<Event>,
}

/// Simulates one run and scores it.
pub fn run_single(cfg: &ScenarioConfig, run_id: usize, seed: u64) -> Result<RunResult> {
    let out = simulate(cfg, seed)?;
    let metrics = compute_run_metrics(&out.events);
    Ok(RunResult {
        row: RunRow::new(run_id, seed, &metrics),
        metrics,
        events: out.events,
    })
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    pub rows: Vec<RunRow>,
    pub metrics: Vec<RunMetrics>,
    pub summary: Summary,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid("jobs", e.to_string()))
}

/// Runs `runs` independent missions on `jobs` worker threads. Results are in
/// run order.
pub fn run_batch(cfg: &ScenarioConfig, runs: usize, jobs: usize) -> Result<BatchResult> {
    if runs == 0 {
        return Err(Error::invalid("runs", "must be >= 1"));
    }
    cfg.validate()?;
    let master = cfg.seed;
    let results: Vec<Result<(RunRow, RunMetrics)>> = pool(jobs)?.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|k| {
                let seed = split_seed(master, k as u64);
                run_single(cfg, k, seed).map(|r| (r.row, r.metrics))
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(runs);
    let mut metrics = Vec::with_capacity(runs);
    for r in results {
        let (row, m) = r?;
        rows.push(row);
        metrics.push(m);
    }
    let summary = aggregate(&metrics)?;
    Ok(BatchResult {
        rows,
        metrics,
        summary,
    })
}

/// Per-run rows as CSV bytes.
pub fn rows_to_csv(rows: &[RunRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|source| Error::Csv {
            path: PathBuf::from("<memory>"),
            source,
        })?;
    }
    w.into_inner()
        .map_err(|e| Error::io("<memory>", e.into_error()))
}

pub fn read_rows(path: impl AsRef<Path>) -> Result<Vec<RunRow>> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    r.deserialize()
        .map(|row| {
            row.map_err(|source| Error::Csv {
                path: path.to_path_buf(),
                source,
            })
        })
        .collect()
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never see a half-written file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::invalid("out", format!("`{}` has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

/// Writes `runs.csv` and `summary.json` into `dir`.
pub fn write_batch(dir: impl AsRef<Path>, batch: &BatchResult) -> Result<()> {
    let dir = dir.as_ref();
    write_atomic(dir.join("runs.csv"), &rows_to_csv(&batch.rows)?)?;
    write_json(dir.join("summary.json"), &batch.summary)
}

/// Which capability a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    QuenchRate,
    Speed,
}

/// Failure rate over a grid of fire-to-agent ratios for several values of
/// one capability, every agent in the (homogeneous) team sharing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub ratios: Vec<usize>,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis: SweepAxis,
    pub speed: f64,
    pub quench_rate: f64,
    pub agents: usize,
    pub fires: usize,
    pub ratio: usize,
    pub runs: usize,
    pub success_rate: f64,
    pub failure_rate: f64,
    pub completion_time_mean_s: f64,
    pub mean_fer: f64,
}

/// Named sweeps: `quench` varies the quench rate at speed 20, `speed` varies
/// the speed at quench rate 20. Both use five homogeneous agents under full
/// observability.
pub fn sweep_preset(name: &str, runs: usize) -> Result<SweepSpec> {
    let mut base = crate::config::preset("homo-fo-20")?;
    base.name = format!("sweep-{name}");
    let (axis, values) = match name {
        "quench" => (SweepAxis::QuenchRate, vec![16.0, 20.0, 24.0, 28.0]),
        "speed" => (SweepAxis::Speed, vec![16.0, 20.0, 24.0, 28.0]),
        _ => return Err(Error::UnknownPreset(format!("sweep-{name}"))),
    };
    Ok(SweepSpec {
        base,
        axis,
        values,
        ratios: (1..=8).collect(),
        runs,
    })
}

/// Runs every (value, ratio) cell as a batch.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<Vec<SweepRow>> {
    if spec.values.is_empty() || spec.ratios.is_empty() {
        return Err(Error::invalid("sweep", "needs at least one value and one ratio"));
    }
    let mut rows = Vec::new();
    for &v in &spec.values {
        for &ratio in &spec.ratios {
            let cfg = sweep_cell(spec, v, ratio);
            let b = run_batch(&cfg, spec.runs, jobs)?;
            let s = &b.summary;
            rows.push(SweepRow {
                axis: spec.axis,
                speed: cfg.homo.speed,
                quench_rate: cfg.homo.quench_rate,
                agents: cfg.agent_count,
                fires: cfg.fire_count,
                ratio,
                runs: s.runs,
                success_rate: s.success_rate,
                failure_rate: 100.0 - s.success_rate,
                completion_time_mean_s: s.completion_time_s.all.mean,
                mean_fer: s.mean_fer.all.mean,
            });
        }
    }
    Ok(rows)
}

/// Config of one sweep cell.
pub fn sweep_cell(spec: &SweepSpec, value: f64, ratio: usize) -> ScenarioConfig {
    let mut cfg = spec.base.clone();
    cfg.team = crate::config::TeamPreset::Homo;
    match spec.axis {
        SweepAxis::QuenchRate => cfg.homo.quench_rate = value,
        SweepAxis::Speed => cfg.homo.speed = value,
    }
    cfg.fire_centers = None;
    cfg.fire_radii = None;
    cfg.agent_starts = None;
    cfg.fire_count = ratio * cfg.agent_count;
    cfg.name = format!("{}-{value}-{ratio}", spec.base.name);
    cfg
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|source| Error::Csv {
            path: PathBuf::from("<memory>"),
            source,
        })?;
    }
    w.into_inner()
        .map_err(|e| Error::io("<memory>", e.into_error()))
}

/// Smallest ratio at which the failure rate reaches `level` percent, linearly
/// interpolated between grid points. `None` if it never does.
pub fn failure_knee(rows: &[SweepRow], level: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.ratio as f64, r.failure_rate)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut prev: Option<(f64, f64)> = None;
    for (x, y) in pts {
        if y >= level {
            return Some(match prev {
                Some((x0, y0)) if y > y0 => x0 + (level - y0) / (y - y0) * (x - x0),
                _ => x,
            });
        }
        prev = Some((x, y));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_seeds_differ() {
        let mut s: Vec<u64> = (0..1000).map(|k| split_seed(7, k)).collect();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 1000);
        assert_ne!(split_seed(7, 0), split_seed(8, 0));
    }

    #[test]
    fn csv_header_is_frozen() {
        let bytes = rows_to_csv(&[RunRow {
            run_id: 0,
            seed: 1,
            success: true,
            completion_time_s: 1.5,
            total_quench_time_s: 2.0,
            mean_fer: 0.25,
            replans: 3,
            consensus_rounds_mean: 4.0,
            deadlocks: 0,
        }])
        .unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "run_id,seed,success,completion_time_s,total_quench_time_s,mean_fer,replans,consensus_rounds_mean,deadlocks"
        );
    }

    #[test]
    fn knee_interpolates() {
        let row = |ratio, failure_rate| SweepRow {
            axis: SweepAxis::Speed,
            speed: 20.0,
            quench_rate: 20.0,
            agents: 5,
            fires: 5 * ratio,
            ratio,
            runs: 10,
            success_rate: 100.0 - failure_rate,
            failure_rate,
            completion_time_mean_s: 0.0,
            mean_fer: 0.0,
        };
        let rows = vec![row(2, 0.0), row(4, 20.0), row(6, 60.0)];
        assert_eq!(failure_knee(&rows, 40.0), Some(5.0));
        assert_eq!(failure_knee(&rows, 90.0), None);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x/out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
