//! Timing harness: medians over repeated runs, speedup ratios, and sweeps.
//!
//! Timed regions cover hashing, matching and the result merge. Corpus
//! generation, pattern selection and launch planning happen outside them.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::datagen::{generate, DnaSpec, SplitMix64};
use crate::{plan_launch, search_parallel, search_sequential, Error, MatchResult, Result};

/// Minimum timed repetitions for a sweep row.
pub const MIN_SWEEP_REPS: usize = 3;
/// Windows checked against direct comparison per timed result.
pub const ORACLE_SAMPLES: usize = 4096;
pub const CSV_HEADER: [&str; 4] = ["axis_value", "t_seq_ms", "t_par_ms", "speedup"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Engine {
    Sequential,
    Parallel { workers: usize, block_dim: u32 },
}

impl Engine {
    fn run(&self, text: &[u8], pattern: &[u8]) -> Result<MatchResult> {
        match *self {
            Engine::Sequential => search_sequential(text, pattern),
            Engine::Parallel { workers, block_dim } => {
                if pattern.len() > text.len() {
                    return search_sequential(text, pattern);
                }
                let cfg = plan_launch(text.len(), pattern.len(), block_dim)?;
                search_parallel(text, pattern, &cfg, workers)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Timed {
    pub median_ms: f64,
    pub samples_ms: Vec<f64>,
    pub result: MatchResult,
}

/// One untimed warmup, then `reps` timed runs. Fails if any run disagrees
/// with the warmup's result.
pub fn time_search(engine: Engine, text: &[u8], pattern: &[u8], reps: usize) -> Result<Timed> {
    if reps == 0 {
        return Err(Error::TooFewReps { got: 0, min: 1 });
    }
    // Launch planning is not part of the timed region.
    let cfg = match engine {
        Engine::Parallel { block_dim, .. }
            if pattern.len() <= text.len() && !pattern.is_empty() =>
        {
            Some(plan_launch(text.len(), pattern.len(), block_dim)?)
        }
        _ => None,
    };
    let run = || match (engine, &cfg) {
        (Engine::Parallel { workers, .. }, Some(cfg)) => {
            search_parallel(text, pattern, cfg, workers)
        }
        _ => engine.run(text, pattern),
    };

    let reference = run()?;
    let mut samples = Vec::with_capacity(reps);
    for rep in 0..reps {
        let start = Instant::now();
        let result = run()?;
        samples.push(start.elapsed().as_secs_f64() * 1e3);
        if result != reference {
            return Err(Error::Correctness(format!(
                "{engine:?} run {rep} found {} matches, warmup found {}",
                result.len(),
                reference.len()
            )));
        }
    }
    Ok(Timed {
        median_ms: median(&samples),
        samples_ms: samples,
        result: reference,
    })
}

fn median(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let mid = s.len() / 2;
    if s.len().is_multiple_of(2) {
        (s[mid - 1] + s[mid]) / 2.0
    } else {
        s[mid]
    }
}

/// Baseline time over parallel time.
pub fn speedup(t_base: f64, t_par: f64) -> Result<f64> {
    for t in [t_base, t_par] {
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
    }
    Ok(t_base / t_par)
}

/// Checks a result against direct byte comparison: every reported offset,
/// plus `samples` pseudo-random windows for missed matches.
pub fn check_against_oracle(
    text: &[u8],
    pattern: &[u8],
    result: &MatchResult,
    samples: usize,
    seed: u64,
) -> Result<()> {
    let m = pattern.len();
    for &x in result.offsets() {
        if text.get(x..x + m) != Some(pattern) {
            return Err(Error::Correctness(format!(
                "offset {x} reported but bytes differ"
            )));
        }
    }
    let windows = result.window_count() as u64;
    if windows == 0 {
        return Ok(());
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let x = rng.below(windows) as usize;
        let is_match = &text[x..x + m] == pattern;
        if is_match != result.offsets().binary_search(&x).is_ok() {
            return Err(Error::Correctness(format!(
                "window {x}: bytes match = {is_match}, but the result disagrees"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Worker-capacity of the pool; stands in for physical core count.
    Workers,
    PatternLength,
    FileSize,
    BlockDim,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Workers => "workers",
            Axis::PatternLength => "pattern_length",
            Axis::FileSize => "file_size",
            Axis::BlockDim => "block_dim",
        }
    }

    /// Axis values used by the reference experiments.
    pub fn default_values(self) -> Vec<u64> {
        match self {
            Axis::Workers => vec![1, 2, 4],
            Axis::PatternLength => vec![25, 50, 100, 200, 800],
            Axis::FileSize => [2u64, 10, 20, 40].iter().map(|mb| mb << 20).collect(),
            Axis::BlockDim => vec![32, 64, 128, 256, 512, 1024],
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "workers" => Ok(Axis::Workers),
            "pattern_length" => Ok(Axis::PatternLength),
            "file_size" => Ok(Axis::FileSize),
            "block_dim" => Ok(Axis::BlockDim),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PatternSource {
    /// Copied out of the corpus at a seeded offset, so at least one match exists.
    Sampled { seed: u64 },
    /// Drawn independently from the corpus alphabet.
    Generated { seed: u64 },
}

impl PatternSource {
    pub fn pick(&self, text: &[u8], alphabet: &[u8], m: usize) -> Result<Vec<u8>> {
        match *self {
            PatternSource::Sampled { seed } => {
                if m > text.len() {
                    return Err(Error::PatternLongerThanText { m, n: text.len() });
                }
                let x = SplitMix64::new(seed).below((text.len() - m + 1) as u64) as usize;
                Ok(text[x..x + m].to_vec())
            }
            PatternSource::Generated { seed } => generate(&DnaSpec {
                seed,
                length: m,
                alphabet: alphabet.to_vec(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub axis: Axis,
    pub values: Vec<u64>,
    pub corpus: DnaSpec,
    pub pattern_length: usize,
    pub pattern_source: PatternSource,
    pub reps: usize,
    /// Worker count for rows where workers is not the swept axis.
    pub workers: usize,
    /// Threads per block for rows where block_dim is not the swept axis.
    pub block_dim: u32,
}

impl SweepConfig {
    pub fn new(axis: Axis, values: Vec<u64>, corpus: DnaSpec) -> Self {
        SweepConfig {
            axis,
            values,
            corpus,
            pattern_length: 7,
            pattern_source: PatternSource::Sampled { seed: 1 },
            reps: MIN_SWEEP_REPS,
            workers: worker_capacity(),
            block_dim: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub axis_value: u64,
    pub t_seq_ms: f64,
    pub t_par_ms: f64,
    pub speedup: f64,
    pub matches: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    /// Threads the host reports it can run concurrently.
    pub worker_capacity: usize,
    pub corpus: DnaSpec,
    pub pattern_length: usize,
    pub pattern_source: PatternSource,
    pub reps: usize,
    pub warmup_runs: usize,
    pub workers: usize,
    pub block_dim: u32,
    pub timed_region: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub axis: Axis,
    pub rows: Vec<BenchRow>,
    pub environment: Environment,
}

impl BenchReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| Error::Report(e.to_string());
        w.write_record(CSV_HEADER).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.axis_value.to_string(),
                format!("{:.6}", r.t_seq_ms),
                format!("{:.6}", r.t_par_ms),
                format!("{:.6}", r.speedup),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| Error::Report(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Report(e.to_string()))
    }
}

pub fn worker_capacity() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs one row per axis value with everything else held at `cfg`. Rows run
/// serially; each row times the sequential engine, then the parallel one, and
/// both results must agree with each other and with a sampled oracle pass.
pub fn sweep(cfg: &SweepConfig) -> Result<BenchReport> {
    if cfg.values.is_empty() {
        return Err(Error::EmptySweep);
    }
    if cfg.reps < MIN_SWEEP_REPS {
        return Err(Error::TooFewReps {
            got: cfg.reps,
            min: MIN_SWEEP_REPS,
        });
    }
    cfg.corpus.validate()?;
    let invalid = |value: u64, reason: String| Error::InvalidAxisValue { value, reason };

    let base_text = if cfg.axis == Axis::FileSize {
        Vec::new()
    } else {
        generate(&cfg.corpus)?
    };
    let mut rows = Vec::with_capacity(cfg.values.len());
    for &value in &cfg.values {
        let (mut workers, mut block_dim, mut m) = (cfg.workers, cfg.block_dim, cfg.pattern_length);
        let sized;
        let text: &[u8] = match cfg.axis {
            Axis::FileSize => {
                sized = generate(&DnaSpec {
                    length: value as usize,
                    ..cfg.corpus.clone()
                })?;
                &sized
            }
            _ => &base_text,
        };
        match cfg.axis {
            Axis::Workers => {
                if value == 0 {
                    return Err(invalid(value, "worker count must be at least 1".into()));
                }
                workers = value as usize;
            }
            Axis::BlockDim => {
                if value == 0 || value > crate::MAX_BLOCK_DIM as u64 {
                    return Err(invalid(
                        value,
                        format!("block_dim must be in [1, {}]", crate::MAX_BLOCK_DIM),
                    ));
                }
                block_dim = value as u32;
            }
            Axis::PatternLength => m = value as usize,
            Axis::FileSize => {}
        }
        if m == 0 {
            return Err(invalid(value, "pattern length must be at least 1".into()));
        }
        if m > text.len() {
            return Err(invalid(
                value,
                format!("pattern length {m} exceeds corpus length {}", text.len()),
            ));
        }
        let pattern = cfg.pattern_source.pick(text, &cfg.corpus.alphabet, m)?;

        let seq = time_search(Engine::Sequential, text, &pattern, cfg.reps)?;
        let par = time_search(
            Engine::Parallel { workers, block_dim },
            text,
            &pattern,
            cfg.reps,
        )?;
        if seq.result != par.result {
            return Err(Error::Correctness(format!(
                "axis value {value}: sequential found {} matches, parallel found {}",
                seq.result.len(),
                par.result.len()
            )));
        }
        check_against_oracle(text, &pattern, &seq.result, ORACLE_SAMPLES, value)?;

        rows.push(BenchRow {
            axis_value: value,
            t_seq_ms: seq.median_ms,
            t_par_ms: par.median_ms,
            speedup: speedup(seq.median_ms, par.median_ms)?,
            matches: seq.result.len(),
        });
    }

    Ok(BenchReport {
        axis: cfg.axis,
        rows,
        environment: Environment {
            worker_capacity: worker_capacity(),
            corpus: cfg.corpus.clone(),
            pattern_length: cfg.pattern_length,
            pattern_source: cfg.pattern_source,
            reps: cfg.reps,
            warmup_runs: 1,
            workers: cfg.workers,
            block_dim: cfg.block_dim,
            timed_region: "hashing, matching and merge; excludes corpus generation and file I/O",
        },
    })
}
