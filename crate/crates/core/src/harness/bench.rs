//! Benchmark cells and CSV output.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{gen_input, Distribution, InputSpec, WorstCaseMode};
use crate::counter::{linear_coefficient, Counter, Mode};
use crate::error::Error;
use crate::sorter::{self, Algorithm};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub distributions: Vec<Distribution>,
    pub sizes: Vec<usize>,
    /// Seeds `0..seeds` are run for every cell.
    pub seeds: u64,
    pub mode: Mode,
    pub worst_case: bool,
    /// Each measurement is repeated until at least this many bytes of
    /// input have been sorted.
    pub min_bytes: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algorithms: vec![Algorithm::Umqms(Default::default())],
            distributions: vec![Distribution::RandomPerm],
            sizes: vec![1 << 16],
            seeds: 10,
            mode: Mode::Comparisons,
            worst_case: false,
            min_bytes: 0,
        }
    }
}

/// One CSV row. Per-seed rows have `seed` set; the aggregate row of a cell
/// has `seed = "all"` and the standard deviations filled in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub distribution: String,
    pub n: usize,
    pub seed: String,
    pub mode: &'static str,
    pub comparisons: u64,
    pub moves: u64,
    pub time_ns: u64,
    pub normalized_coefficient: f64,
    pub coefficient_stddev: Option<f64>,
    pub time_stddev_ns: Option<f64>,
}

struct Sample {
    comparisons: u64,
    moves: u64,
    time_ns: u64,
}

fn measure(algorithm: Algorithm, spec: &InputSpec, cfg: &BenchConfig) -> Sample {
    let input = gen_input(spec);
    let bytes = (spec.n * std::mem::size_of::<u32>()).max(1) as u64;
    let reps = cfg.min_bytes.div_ceil(bytes).max(1);
    let mut total_ns = 0u128;
    let mut first = None;
    for _ in 0..reps {
        let mut v = input.clone();
        let mut ctx = Counter::with_mode(|a: &u32, b: &u32| a < b, cfg.mode);
        if cfg.worst_case {
            ctx = ctx.with_worst_case(WorstCaseMode::new(spec.seed, cfg.mode));
        }
        let start = Instant::now();
        sorter::sort(&mut v, algorithm, &mut ctx);
        total_ns += start.elapsed().as_nanos();
        first.get_or_insert((ctx.comparisons(), ctx.tally().moves));
    }
    let (comparisons, moves) = first.unwrap_or_default();
    Sample { comparisons, moves, time_ns: (total_ns / reps as u128) as u64 }
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let k = xs.clone().count().max(1) as f64;
    let mean = xs.clone().sum::<f64>() / k;
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / k;
    (mean, var.sqrt())
}

/// Runs every `(algorithm, distribution, n)` cell for all seeds.
///
/// Counting-mode cells run their seeds on the rayon pool; timing-mode
/// cells run serially. The aggregate row reports mean counts, or maximum
/// counts under the worst-case simulation.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRow>, Error> {
    if cfg.worst_case {
        if let Some(a) = cfg
            .algorithms
            .iter()
            .find(|a| !matches!(a, Algorithm::Bmqms | Algorithm::Mqms | Algorithm::Umqms(_)))
        {
            return Err(Error::NotSimulated(a.name()));
        }
    }
    let mut rows = Vec::new();
    for &algorithm in &cfg.algorithms {
        for &dist in &cfg.distributions {
            for &n in &cfg.sizes {
                let run = |seed: u64| measure(algorithm, &InputSpec::new(dist, n, seed), cfg);
                let samples: Vec<Sample> = match cfg.mode {
                    Mode::Comparisons => (0..cfg.seeds).into_par_iter().map(run).collect(),
                    Mode::Time => (0..cfg.seeds).map(run).collect(),
                };
                let row = |seed: String, comparisons: u64, moves: u64, time_ns: u64| BenchRow {
                    algorithm: algorithm.to_string(),
                    distribution: dist.to_string(),
                    n,
                    seed,
                    mode: cfg.mode.as_str(),
                    comparisons,
                    moves,
                    time_ns,
                    normalized_coefficient: linear_coefficient(comparisons, n),
                    coefficient_stddev: None,
                    time_stddev_ns: None,
                };
                for (seed, s) in samples.iter().enumerate() {
                    rows.push(row(seed.to_string(), s.comparisons, s.moves, s.time_ns));
                }
                if samples.is_empty() {
                    continue;
                }
                let coeffs = samples.iter().map(|s| linear_coefficient(s.comparisons, n));
                let (coef_mean, coef_sd) = mean_std(coeffs);
                let (time_mean, time_sd) = mean_std(samples.iter().map(|s| s.time_ns as f64));
                let (cmp_mean, _) = mean_std(samples.iter().map(|s| s.comparisons as f64));
                let (mov_mean, _) = mean_std(samples.iter().map(|s| s.moves as f64));
                let comparisons = if cfg.worst_case {
                    samples.iter().map(|s| s.comparisons).max().unwrap_or(0)
                } else {
                    cmp_mean.round() as u64
                };
                let mut agg = row("all".into(), comparisons, mov_mean.round() as u64, time_mean.round() as u64);
                if !cfg.worst_case {
                    agg.normalized_coefficient = coef_mean;
                }
                agg.coefficient_stddev = Some(coef_sd);
                agg.time_stddev_ns = Some(time_sd);
                rows.push(agg);
            }
        }
    }
    Ok(rows)
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
