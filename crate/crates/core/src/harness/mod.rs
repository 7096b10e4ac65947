//! Instrumentation: input generators, the worst-case simulation and the
//! benchmark driver.
//!
//! # Worst-case simulation
//!
//! With a [`WorstCaseMode`] attached to the [`Counter`], every pivot that a
//! median-of-medians step would return is replaced by the worst element the
//! step could legally have returned. An uncounted selection oracle finds
//! it. The sample is still selected (and charged) as usual; only its
//! outcome is overridden. The oracle's comparisons go to
//! [`Tally::uncounted`](crate::Tally::uncounted).
//!
//! What "worst" means depends on the driver:
//!
//! * bMQMS and MQMS: the exact median. Mergesort then sorts half of the
//!   array with the other half as buffer and the recursion is as deep as
//!   it can be.
//! * uMQMS: the most extreme rank the sample guarantee allows. Mergesort
//!   then runs with the smallest buffer.
//! * selection: whichever end of the feasible interval leaves the target
//!   in the larger part.
//!
//! Mergesort's worst case is close to its average case, so each top-level
//! Mergesort call is preceded by an uncounted shuffle of its input. In
//! counting mode this is a full Fisher–Yates shuffle. In timing mode it is
//! `⌈√s⌉` random transpositions.

mod bench;
mod input;

pub use bench::{run_benchmark, write_csv, BenchConfig, BenchRow};
pub use input::{gen_input, CountingElement, Distribution, InputSpec};

use std::ops::RangeInclusive;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::counter::{Counter, Mode, SortStats};
use crate::error::Error;
use crate::sorter::{self, Algorithm};

/// State of the worst-case simulation.
#[derive(Clone, Debug)]
pub struct WorstCaseMode {
    rng: Xoshiro256PlusPlus,
    sparse_shuffle: bool,
}

impl WorstCaseMode {
    pub fn new(seed: u64, mode: Mode) -> Self {
        WorstCaseMode {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed ^ 0x5e_ed0f_ba5e),
            sparse_shuffle: mode == Mode::Time,
        }
    }
}

/// Which feasible pivot the oracle picks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSabotage {
    /// The feasible rank closest to the median.
    ExactMedian,
    /// The smallest feasible rank.
    LeftExtreme,
    /// The end of the interval that keeps rank `k` in the larger part.
    AwayFrom(usize),
}

/// Places the worst feasible pivot of `v` at its sorted position and
/// returns that position. `feasible` holds 0-based ranks.
///
/// The whole of `v` ends up partitioned around the pivot; no comparison is
/// charged.
pub fn worst_pivot<T, F>(
    v: &mut [T],
    feasible: RangeInclusive<usize>,
    kind: PivotSabotage,
    ctx: &mut Counter<F>,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    let (lo, hi) = (*feasible.start(), *feasible.end());
    assert!(lo <= hi && hi < n, "infeasible rank interval {lo}..={hi} for {n} elements");
    let target = match kind {
        PivotSabotage::ExactMedian => ((n - 1) / 2).clamp(lo, hi),
        PivotSabotage::LeftExtreme => lo,
        PivotSabotage::AwayFrom(k) => {
            let left_in = |p: usize| match k.cmp(&p) {
                std::cmp::Ordering::Less => p,
                std::cmp::Ordering::Greater => n - p - 1,
                std::cmp::Ordering::Equal => 0,
            };
            if left_in(hi) > left_in(lo) {
                hi
            } else {
                lo
            }
        }
    };
    ctx.oracle_select(v, target);
    target
}

/// Uncounted shuffle before a top-level Mergesort call; no-op outside the
/// simulation.
pub(crate) fn shuffle_before_merge<T, F>(v: &mut [T], ctx: &mut Counter<F>) {
    let Some(sim) = ctx.sim.as_mut() else { return };
    if v.len() < 2 {
        return;
    }
    if sim.sparse_shuffle {
        let s = v.len();
        let k = (s as f64).sqrt().ceil() as usize;
        for _ in 0..k {
            let i = sim.rng.random_range(0..s);
            let j = sim.rng.random_range(0..s);
            v.swap(i, j);
        }
    } else {
        v.shuffle(&mut sim.rng);
    }
}

/// Runs `algorithm` on a random permutation of `n` under the worst-case
/// simulation.
///
/// Only the median-of-medians QuickMergesort variants can be simulated.
pub fn simulate_worst_case(algorithm: Algorithm, n: usize, seed: u64, mode: Mode) -> Result<SortStats, Error> {
    if !matches!(algorithm, Algorithm::Bmqms | Algorithm::Mqms | Algorithm::Umqms(_)) {
        return Err(Error::NotSimulated(algorithm.name()));
    }
    let mut v = gen_input(&InputSpec::new(Distribution::RandomPerm, n, seed));
    let mut ctx = Counter::with_mode(|a: &u32, b: &u32| a < b, mode).with_worst_case(WorstCaseMode::new(seed, mode));
    let start = Instant::now();
    sorter::sort(&mut v, algorithm, &mut ctx);
    let elapsed = start.elapsed();
    debug_assert!(v.windows(2).all(|w| w[0] <= w[1]));
    Ok(ctx.stats(elapsed))
}

/// Worst-case-simulated comparisons of [`mom_select`](crate::mom_select)
/// for rank `k` on a random permutation of `n`.
pub fn simulate_selection(n: usize, k: usize, seed: u64) -> SortStats {
    let mut v = gen_input(&InputSpec::new(Distribution::RandomPerm, n, seed));
    let mut ctx = Counter::new(|a: &u32, b: &u32| a < b).with_worst_case(WorstCaseMode::new(seed, Mode::Comparisons));
    let start = Instant::now();
    let got = *crate::selection::mom_select(&mut v, k, &mut ctx);
    debug_assert_eq!(got as usize, k);
    ctx.stats(start.elapsed())
}
