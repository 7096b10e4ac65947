//! The comparison context threaded through every routine.
//!
//! A [`Counter`] owns the user's "less than" predicate and tallies each call
//! to it. All algorithms in this crate take `&mut Counter<F>` instead of a
//! bare comparator, so the tally is exact by construction: nothing can compare
//! two elements without going through [`Counter::lt`].

use std::time::Duration;

use crate::harness::WorstCaseMode;

/// Insertion-sort cutoff used when measuring wall time.
pub const TIMING_CUTOFF: usize = 42;

/// Whether base cases are cut off with insertion sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Recursion goes down to single elements, so counts follow the theory.
    Comparisons,
    /// Subproblems of up to [`TIMING_CUTOFF`] elements use insertion sort.
    Time,
}

impl Mode {
    pub fn cutoff(self) -> usize {
        match self {
            Mode::Comparisons => 1,
            Mode::Time => TIMING_CUTOFF,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Comparisons => "comparisons",
            Mode::Time => "time",
        }
    }
}

/// Raw tallies collected during one or more calls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    /// Comparisons charged under the fixed-cost convention.
    pub comparisons: u64,
    /// Element swaps and rotation moves.
    pub moves: u64,
    /// Comparisons made by the worst-case oracle; never part of `comparisons`.
    pub uncounted: u64,
    /// Deepest QuickMergesort / Quicksort level reached.
    pub max_depth: u32,
    /// Partitioning steps whose pivot was a median of three.
    pub mo3_steps: u64,
    /// Partitioning steps whose pivot came from median-of-medians sampling.
    pub mom_steps: u64,
    /// Number of times Introsort handed a subarray to its stopper.
    pub stopper_calls: u64,
    /// Number of times the duplicate guard re-partitioned.
    pub guard_repartitions: u64,
}

/// Summary of one sorting run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SortStats {
    pub comparisons: u64,
    pub moves: u64,
    pub max_recursion_depth: u32,
    pub elapsed: Duration,
    /// Oracle comparisons made by the worst-case simulation.
    pub uncounted_oracle_comparisons: u64,
    pub tally: Tally,
}

impl SortStats {
    /// `(comparisons - n log2 n) / n`, the linear term of the comparison count.
    pub fn linear_coefficient(&self, n: usize) -> f64 {
        linear_coefficient(self.comparisons, n)
    }
}

/// `(comparisons - n log2 n) / n`.
pub fn linear_coefficient(comparisons: u64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    (comparisons as f64 - n * n.log2()) / n
}

/// Comparator wrapper that counts every comparison it performs.
pub struct Counter<F> {
    less: F,
    pub(crate) tally: Tally,
    pub(crate) cutoff: usize,
    pub(crate) sim: Option<WorstCaseMode>,
}

impl<F> Counter<F> {
    /// Counting-mode counter: no insertion-sort cutoffs.
    pub fn new(less: F) -> Self {
        Self::with_mode(less, Mode::Comparisons)
    }

    pub fn with_mode(less: F, mode: Mode) -> Self {
        Counter {
            less,
            tally: Tally::default(),
            cutoff: mode.cutoff(),
            sim: None,
        }
    }

    /// Enables the worst-case simulation hooks.
    pub fn with_worst_case(mut self, sim: WorstCaseMode) -> Self {
        self.sim = Some(sim);
        self
    }

    pub fn comparisons(&self) -> u64 {
        self.tally.comparisons
    }

    pub fn tally(&self) -> &Tally {
        &self.tally
    }

    pub fn worst_case(&self) -> Option<&WorstCaseMode> {
        self.sim.as_ref()
    }

    /// Clears the tallies, keeping comparator, mode and simulation state.
    pub fn reset(&mut self) {
        self.tally = Tally::default();
    }

    pub fn stats(&self, elapsed: Duration) -> SortStats {
        SortStats {
            comparisons: self.tally.comparisons,
            moves: self.tally.moves,
            max_recursion_depth: self.tally.max_depth,
            elapsed,
            uncounted_oracle_comparisons: self.tally.uncounted,
            tally: self.tally,
        }
    }

    pub(crate) fn simulating(&self) -> bool {
        self.sim.is_some()
    }

    #[inline]
    pub(crate) fn charge(&mut self, comparisons: u64) {
        self.tally.comparisons += comparisons;
    }

    #[inline]
    pub(crate) fn swap<T>(&mut self, v: &mut [T], i: usize, j: usize) {
        if i != j {
            self.tally.moves += 1;
            v.swap(i, j);
        }
    }

    pub(crate) fn note_depth(&mut self, depth: u32) {
        self.tally.max_depth = self.tally.max_depth.max(depth);
    }

    /// Counted `a < b`.
    #[inline]
    pub fn lt<T>(&mut self, a: &T, b: &T) -> bool
    where
        F: FnMut(&T, &T) -> bool,
    {
        self.tally.comparisons += 1;
        (self.less)(a, b)
    }

    /// Oracle comparison; tallied separately.
    #[inline]
    pub(crate) fn lt_uncounted<T>(&mut self, a: &T, b: &T) -> bool
    where
        F: FnMut(&T, &T) -> bool,
    {
        self.tally.uncounted += 1;
        (self.less)(a, b)
    }

    /// Places the element of rank `k` at index `k` without charging comparisons.
    pub(crate) fn oracle_select<T>(&mut self, v: &mut [T], k: usize)
    where
        F: FnMut(&T, &T) -> bool,
    {
        use std::cmp::Ordering;
        v.select_nth_unstable_by(k, |a, b| {
            if self.lt_uncounted(a, b) {
                Ordering::Less
            } else if self.lt_uncounted(b, a) {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
    }
}

impl<F> std::fmt::Debug for Counter<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Counter")
            .field("tally", &self.tally)
            .field("cutoff", &self.cutoff)
            .field("simulating", &self.sim.is_some())
            .finish()
    }
}
