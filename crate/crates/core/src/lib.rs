//! In-place QuickMergesort with median-of-medians pivot selection.
//!
//! QuickMergesort partitions, sorts the larger part with Mergesort using
//! the smaller part as swap buffer, and recurses on the smaller part.
//! Choosing the pivot with the median-of-medians algorithm guarantees a
//! minimum size for the smaller part and hence an `n log n + O(n)` worst
//! case. This crate has all the variants:
//!
//! * [`sort_bmqms`]: median of `n/3` medians of three, at most
//!   `n log n + 13.8n` comparisons;
//! * [`sort_mqms`]: pseudomedians of fifteen and Reinhardt's merge, at most
//!   `n log n + 4.57n`;
//! * [`sort_umqms`]: the same on a sample of `n/θ` elements with imbalanced
//!   merging, at most `n log n + 1.59n` for θ = 11/5;
//! * [`sort_hqms`]: median of three with a sampled pivot after bad splits;
//! * [`introsort_with_mqms`]: Introsort falling back to uMQMS.
//!
//! Every routine takes a [`Counter`], which owns the comparator and tallies
//! comparisons and moves.
//!
//! ```
//! use mqms_core::{sort_umqms, Counter, UndersamplingConfig};
//!
//! let mut v = vec![5, 3, 9, 1, 7];
//! let mut ctx = Counter::new(|a: &i32, b: &i32| a < b);
//! sort_umqms(&mut v, UndersamplingConfig::DEFAULT, &mut ctx);
//! assert_eq!(v, [1, 3, 5, 7, 9]);
//! assert!(ctx.comparisons() > 0);
//! ```

pub mod analysis;
mod counter;
mod error;
pub mod harness;
pub mod merge;
pub mod primitives;
pub mod selection;
mod sorter;

pub use counter::{linear_coefficient, Counter, Mode, SortStats, Tally, TIMING_CUTOFF};
pub use error::Error;
pub use harness::{gen_input, simulate_worst_case, CountingElement, Distribution, InputSpec, WorstCaseMode};
pub use merge::{
    imbalanced_mergesort, mergesort_with_buffer, reinhardt_merge, simple_buffered_merge, BufferSide, MergeLayout,
};
pub use primitives::{insertion_sort, median3, median5, pseudomedian15, pseudomedian9, FixedMedianCost, FIXED_MEDIAN_COST};
pub use selection::{
    adaptive_sample_rank, choose_pivot_sampled, mom_select, partition, partition_with_duplicate_guard, EqualSide,
    GuardedPartition, PartitionResult, SampledPivot,
};
pub use sorter::{
    introsort_depth_limit, introsort_with_mqms, quicksort_mo3, sort, sort_bmqms, sort_hqms, sort_mqms, sort_umqms,
    Algorithm, HybridConfig, UndersamplingConfig,
};

/// Sorts `v` ascending with uMQMS(11/5).
pub fn sort_unstable<T: Ord>(v: &mut [T]) {
    let mut ctx = Counter::with_mode(|a: &T, b: &T| a < b, Mode::Time);
    sort_umqms(v, UndersamplingConfig::DEFAULT, &mut ctx);
}
