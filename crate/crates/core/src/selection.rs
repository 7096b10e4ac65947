//! Median-of-medians selection and partitioning.
//!
//! Selection uses the repeated-step scheme: the range is cut into blocks of
//! nine, each block contributes its ninther to a sample, and the pivot is
//! selected recursively from that sample. The pivot's rank inside the sample
//! is adaptive: far-left and far-right targets use a sample element near the
//! target rather than the sample median.
//!
//! Ranks in this module are 0-based unless a function says otherwise.

use std::ops::Range;

use crate::counter::Counter;
use crate::harness::{self, PivotSabotage};
use crate::primitives::{insertion_sort, median3_at, pseudomedian15_at, pseudomedian9_at};
use crate::sorter::UndersamplingConfig;

/// Ranges of at most this size are selected by sorting them.
pub const SMALL_SELECTION: usize = 30;

/// Which side receives elements equal to the pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualSide {
    /// `left < pivot <= right`
    Right,
    /// `left <= pivot < right`
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionResult {
    pub pivot_position: usize,
    pub left_size: usize,
    pub right_size: usize,
    pub equal_side: EqualSide,
}

/// Comparison budget bookkeeping for a selection call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelectionBudget {
    pub small_threshold: usize,
    pub comparisons_charged: u64,
}

/// Layout produced by the duplicate guard.
///
/// `[0, equal.start)` holds elements `<=` the pivot, `equal` holds copies of
/// the pivot (the pivot included) in their final positions and
/// `[equal.end, len)` holds elements `>=` the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardedPartition {
    pub equal: Range<usize>,
    pub len: usize,
    /// Whether a second partitioning pass was needed.
    pub repartitioned: bool,
}

impl GuardedPartition {
    pub fn left_size(&self) -> usize {
        self.equal.start
    }

    pub fn right_size(&self) -> usize {
        self.len - self.equal.end
    }

    fn single(pivot: usize, len: usize) -> Self {
        GuardedPartition {
            equal: pivot..pivot + 1,
            len,
            repartitioned: false,
        }
    }
}

/// Moves every element of `rest` that belongs left of `pivot` to the front
/// and returns how many there are. Each element is compared exactly once.
fn split_around<T, F>(pivot: &T, rest: &mut [T], side: EqualSide, ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let goes_left = |x: &T, ctx: &mut Counter<F>| match side {
        EqualSide::Right => ctx.lt(x, pivot),
        EqualSide::Left => !ctx.lt(pivot, x),
    };
    let mut l = 0;
    let mut r = rest.len();
    loop {
        while l < r && goes_left(&rest[l], ctx) {
            l += 1;
        }
        if l == r {
            return l;
        }
        // rest[l] is known to go right; never look at it again.
        while r - 1 > l && !goes_left(&rest[r - 1], ctx) {
            r -= 1;
        }
        if r - 1 == l {
            return l;
        }
        ctx.swap(rest, l, r - 1);
        l += 1;
        r -= 1;
    }
}

/// Partitions `v` around `v[pivot_position]` with exactly `len - 1`
/// comparisons and moves the pivot to its final place.
pub fn partition<T, F>(
    v: &mut [T],
    pivot_position: usize,
    equal_side: EqualSide,
    ctx: &mut Counter<F>,
) -> PartitionResult
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    if n == 0 {
        return PartitionResult {
            pivot_position: 0,
            left_size: 0,
            right_size: 0,
            equal_side,
        };
    }
    assert!(pivot_position < n, "pivot position {pivot_position} out of range {n}");
    ctx.swap(v, 0, pivot_position);
    let (head, rest) = v.split_at_mut(1);
    let left = split_around(&head[0], rest, equal_side, ctx);
    ctx.swap(v, 0, left);
    PartitionResult {
        pivot_position: left,
        left_size: left,
        right_size: n - 1 - left,
        equal_side,
    }
}

/// Partitions a range whose prefix `v[..sample_len]` has already been
/// arranged around the pivot at `v[pivot]` by a selection call. Only the
/// `len - sample_len` unclassified elements are compared. Returns the final
/// pivot position.
pub(crate) fn partition_after_sample<T, F>(
    v: &mut [T],
    sample_len: usize,
    pivot: usize,
    ctx: &mut Counter<F>,
) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    debug_assert!(pivot < sample_len && sample_len <= v.len());
    let (head, tail) = v.split_at_mut(sample_len);
    let lt = split_around(&head[pivot], tail, EqualSide::Right, ctx);
    // [A | p | B | L | R]  ->  [A | L | p | B | R]
    if lt > 0 {
        v[pivot..sample_len + lt].rotate_left(sample_len - pivot);
        ctx.tally.moves += (sample_len + lt - pivot) as u64;
    }
    pivot + lt
}

/// Same as [`partition_after_sample`] but the pivot is an oracle choice: the
/// oracle has already partitioned `v` around `v[pivot]`, and the comparisons
/// a real partition of the unclassified elements would make are charged.
fn charge_oracle_partition<F>(n: usize, sample_len: usize, ctx: &mut Counter<F>) {
    ctx.charge((n - sample_len) as u64);
}

/// Applies the duplicate guard to a range partitioned around `v[pivot]` with
/// equal elements sent right.
///
/// If fewer than `min_left` elements ended up left of the pivot, the pivot
/// guarantee was broken, which can only be caused by duplicates. The right
/// part is then partitioned again with equal elements sent left, which
/// gathers every copy of the pivot into one block next to it.
pub(crate) fn guard<T, F>(
    v: &mut [T],
    pivot: usize,
    min_left: usize,
    ctx: &mut Counter<F>,
) -> GuardedPartition
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    if pivot >= min_left {
        return GuardedPartition::single(pivot, n);
    }
    ctx.tally.guard_repartitions += 1;
    let (head, rest) = v.split_at_mut(pivot + 1);
    let equal = split_around(&head[pivot], rest, EqualSide::Left, ctx);
    // After a sampled pivot choice the left part holds elements `<=` the
    // pivot, not `<`; split off its copies of the pivot as well.
    let (left, p) = head.split_at_mut(pivot);
    let less = split_around(&p[0], left, EqualSide::Right, ctx);
    GuardedPartition {
        equal: less..pivot + 1 + equal,
        len: n,
        repartitioned: true,
    }
}

/// Partitions around `v[pivot_position]` and re-partitions if fewer than
/// `expected_min_side` elements are left of the pivot.
pub fn partition_with_duplicate_guard<T, F>(
    v: &mut [T],
    pivot_position: usize,
    expected_min_side: usize,
    ctx: &mut Counter<F>,
) -> GuardedPartition
where
    F: FnMut(&T, &T) -> bool,
{
    if v.is_empty() {
        return GuardedPartition {
            equal: 0..0,
            len: 0,
            repartitioned: false,
        };
    }
    let p = partition(v, pivot_position, EqualSide::Right, ctx);
    guard(v, p.pivot_position, expected_min_side, ctx)
}

/// Rank (1-based) inside a sample of `s` ninthers to use as pivot when
/// looking for the element of 1-based rank `k` among `n`.
///
/// Every ninther carries four elements on each side, itself included, so
/// the `ceil(k/4)`-th sample element has at least `k` elements at or below
/// it. Left of `2n/9` that element is used instead of the sample median;
/// the far right is handled symmetrically.
pub fn adaptive_sample_rank(k: usize, n: usize, s: usize) -> usize {
    assert!(s >= 1, "empty sample");
    assert!(k >= 1 && k <= n, "rank {k} out of 1..={n}");
    let r = if 9 * k <= 2 * n {
        k.div_ceil(4)
    } else if 9 * (n - k + 1) <= 2 * n {
        (s + 1).saturating_sub((n - k + 1).div_ceil(4))
    } else {
        s.div_ceil(2)
    };
    r.clamp(1, s)
}

/// Rearranges `v` so that `v[k]` holds the element of 0-based rank `k`,
/// smaller-or-equal elements before it and greater-or-equal ones after.
/// Returns a reference to that element.
///
/// Uses at most `20n` comparisons plus lower-order terms.
///
/// # Panics
///
/// If `k >= v.len()`.
pub fn mom_select<'a, T, F>(v: &'a mut [T], k: usize, ctx: &mut Counter<F>) -> &'a T
where
    F: FnMut(&T, &T) -> bool,
{
    assert!(k < v.len(), "rank {k} out of range for length {}", v.len());
    select_in(v, k, ctx);
    &v[k]
}

fn select_in<T, F>(v: &mut [T], k: usize, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    let mut lo = 0;
    let mut hi = v.len();
    let mut k = k;
    loop {
        let w = &mut v[lo..hi];
        let n = w.len();
        if n <= SMALL_SELECTION {
            insertion_sort(w, ctx);
            return;
        }
        let s = n / 9;
        for i in 0..s {
            let p = pseudomedian9_at(w, 9 * i, ctx);
            ctx.swap(w, i, p);
        }
        // 1-based sample rank; each sample element carries four on each side.
        let j = adaptive_sample_rank(k + 1, n, s);
        select_in(&mut w[..s], j - 1, ctx);
        let at_most = 4 * j;
        let at_least = 4 * (s - j + 1);

        let split = if ctx.simulating() {
            let feasible = (at_most - 1)..=(n - at_least);
            let pos = harness::worst_pivot(w, feasible, PivotSabotage::AwayFrom(k), ctx);
            charge_oracle_partition(n, s, ctx);
            GuardedPartition::single(pos, n)
        } else {
            let pos = partition_after_sample(w, s, j - 1, ctx);
            guard(w, pos, at_most - 1, ctx)
        };

        if split.equal.contains(&k) {
            return;
        }
        if k < split.equal.start {
            hi = lo + split.equal.start;
        } else {
            lo += split.equal.end;
            k -= split.equal.end;
        }
    }
}

/// Pivot chosen from a sample gathered into the prefix of a range.
///
/// `v[..sample_len]` is arranged around the pivot at `v[pivot]`; every
/// other element is still unclassified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampledPivot {
    pub sample_len: usize,
    pub pivot: usize,
    /// Elements guaranteed `<=` (and `>=`) the pivot, itself included.
    pub guarantee: usize,
}

/// Pivot from pseudomedians of fifteen over `n/θ` elements.
///
/// `⌊2n/(30θ)⌋` groups of fifteen consecutive elements, spread evenly over
/// the range, each contribute their pseudomedian; the pseudomedians are
/// swapped into the prefix and their median is found with [`mom_select`].
/// The pivot then has at least `6⌊n/(30θ)⌋` elements on each side, itself
/// included. Ranges shorter than `30θ` are sorted instead and their median
/// returned, with the whole range counted as sample.
pub fn choose_pivot_sampled<T, F>(
    v: &mut [T],
    theta: UndersamplingConfig,
    ctx: &mut Counter<F>,
) -> SampledPivot
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    assert!(n > 0, "cannot choose a pivot from an empty range");
    let groups = theta.sample_groups(n);
    if groups < 2 {
        insertion_sort(v, ctx);
        return SampledPivot {
            sample_len: n,
            pivot: (n - 1) / 2,
            guarantee: n.div_ceil(2),
        };
    }
    let stride = n / groups;
    for g in 0..groups {
        let p = pseudomedian15_at(v, g * stride, ctx);
        ctx.swap(v, g, p);
    }
    let j = groups / 2;
    select_in(&mut v[..groups], j, ctx);
    SampledPivot {
        sample_len: groups,
        pivot: j,
        guarantee: 6 * (groups / 2),
    }
}

/// Pivot from medians of three over `⌊n/3⌋` consecutive triples; at least
/// `2⌊n/6⌋` elements on each side, itself included.
pub(crate) fn choose_pivot_triples<T, F>(v: &mut [T], ctx: &mut Counter<F>) -> SampledPivot
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    let s = n / 3;
    debug_assert!(s >= 2);
    for i in 0..s {
        let p = median3_at(v, 3 * i, 3 * i + 1, 3 * i + 2, ctx);
        ctx.swap(v, i, p);
    }
    let j = s / 2;
    select_in(&mut v[..s], j, ctx);
    SampledPivot {
        sample_len: s,
        pivot: j,
        guarantee: 2 * (s / 2),
    }
}

/// Where the QuickMergesort driver wants the pivot when simulating its
/// worst case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DriverSabotage {
    Median,
    Extreme,
}

/// Partitions after a sampled pivot choice and applies the duplicate guard.
/// In simulation mode the pivot is replaced by the oracle's worst choice.
pub(crate) fn partition_sampled<T, F>(
    v: &mut [T],
    sp: SampledPivot,
    sabotage: DriverSabotage,
    ctx: &mut Counter<F>,
) -> GuardedPartition
where
    F: FnMut(&T, &T) -> bool,
{
    let n = v.len();
    if ctx.simulating() && sp.sample_len < n {
        let feasible = (sp.guarantee - 1)..=(n - sp.guarantee);
        let kind = match sabotage {
            DriverSabotage::Median => PivotSabotage::ExactMedian,
            DriverSabotage::Extreme => PivotSabotage::LeftExtreme,
        };
        let pos = harness::worst_pivot(v, feasible, kind, ctx);
        charge_oracle_partition(n, sp.sample_len, ctx);
        return GuardedPartition::single(pos, n);
    }
    let pos = partition_after_sample(v, sp.sample_len, sp.pivot, ctx);
    guard(v, pos, sp.guarantee.saturating_sub(1), ctx)
}
