//! QuickMergesort drivers.
//!
//! Every driver partitions, sorts the larger side with Mergesort using the
//! smaller side as buffer, and then continues with the smaller side. Only
//! the pivot choice differs:
//!
//! | variant      | pivot                                              |
//! |--------------|----------------------------------------------------|
//! | bMQMS        | median of the `n/3` medians of consecutive triples |
//! | MQMS         | median of pseudomedians of fifteen over all `n`     |
//! | uMQMS(θ)     | same over `n/θ` elements                           |
//! | HQMS         | median of three, one sampled step after a bad split |
//!
//! Introsort with a uMQMS stopper is plain median-of-three Quicksort that
//! hands any subarray that exceeds the depth limit to uMQMS(11/5).

use std::fmt;
use std::str::FromStr;

use crate::counter::Counter;
use crate::error::Error;
use crate::harness;
use crate::merge::{imbalanced_mergesort, mergesort_with_buffer, BufferSide};
use crate::primitives::{insertion_sort, median3_at};
use crate::selection::{
    choose_pivot_sampled, choose_pivot_triples, partition, partition_sampled,
    partition_with_duplicate_guard, DriverSabotage, EqualSide, GuardedPartition, SampledPivot,
};

/// Undersampling factor θ, a rational multiple of 1/30 and at least 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct UndersamplingConfig {
    num: u32,
    den: u32,
    /// `30θ`, an integer.
    t30: u32,
}

impl UndersamplingConfig {
    /// θ = 11/5, the tuned default.
    pub const DEFAULT: UndersamplingConfig = UndersamplingConfig { num: 11, den: 5, t30: 66 };
    /// θ = 1: the whole array is sampled.
    pub const FULL: UndersamplingConfig = UndersamplingConfig { num: 1, den: 1, t30: 30 };

    pub fn new(num: u32, den: u32) -> Result<Self, Error> {
        let bad = Error::InvalidTheta { num, den };
        if den == 0 || num < den || !(30 * num as u64).is_multiple_of(den as u64) {
            return Err(bad);
        }
        Ok(UndersamplingConfig { num, den, t30: 30 * num / den })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn theta(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Fraction of the range guaranteed on each side of the pivot, `1/(5θ)`.
    pub fn guarantee_fraction(&self) -> f64 {
        self.den as f64 / (5.0 * self.num as f64)
    }

    /// Number of groups of fifteen sampled from `n` elements, `⌊2n/(30θ)⌋`.
    pub fn sample_groups(&self, n: usize) -> usize {
        2 * n / self.t30 as usize
    }

    /// Elements guaranteed on each side of the pivot for a range of `n`,
    /// the pivot included.
    pub fn guarantee(&self, n: usize) -> usize {
        6 * (self.sample_groups(n) / 2)
    }
}

impl Default for UndersamplingConfig {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Debug for UndersamplingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ={}/{}", self.num, self.den)
    }
}

impl fmt::Display for UndersamplingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for UndersamplingConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (p, q) = Error::parse_fraction(s)?;
        Self::new(p, q)
    }
}

/// Parameters of hybrid QuickMergesort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HybridConfig {
    delta_num: u32,
    delta_den: u32,
    /// Sampling used for the escalation step.
    pub theta: UndersamplingConfig,
}

impl HybridConfig {
    pub fn new(delta_num: u32, delta_den: u32) -> Result<Self, Error> {
        if delta_num == 0 || delta_den == 0 || 2 * delta_num as u64 >= delta_den as u64 {
            return Err(Error::InvalidDelta { num: delta_num, den: delta_den });
        }
        Ok(HybridConfig { delta_num, delta_den, theta: UndersamplingConfig::DEFAULT })
    }

    pub fn delta(&self) -> f64 {
        self.delta_num as f64 / self.delta_den as f64
    }

    /// Whether a split with `small` elements on the smaller side of `n` is
    /// inside `[δn, (1-δ)n]`.
    fn balanced(&self, small: usize, n: usize) -> bool {
        small as u64 * self.delta_den as u64 >= self.delta_num as u64 * n as u64
    }
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig { delta_num: 1, delta_den: 16, theta: UndersamplingConfig::DEFAULT }
    }
}

/// The sorting algorithms of this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bmqms,
    Mqms,
    Umqms(UndersamplingConfig),
    Hqms(HybridConfig),
    IntrosortMqms,
    /// Median-of-three Quicksort without depth limit or duplicate guard.
    /// A baseline; quadratic on adversarial inputs.
    QuicksortMo3,
}

impl Algorithm {
    pub const NAMES: [&'static str; 6] = ["bmqms", "mqms", "umqms", "hqms", "introsort", "quicksort-mo3"];

    /// The variants with a guaranteed `n log n + O(n)` worst case.
    pub fn all_guaranteed() -> [Algorithm; 5] {
        [
            Algorithm::Bmqms,
            Algorithm::Mqms,
            Algorithm::Umqms(UndersamplingConfig::DEFAULT),
            Algorithm::Hqms(HybridConfig::default()),
            Algorithm::IntrosortMqms,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Bmqms => "bmqms",
            Algorithm::Mqms => "mqms",
            Algorithm::Umqms(_) => "umqms",
            Algorithm::Hqms(_) => "hqms",
            Algorithm::IntrosortMqms => "introsort",
            Algorithm::QuicksortMo3 => "quicksort-mo3",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Umqms(t) => write!(f, "umqms({t})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "bmqms" => Algorithm::Bmqms,
            "mqms" => Algorithm::Mqms,
            "umqms" => Algorithm::Umqms(UndersamplingConfig::DEFAULT),
            "hqms" => Algorithm::Hqms(HybridConfig::default()),
            "introsort" | "introsort-mqms" => Algorithm::IntrosortMqms,
            "quicksort-mo3" | "mo3" => Algorithm::QuicksortMo3,
            _ => return Err(Error::UnknownAlgorithm(s.to_owned())),
        })
    }
}

/// Sorts `v` with the given algorithm, tallying into `ctx`.
pub fn sort<T, F>(v: &mut [T], algorithm: Algorithm, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    match algorithm {
        Algorithm::Bmqms => sort_bmqms(v, ctx),
        Algorithm::Mqms => sort_mqms(v, ctx),
        Algorithm::Umqms(theta) => sort_umqms(v, theta, ctx),
        Algorithm::Hqms(cfg) => sort_hqms(v, cfg, ctx),
        Algorithm::IntrosortMqms => introsort_with_mqms(v, ctx),
        Algorithm::QuicksortMo3 => {
            quicksort_mo3(v, None, ctx);
        }
    }
}

/// QuickMergesort with the pivot chosen as median of `⌊n/3⌋` medians of
/// three.
pub fn sort_bmqms<T, F>(v: &mut [T], ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    qms(v, Sampler::Triples, ctx);
}

/// QuickMergesort with the pivot chosen as median of pseudomedians of
/// fifteen over the whole range.
pub fn sort_mqms<T, F>(v: &mut [T], ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    qms(v, Sampler::Fifteen(UndersamplingConfig::FULL), ctx);
}

/// QuickMergesort with the pivot sampled from `n/θ` elements.
pub fn sort_umqms<T, F>(v: &mut [T], theta: UndersamplingConfig, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    qms(v, Sampler::Fifteen(theta), ctx);
}

#[derive(Clone, Copy)]
enum Sampler {
    Triples,
    Fifteen(UndersamplingConfig),
}

fn qms<T, F>(v: &mut [T], sampler: Sampler, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    let (sabotage, min_len) = match sampler {
        Sampler::Triples => (DriverSabotage::Median, 6),
        Sampler::Fifteen(theta) if theta == UndersamplingConfig::FULL => (DriverSabotage::Median, 30),
        Sampler::Fifteen(theta) => (DriverSabotage::Extreme, theta.t30 as usize),
    };
    let mut lo = 0;
    let mut hi = v.len();
    let mut depth = 0;
    loop {
        let w = &mut v[lo..hi];
        let n = w.len();
        depth += 1;
        ctx.note_depth(depth);
        if n <= ctx.cutoff.max(1) || n < min_len {
            insertion_sort(w, ctx);
            return;
        }
        let sp = match sampler {
            Sampler::Triples => choose_pivot_triples(w, ctx),
            Sampler::Fifteen(theta) => choose_pivot_sampled(w, theta, ctx),
        };
        ctx.tally.mom_steps += 1;
        let g = partition_sampled(w, sp, sabotage, ctx);
        let next = sort_larger_side(w, &g, sp.guarantee, ctx);
        hi = lo + next.end;
        lo += next.start;
    }
}

/// Swaps the block `v[..a]` with the block `v[a..]` where one of them
/// consists of equal elements, so only `min(a, len - a)` swaps are needed.
/// The other block's order is not preserved. Applying it twice with the
/// block sizes exchanged restores the layout.
fn swap_blocks<T, F>(v: &mut [T], a: usize, ctx: &mut Counter<F>) {
    let len = v.len();
    for i in 0..a.min(len - a) {
        ctx.swap(v, i, len - 1 - i);
    }
}

/// Sorts the larger side of a partitioned range with Mergesort, using the
/// smaller side as buffer. Returns the range still to be sorted.
///
/// The smaller side serves as buffer on its own if it meets the pivot
/// guarantee; the block of pivot copies is moved out of the way and back.
/// Otherwise duplicates pushed it below the guarantee, and the pivot block
/// joins the buffer.
fn sort_larger_side<T, F>(
    w: &mut [T],
    g: &GuardedPartition,
    guarantee: usize,
    ctx: &mut Counter<F>,
) -> std::ops::Range<usize>
where
    F: FnMut(&T, &T) -> bool,
{
    let n = w.len();
    let (l, r) = (g.left_size(), g.right_size());
    let e = g.equal.len();
    if l == 0 && r == 0 {
        return 0..0;
    }
    let left_big = l >= r;
    let small = l.min(r);
    if small >= 1 && small + 1 >= guarantee {
        if left_big {
            // [big | E | S] -> [big | S' | E]
            swap_blocks(&mut w[l..], e, ctx);
            harness::shuffle_before_merge(&mut w[..l], ctx);
            imbalanced_mergesort(&mut w[..l + r], r, BufferSide::Back, ctx);
            swap_blocks(&mut w[l..], r, ctx);
            l + e..n
        } else {
            // [S | E | big] -> [E | S' | big]
            swap_blocks(&mut w[..l + e], l, ctx);
            harness::shuffle_before_merge(&mut w[l + e..], ctx);
            imbalanced_mergesort(&mut w[e..], l, BufferSide::Front, ctx);
            swap_blocks(&mut w[..l + e], e, ctx);
            0..l
        }
    } else if left_big {
        harness::shuffle_before_merge(&mut w[..l], ctx);
        imbalanced_mergesort(w, n - l, BufferSide::Back, ctx);
        l..n
    } else {
        harness::shuffle_before_merge(&mut w[l + e..], ctx);
        imbalanced_mergesort(w, l + e, BufferSide::Front, ctx);
        0..l + e
    }
}

/// Hybrid QuickMergesort.
///
/// Pivots are medians of first, middle and last element. Whenever a split
/// leaves fewer than `δn` elements on one side, the small side is sorted by
/// Mergesort (the large side is ample buffer), and the next pivot on the
/// large side is chosen by sampling as in uMQMS; after that it is back to
/// median of three.
pub fn sort_hqms<T, F>(v: &mut [T], cfg: HybridConfig, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    let mut lo = 0;
    let mut hi = v.len();
    let mut depth = 0;
    let mut sampled_next = false;
    loop {
        let w = &mut v[lo..hi];
        let n = w.len();
        depth += 1;
        ctx.note_depth(depth);
        if n <= ctx.cutoff.max(2) {
            insertion_sort(w, ctx);
            return;
        }
        let (g, guarantee) = if sampled_next {
            ctx.tally.mom_steps += 1;
            let sp: SampledPivot = choose_pivot_sampled(w, cfg.theta, ctx);
            if sp.sample_len == n {
                // Too short to sample: the range was sorted instead.
                return;
            }
            (partition_sampled(w, sp, DriverSabotage::Extreme, ctx), sp.guarantee)
        } else {
            ctx.tally.mo3_steps += 1;
            let p = median3_at(w, 0, n / 2, n - 1, ctx);
            (partition_with_duplicate_guard(w, p, 1, ctx), 2)
        };
        let (l, r) = (g.left_size(), g.right_size());
        if l == 0 && r == 0 {
            return;
        }
        sampled_next = !cfg.balanced(l.min(r), n);
        let next = if sampled_next {
            // Sort the small side with the large side as buffer and go on
            // with the large side.
            let e = g.equal.clone();
            if l <= r {
                mergesort_with_buffer(w, 0..l, e.end..e.end + l.div_ceil(2), ctx);
                e.end..n
            } else {
                mergesort_with_buffer(w, e.end..n, 0..r.div_ceil(2), ctx);
                0..l
            }
        } else {
            sort_larger_side(w, &g, guarantee, ctx)
        };
        hi = lo + next.end;
        lo += next.start;
    }
}

/// `2⌊log₂ n⌋`, the Introsort depth limit.
pub fn introsort_depth_limit(n: usize) -> u32 {
    if n < 2 {
        0
    } else {
        2 * n.ilog2()
    }
}

/// Introsort with uMQMS(11/5) in place of Heapsort as the fallback.
pub fn introsort_with_mqms<T, F>(v: &mut [T], ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    let limit = introsort_depth_limit(v.len());
    introsort_rec(v, limit, 1, ctx);
}

fn introsort_rec<T, F>(mut v: &mut [T], mut limit: u32, mut depth: u32, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    loop {
        let n = v.len();
        ctx.note_depth(depth);
        if n <= ctx.cutoff.max(2) {
            insertion_sort(v, ctx);
            return;
        }
        if limit == 0 {
            ctx.tally.stopper_calls += 1;
            sort_umqms(v, UndersamplingConfig::DEFAULT, ctx);
            return;
        }
        limit -= 1;
        depth += 1;
        ctx.tally.mo3_steps += 1;
        let p = median3_at(v, 0, n / 2, n - 1, ctx);
        let g = partition_with_duplicate_guard(v, p, 1, ctx);
        let (left, rest) = std::mem::take(&mut v).split_at_mut(g.equal.start);
        let right = &mut rest[g.equal.len()..];
        if left.len() <= right.len() {
            introsort_rec(left, limit, depth, ctx);
            v = right;
        } else {
            introsort_rec(right, limit, depth, ctx);
            v = left;
        }
    }
}

/// Median-of-three Quicksort with no safeguards. Stops early, leaving `v`
/// unsorted, once more than `budget` comparisons have been made in total;
/// returns whether it finished.
pub fn quicksort_mo3<T, F>(v: &mut [T], budget: Option<u64>, ctx: &mut Counter<F>) -> bool
where
    F: FnMut(&T, &T) -> bool,
{
    let budget = budget.unwrap_or(u64::MAX);
    mo3_rec(v, budget, 1, ctx)
}

fn mo3_rec<T, F>(mut v: &mut [T], budget: u64, mut depth: u32, ctx: &mut Counter<F>) -> bool
where
    F: FnMut(&T, &T) -> bool,
{
    loop {
        if ctx.comparisons() > budget {
            return false;
        }
        let n = v.len();
        ctx.note_depth(depth);
        if n <= ctx.cutoff.max(2) {
            insertion_sort(v, ctx);
            return true;
        }
        depth += 1;
        ctx.tally.mo3_steps += 1;
        let p = median3_at(v, 0, n / 2, n - 1, ctx);
        let pr = partition(v, p, EqualSide::Right, ctx);
        let (left, rest) = std::mem::take(&mut v).split_at_mut(pr.pivot_position);
        let right = &mut rest[1..];
        let done = if left.len() <= right.len() {
            let ok = mo3_rec(left, budget, depth, ctx);
            v = right;
            ok
        } else {
            let ok = mo3_rec(right, budget, depth, ctx);
            v = left;
            ok
        };
        if !done {
            return false;
        }
    }
}
