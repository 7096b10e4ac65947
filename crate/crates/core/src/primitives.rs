//! Fixed-size selection networks and insertion sort.
//!
//! The median routines never move elements. They run a compare-exchange
//! network over a small array of indices and return the index of the median,
//! so every call performs the same number of comparisons whatever the
//! outcomes are.

use crate::counter::Counter;

/// Comparison cost of each fixed-size median routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedMedianCost {
    pub median3: u64,
    pub median5: u64,
    pub pseudomedian9: u64,
    pub pseudomedian15: u64,
}

pub const FIXED_MEDIAN_COST: FixedMedianCost = FixedMedianCost {
    median3: 3,
    median5: 7,
    pseudomedian9: 12,
    pseudomedian15: 22,
};

#[inline]
fn cx<T, F>(v: &[T], idx: &mut [usize], i: usize, j: usize, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    // Strict comparison: equal keys keep their order, so ties resolve
    // towards the lower position.
    if ctx.lt(&v[idx[j]], &v[idx[i]]) {
        idx.swap(i, j);
    }
}

/// Median of `v[a]`, `v[b]`, `v[c]` in exactly three comparisons.
#[inline]
pub(crate) fn median3_at<T, F>(v: &[T], a: usize, b: usize, c: usize, ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let mut idx = [a, b, c];
    cx(v, &mut idx, 0, 1, ctx);
    cx(v, &mut idx, 1, 2, ctx);
    cx(v, &mut idx, 0, 1, ctx);
    idx[1]
}

/// Median of five in exactly seven comparisons.
///
/// Network: (0,1) (3,4) (0,3) (1,4) (1,2) (2,3) (1,2). After the first four
/// exchanges slot 0 holds the minimum and slot 4 the maximum of
/// `{0, 1, 3, 4}`, neither of which can be the median of all five. The last
/// three exchanges are a median-of-three on slots 1..=3.
#[inline]
pub(crate) fn median5_at<T, F>(v: &[T], pos: [usize; 5], ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let mut idx = pos;
    cx(v, &mut idx, 0, 1, ctx);
    cx(v, &mut idx, 3, 4, ctx);
    cx(v, &mut idx, 0, 3, ctx);
    cx(v, &mut idx, 1, 4, ctx);
    cx(v, &mut idx, 1, 2, ctx);
    cx(v, &mut idx, 2, 3, ctx);
    cx(v, &mut idx, 1, 2, ctx);
    idx[2]
}

/// Pseudomedian of nine elements starting at `at`: median of the three
/// medians of consecutive triples. Twelve comparisons.
#[inline]
pub(crate) fn pseudomedian9_at<T, F>(v: &[T], at: usize, ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let m0 = median3_at(v, at, at + 1, at + 2, ctx);
    let m1 = median3_at(v, at + 3, at + 4, at + 5, ctx);
    let m2 = median3_at(v, at + 6, at + 7, at + 8, ctx);
    median3_at(v, m0, m1, m2, ctx)
}

/// Pseudomedian of fifteen elements starting at `at`: median of the five
/// medians of consecutive triples. Twenty-two comparisons.
#[inline]
pub(crate) fn pseudomedian15_at<T, F>(v: &[T], at: usize, ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    let mut m = [0usize; 5];
    for (g, slot) in m.iter_mut().enumerate() {
        let s = at + 3 * g;
        *slot = median3_at(v, s, s + 1, s + 2, ctx);
    }
    median5_at(v, m, ctx)
}

/// Position of the median of a three-element slice.
///
/// # Panics
///
/// If `v.len() != 3`.
pub fn median3<T, F>(v: &[T], ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    assert_eq!(v.len(), 3, "median3 needs exactly 3 elements");
    median3_at(v, 0, 1, 2, ctx)
}

/// Position of the median of a five-element slice.
///
/// # Panics
///
/// If `v.len() != 5`.
pub fn median5<T, F>(v: &[T], ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    assert_eq!(v.len(), 5, "median5 needs exactly 5 elements");
    median5_at(v, [0, 1, 2, 3, 4], ctx)
}

/// Position of the pseudomedian ("ninther") of a nine-element slice.
///
/// # Panics
///
/// If `v.len() != 9`.
pub fn pseudomedian9<T, F>(v: &[T], ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    assert_eq!(v.len(), 9, "pseudomedian9 needs exactly 9 elements");
    pseudomedian9_at(v, 0, ctx)
}

/// Position of the pseudomedian of a fifteen-element slice.
///
/// # Panics
///
/// If `v.len() != 15`.
pub fn pseudomedian15<T, F>(v: &[T], ctx: &mut Counter<F>) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    assert_eq!(v.len(), 15, "pseudomedian15 needs exactly 15 elements");
    pseudomedian15_at(v, 0, ctx)
}

/// Stable insertion sort.
pub fn insertion_sort<T, F>(v: &mut [T], ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && ctx.lt(&v[j], &v[j - 1]) {
            ctx.swap(v, j, j - 1);
            j -= 1;
        }
    }
}
