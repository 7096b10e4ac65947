//! Buffer-based merging and Mergesort.
//!
//! Nothing here allocates. Free space is a *buffer*: a region of elements
//! whose order does not matter. Elements only ever move by swapping with a
//! buffer cell, so the buffer's multiset is preserved by every operation;
//! only its position and internal order change.
//!
//! Two merges are provided. The plain one swaps the shorter run into the
//! buffer and merges into the gap left behind. Reinhardt's merge needs a
//! buffer of only half the length of one run. It merges forward until the
//! gap in front of the left run closes, then backward into the cells that
//! the right run vacated.
//!
//! Mergesort comes in two flavours. With a buffer of at least half the
//! input it is ordinary top-down Mergesort. With less, the input is sorted
//! in chunks of twice the buffer size that are merged one at a time with
//! Reinhardt's merge.

use std::ops::Range;

use crate::counter::Counter;

/// Where the buffer sits relative to the runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BufferSide {
    /// `[buffer | left | right]`
    Front,
    /// `[left | right | buffer]`
    Back,
}

/// Geometry of a buffer and two adjacent sorted runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeLayout {
    pub buffer_start: usize,
    /// Buffer length.
    pub t: usize,
    /// Length of the left run.
    pub left: usize,
    /// Length of the right run.
    pub right: usize,
    pub side: BufferSide,
}

impl MergeLayout {
    pub fn front(t: usize, left: usize, right: usize) -> Self {
        MergeLayout { buffer_start: 0, t, left, right, side: BufferSide::Front }
    }

    pub fn back(left: usize, right: usize, t: usize) -> Self {
        MergeLayout { buffer_start: left + right, t, left, right, side: BufferSide::Back }
    }

    /// The whole span covered by buffer and runs.
    pub fn span(&self) -> Range<usize> {
        let start = match self.side {
            BufferSide::Front => self.buffer_start,
            BufferSide::Back => self.buffer_start - self.left - self.right,
        };
        start..start + self.t + self.left + self.right
    }
}

/// Index-addressed access to a sequence, possibly mirrored.
trait View {
    fn lt(&mut self, i: usize, j: usize) -> bool;
    fn swap(&mut self, i: usize, j: usize);
    fn cutoff(&self) -> usize;
}

struct Base<'a, T, F> {
    v: &'a mut [T],
    ctx: &'a mut Counter<F>,
}

impl<T, F> View for Base<'_, T, F>
where
    F: FnMut(&T, &T) -> bool,
{
    #[inline]
    fn lt(&mut self, i: usize, j: usize) -> bool {
        self.ctx.lt(&self.v[i], &self.v[j])
    }

    #[inline]
    fn swap(&mut self, i: usize, j: usize) {
        self.ctx.swap(self.v, i, j);
    }

    fn cutoff(&self) -> usize {
        self.ctx.cutoff
    }
}

/// `lo..hi` of the inner view read right to left with the order reversed.
/// Sorting ascending in the mirror sorts ascending in the original.
struct Mirror<'a, V> {
    inner: &'a mut V,
    hi: usize,
}

impl<'a, V: View> Mirror<'a, V> {
    fn new(inner: &'a mut V, hi: usize) -> Self {
        Mirror { inner, hi }
    }

    #[inline]
    fn at(&self, i: usize) -> usize {
        self.hi - 1 - i
    }
}

impl<V: View> View for Mirror<'_, V> {
    #[inline]
    fn lt(&mut self, i: usize, j: usize) -> bool {
        let (a, b) = (self.at(i), self.at(j));
        self.inner.lt(b, a)
    }

    #[inline]
    fn swap(&mut self, i: usize, j: usize) {
        let (a, b) = (self.at(i), self.at(j));
        self.inner.swap(a, b);
    }

    fn cutoff(&self) -> usize {
        self.inner.cutoff()
    }
}

fn insertion_sort<V: View>(v: &mut V, start: usize, n: usize) {
    for i in start + 1..start + n {
        let mut j = i;
        while j > start && v.lt(j, j - 1) {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
}

/// Merges run `y` (elsewhere) with run `x` that starts `ylen` cells after
/// `out`, into `out..out + xlen + ylen`. The cells `out..out + ylen` hold
/// buffer elements.
fn merge_into_gap<V: View>(
    v: &mut V,
    mut out: usize,
    xlen: usize,
    mut y: usize,
    ylen: usize,
    y_wins_ties: bool,
) {
    let mut x = out + ylen;
    let xe = x + xlen;
    let ye = y + ylen;
    while y < ye {
        let take_y = if x == xe {
            true
        } else if y_wins_ties {
            !v.lt(x, y)
        } else {
            v.lt(y, x)
        };
        if take_y {
            v.swap(out, y);
            y += 1;
        } else {
            v.swap(out, x);
            x += 1;
        }
        out += 1;
    }
}

/// Sorts `src..src+n` into `dst..dst+n`, which holds buffer elements.
/// The two regions must be disjoint; afterwards `src..src+n` holds the
/// buffer.
fn sort_to<V: View>(v: &mut V, src: usize, dst: usize, n: usize) {
    if n <= v.cutoff() {
        insertion_sort(v, src, n);
        for i in 0..n {
            v.swap(src + i, dst + i);
        }
        return;
    }
    let h1 = n / 2;
    let h2 = n - h1;
    sort_to(v, src + h1, dst + h1, h2);
    sort_to(v, src, src + h1, h1);
    merge_into_gap(v, dst, h2, src + h1, h1, true);
}

/// Sorts `a..a+n` using the disjoint buffer `b..b+m`, `m >= ceil(n/2)`.
fn sort_in_place<V: View>(v: &mut V, a: usize, n: usize, b: usize) {
    if n <= v.cutoff() {
        insertion_sort(v, a, n);
        return;
    }
    let h1 = n / 2;
    let h2 = n - h1;
    sort_to(v, a + h1, b, h2);
    sort_to(v, a, a + h2, h1);
    merge_into_gap(v, a, h1, b, h2, false);
}

/// `[B t | X l | Y r]` → `[merged | B]`, provided `r <= 2t`.
fn merge_front<V: View>(v: &mut V, base: usize, t: usize, l: usize, r: usize) {
    let mut out = base;
    let mut xi = base + t;
    let xe = xi + l;
    let mut yi = xe;
    let ye = yi + r;
    while out < xi && xi < xe && yi < ye {
        if v.lt(yi, xi) {
            v.swap(out, yi);
            yi += 1;
        } else {
            v.swap(out, xi);
            xi += 1;
        }
        out += 1;
    }
    if yi == ye {
        while xi < xe {
            v.swap(out, xi);
            out += 1;
            xi += 1;
        }
        return;
    }
    if xi == xe {
        while yi < ye {
            v.swap(out, yi);
            out += 1;
            yi += 1;
        }
        return;
    }
    // The gap has closed after exactly t elements of Y, so Y's first t
    // cells are free and the merged result ends inside them.
    let mut w = base + l + r;
    let mut xend = xe;
    let mut yend = ye;
    while xend > xi && yend > yi {
        w -= 1;
        if v.lt(yend - 1, xend - 1) {
            v.swap(w, xend - 1);
            xend -= 1;
        } else {
            v.swap(w, yend - 1);
            yend -= 1;
        }
    }
    while yend > yi {
        w -= 1;
        v.swap(w, yend - 1);
        yend -= 1;
    }
}

/// `[X l | Y r | B t]` → `[B | merged]`, provided `l <= 2t`.
fn merge_back<V: View>(v: &mut V, base: usize, l: usize, r: usize, t: usize) {
    let hi = base + l + r + t;
    let mut m = Mirror::new(v, hi);
    merge_front(&mut m, 0, t, r, l);
}

/// `[B m | D n]` → `[sorted D | B]`.
fn shift<V: View>(v: &mut V, b: usize, m: usize, n: usize) {
    if n == 0 {
        return;
    }
    if m >= n {
        sort_to(v, b + m, b, n);
    } else if n <= 4 * m {
        let x = n.div_ceil(2);
        let y = n - x;
        sort_in_place(v, b + m, x, b);
        sort_in_place(v, b + m + x, y, b);
        merge_front(v, b, m, x, y);
    } else {
        let p = n - 2 * m;
        sort_in_place(v, b + m + p, 2 * m, b);
        stay(v, b, m, p);
        merge_front(v, b, m, p, 2 * m);
    }
}

/// `[B m | D n]` → `[B | sorted D]`.
fn stay<V: View>(v: &mut V, b: usize, m: usize, n: usize) {
    if n == 0 {
        return;
    }
    if m >= n.div_ceil(2) {
        sort_in_place(v, b + m, n, b);
    } else if n <= 4 * m {
        let x = n / 2;
        let y = n - x;
        shift(v, b, m, x);
        shift(v, b + x, m, y);
        merge_back(v, b, x, y, m);
    } else {
        let c = 2 * m;
        shift(v, b, m, c);
        shift(v, b + c, m, n - c);
        merge_back(v, b, c, n - c, m);
    }
}

fn check_layout(len: usize, layout: &MergeLayout) -> Range<usize> {
    let span = layout.span();
    assert!(
        span.end <= len,
        "layout {layout:?} does not fit a slice of length {len}"
    );
    span
}

/// Merges two adjacent sorted runs, swapping the shorter run into the
/// buffer first. The runs end up merged where they were and the buffer
/// stays where it was. Returns the merged range.
///
/// # Panics
///
/// If `t < min(left, right)` or the layout does not fit `v`.
pub fn simple_buffered_merge<T, F>(v: &mut [T], layout: MergeLayout, ctx: &mut Counter<F>) -> Range<usize>
where
    F: FnMut(&T, &T) -> bool,
{
    let span = check_layout(v.len(), &layout);
    let MergeLayout { t, left: l, right: r, .. } = layout;
    assert!(t >= l.min(r), "buffer of {t} too small to merge runs of {l} and {r}");
    let mut base = Base { v, ctx };
    match layout.side {
        BufferSide::Front => {
            let s = span.start;
            front_simple(&mut base, s, t, l, r);
            s + t..span.end
        }
        BufferSide::Back => {
            let mut m = Mirror::new(&mut base, span.end);
            front_simple(&mut m, 0, t, r, l);
            span.start..span.start + l + r
        }
    }
}

fn front_simple<V: View>(v: &mut V, s: usize, t: usize, l: usize, r: usize) {
    let x = s + t;
    if l <= r {
        for i in 0..l {
            v.swap(s + i, x + i);
        }
        merge_into_gap(v, x, r, s, l, true);
    } else {
        for i in 0..r {
            v.swap(s + i, x + l + i);
        }
        // Merge backwards: mirror the span so the gap is at the front.
        let hi = s + t + l + r;
        let mut m = Mirror::new(v, hi);
        merge_into_gap(&mut m, 0, l, hi - s - r, r, true);
    }
}

/// Reinhardt's merge. With the buffer in front, `[B | X | Y]` becomes
/// `[merged | B]`; with the buffer at the back, `[X | Y | B]` becomes
/// `[B | merged]`. Returns the merged range.
///
/// # Panics
///
/// If the buffer is shorter than half the run on the far side
/// (`right` for [`BufferSide::Front`], `left` for [`BufferSide::Back`]),
/// or the layout does not fit `v`.
pub fn reinhardt_merge<T, F>(v: &mut [T], layout: MergeLayout, ctx: &mut Counter<F>) -> Range<usize>
where
    F: FnMut(&T, &T) -> bool,
{
    let span = check_layout(v.len(), &layout);
    let MergeLayout { t, left: l, right: r, .. } = layout;
    let mut base = Base { v, ctx };
    match layout.side {
        BufferSide::Front => {
            assert!(2 * t >= r, "buffer of {t} too small for a right run of {r}");
            merge_front(&mut base, span.start, t, l, r);
            span.start..span.start + l + r
        }
        BufferSide::Back => {
            assert!(2 * t >= l, "buffer of {t} too small for a left run of {l}");
            merge_back(&mut base, span.start, l, r, t);
            span.start + t..span.end
        }
    }
}

/// Top-down Mergesort of `v[data]` using `v[buffer]` as scratch space.
///
/// # Panics
///
/// If the ranges overlap, do not fit `v`, or the buffer is shorter than
/// `ceil(data.len() / 2)`.
pub fn mergesort_with_buffer<T, F>(
    v: &mut [T],
    data: Range<usize>,
    buffer: Range<usize>,
    ctx: &mut Counter<F>,
) where
    F: FnMut(&T, &T) -> bool,
{
    let n = data.len();
    assert!(data.end <= v.len() && buffer.end <= v.len(), "range out of bounds");
    assert!(
        data.end <= buffer.start || buffer.end <= data.start || n <= 1,
        "data {data:?} and buffer {buffer:?} overlap"
    );
    assert!(
        buffer.len() >= n.div_ceil(2) || n <= 1,
        "buffer of {} too small to sort {n} elements",
        buffer.len()
    );
    sort_in_place(&mut Base { v, ctx }, data.start, n, buffer.start);
}

/// Sorts `v` except for a buffer of `m` elements at the given end, which
/// stays at that end.
///
/// Any `m >= 1` works. With `m >= ceil(n/2)` this is plain Mergesort;
/// otherwise chunks of `2m` are sorted and merged in one at a time, which
/// costs `O(n^2 / m)` comparisons in total.
///
/// # Panics
///
/// If `m == 0` while more than one element has to be sorted, or `m > v.len()`.
pub fn imbalanced_mergesort<T, F>(v: &mut [T], m: usize, side: BufferSide, ctx: &mut Counter<F>)
where
    F: FnMut(&T, &T) -> bool,
{
    assert!(m <= v.len(), "buffer of {m} exceeds slice of {}", v.len());
    let n = v.len() - m;
    if n <= 1 {
        return;
    }
    assert!(m >= 1, "cannot sort {n} elements without a buffer");
    let len = v.len();
    let mut base = Base { v, ctx };
    match side {
        BufferSide::Front => stay(&mut base, 0, m, n),
        BufferSide::Back => stay(&mut Mirror::new(&mut base, len), 0, m, n),
    }
}
