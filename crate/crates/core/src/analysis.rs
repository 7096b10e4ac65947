//! Closed forms behind the worst-case bounds.
//!
//! These are evaluated numerically and used as oracles for measured
//! comparison counts; nothing here sorts anything.

use crate::error::Error;

/// Mergesort constant: `T_MS(n) <= n log n - KAPPA n + 1`.
pub const KAPPA: f64 = 0.91;
/// Upper bound on the rounding error term [`eps`] over `[0, 1)`.
pub const EPS_MAX: f64 = 0.015;
/// Bisection tolerance used throughout.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundConstants {
    pub kappa: f64,
    pub eps_max: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants { kappa: KAPPA, eps_max: EPS_MAX }
    }
}

/// `T(n) <= T(αn + A) + T(βn + A) + Cn + D` for `n >= N0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceSpec {
    pub alpha: f64,
    pub beta: f64,
    pub slack_a: u64,
    pub c: f64,
    pub d: f64,
    pub n0: u64,
}

impl RecurrenceSpec {
    pub fn new(alpha: f64, beta: f64, c: f64) -> Self {
        RecurrenceSpec { alpha, beta, slack_a: 0, c, d: 0.0, n0: 1 }
    }

    /// Repeated-step median-of-medians: `T(7n/9 + 8) + T(n/9) + 20n/9`.
    pub fn repeated_step() -> Self {
        RecurrenceSpec { alpha: 7.0 / 9.0, beta: 1.0 / 9.0, slack_a: 8, c: 20.0 / 9.0, d: 0.0, n0: 31 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceSolution {
    /// `C / (1 - α - β)`.
    pub coefficient: f64,
    /// Solution of `α^ζ + β^ζ = 1`; the lower-order term is `O(n^ζ)`.
    pub zeta: f64,
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let f_lo = f(lo);
    while hi - lo > TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Linear coefficient and exponent of a two-branch divide-and-conquer
/// recurrence with linear cost per level.
pub fn linear_coefficient(spec: &RecurrenceSpec) -> Result<RecurrenceSolution, Error> {
    let RecurrenceSpec { alpha, beta, c, .. } = *spec;
    if !(alpha > 0.0 && beta > 0.0 && c > 0.0 && alpha + beta < 1.0) {
        return Err(Error::RecurrenceDomain);
    }
    let zeta = bisect(0.0, 1.0, |z| alpha.powf(z) + beta.powf(z) - 1.0);
    Ok(RecurrenceSolution { coefficient: c / (1.0 - alpha - beta), zeta })
}

/// Linear term of `T(n) <= T(αn) + T_MS((1-α)n) + Cn` where
/// `T_MS(m) = m log m`:
/// `α log α / (1-α) + log(1-α) + C / (1-α)`.
pub fn q_coefficient(alpha: f64, c: f64) -> f64 {
    let gamma = 1.0 - alpha;
    alpha * alpha.log2() / gamma + gamma.log2() + c / gamma
}

/// Per-level linear cost of bMQMS, `C` in [`q_coefficient`].
pub fn bmqms_level_cost() -> f64 {
    // Mergesort on n/2, selection on n/3 samples, n/3 medians of three,
    // partitioning the remaining 2n/3.
    -KAPPA / 2.0 + 20.0 / 3.0 + 1.0 + 2.0 / 3.0
}

/// Per-level linear cost of MQMS, `C` in [`q_coefficient`].
pub fn mqms_level_cost() -> f64 {
    // Mergesort on n/2, selection on n/15 samples, 22/15 n for the
    // pseudomedians, 14/15 n for partitioning.
    -KAPPA / 2.0 + 20.0 / 15.0 + 36.0 / 15.0
}

/// Cost of Mergesort with a buffer of `ℓ n` relative to its ideal, per
/// element: `-κ` while the buffer suffices for balanced merging (`ℓ < 2`),
/// then the penalty of the imbalanced merges.
pub fn f(ell: f64) -> f64 {
    if ell < 2.0 {
        -KAPPA
    } else {
        -KAPPA - ell.log2() + ell / 2.0 + 0.5 - 1.0 / ell
    }
}

/// Rounding error of the imbalanced Mergesort bound.
pub fn eps(xi: f64) -> f64 {
    (5.0 * xi - 4.0 + (4.0 - 2.0 * xi) * (2.0 - xi).log2() - xi * xi).max(0.0)
}

/// Linear term of uMQMS(θ) when the recursion keeps a fraction `α` and
/// Mergesort gets the rest with buffer `αn`.
pub fn g(alpha: f64, theta: f64) -> Result<f64, Error> {
    let lo = 1.0 / (5.0 * theta);
    // Tiny slack so that 1/(5θ) computed two ways still counts as inside.
    if !(alpha >= lo - 1e-12 && alpha <= 0.5 + 1e-12) {
        return Err(Error::AlphaDomain { alpha, theta });
    }
    Ok(g_unchecked(alpha, theta))
}

fn g_unchecked(alpha: f64, theta: f64) -> f64 {
    let gamma = 1.0 - alpha;
    alpha * alpha.log2() / gamma
        + gamma.log2()
        + f(gamma / (2.0 * alpha))
        + (1.0 + 41.0 / (15.0 * theta)) / gamma
        + EPS_MAX
}

/// The θ where `g(1/2, θ) = g(1/(5θ), θ)`, bisected on `[2, 3]`.
pub fn find_theta_opt() -> f64 {
    bisect(2.0, 3.0, |t| g_unchecked(0.5, t) - g_unchecked(1.0 / (5.0 * t), t))
}

/// Worst case of top-down Mergesort, `n⌈log n⌉ - 2^⌈log n⌉ + 1`.
pub fn mergesort_worst_case(n: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    let k = u64::BITS - (n - 1).leading_zeros();
    n * k as u64 - (1u64 << k) + 1
}

/// Worst-case comparisons of Mergesort on `n` elements with a buffer of
/// `m`, sorting chunks of `2m` and merging them in one by one.
pub fn ms_buffered_bound(n: u64, m: u64) -> u64 {
    if m == 0 || n <= 4 * m {
        return mergesort_worst_case(n);
    }
    let k = n.div_ceil(2 * m) - 2;
    k * mergesort_worst_case(2 * m) + mergesort_worst_case(n - 2 * m * k) + n * k - m * k * (k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_step_constants() {
        let s = linear_coefficient(&RecurrenceSpec::repeated_step()).unwrap();
        assert!((s.coefficient - 20.0).abs() < 1e-9);
        assert!((s.zeta - 0.78).abs() < 0.01);
    }

    #[test]
    fn recurrence_examples() {
        let s = linear_coefficient(&RecurrenceSpec::new(0.25, 0.25, 0.5)).unwrap();
        assert!((s.coefficient - 1.0).abs() < 1e-12);
        let s = linear_coefficient(&RecurrenceSpec::new(0.5, 0.25, 1.0)).unwrap();
        assert!((s.coefficient - 4.0).abs() < 1e-12);
        // x + x^2 = 1 with x = 2^-ζ
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((s.zeta + golden.log2()).abs() < 1e-6);
        assert!(linear_coefficient(&RecurrenceSpec::new(0.5, 0.5, 1.0)).is_err());
    }

    #[test]
    fn q_examples() {
        assert!((q_coefficient(0.5, 0.0) + 2.0).abs() < 1e-12);
        assert!((q_coefficient(0.5, bmqms_level_cost()) - 13.8).abs() < 0.05);
        assert!((q_coefficient(0.5, mqms_level_cost()) - 4.57).abs() < 0.05);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f(1.0), -0.91);
        assert!((f(2.0) + 0.91).abs() < 1e-12);
        assert!((f(4.0) + 0.66).abs() < 1e-12);
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps(0.0), 0.0);
        let e = eps(0.5);
        assert!((0.0..=EPS_MAX).contains(&e));
        let max = (0..100_000).map(|i| eps(i as f64 / 100_000.0)).fold(0.0, f64::max);
        assert!(max <= EPS_MAX, "{max}");
    }

    #[test]
    fn g_examples() {
        assert!((g(0.5, 2.219695).unwrap() - 1.56780).abs() < 1e-4);
        let t = 11.0 / 5.0;
        assert!((g(1.0 / (5.0 * t), t).unwrap() - 1.57).abs() < 0.01);
        assert!((g(0.5, t).unwrap() - 1.59).abs() < 0.01);
        assert!((g(0.5, 1e12).unwrap() + 0.895).abs() < 1e-6);
        assert!(g(0.6, t).is_err());
        assert!(g(0.01, t).is_err());
    }

    #[test]
    fn theta_opt() {
        let t = find_theta_opt();
        assert!((t - 2.219695).abs() < 1e-4, "{t}");
        assert!((g(0.5, t).unwrap() - g(1.0 / (5.0 * t), t).unwrap()).abs() < 1e-6);
        assert!(t > 2.1 && t < 2.3);
    }

    #[test]
    fn g_maximised_at_half() {
        let t = 11.0 / 5.0;
        let lo = 1.0 / (5.0 * t);
        let top = g(0.5, t).unwrap();
        let mut a = lo;
        while a <= 0.5 {
            assert!(g(a, t).unwrap() <= top + 1e-9, "alpha {a}");
            a += 1e-4;
        }
    }

    #[test]
    fn g_monotonicity() {
        let mut prev = f64::INFINITY;
        let mut t = 1.5;
        while t <= 3.0 {
            let v = g(0.5, t).unwrap();
            assert!(v < prev);
            prev = v;
            t += 0.01;
        }
        let mut prev = f64::NEG_INFINITY;
        let mut t = 2.13;
        while t <= 3.0 {
            let v = g(1.0 / (5.0 * t), t).unwrap();
            assert!(v > prev, "theta {t}");
            prev = v;
            t += 0.01;
        }
    }

    #[test]
    fn mergesort_worst_case_values() {
        let expect = [0, 0, 1, 3, 5, 8, 11, 14, 17];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(mergesort_worst_case(n as u64), e, "n={n}");
        }
        assert_eq!(mergesort_worst_case(1024), 1024 * 10 - 1024 + 1);
    }

    #[test]
    fn buffered_bound() {
        assert_eq!(ms_buffered_bound(64, 16), mergesort_worst_case(64));
        // n = 6m, m = 16: one chunk of 32, remainder 64, one merge of 96.
        assert_eq!(ms_buffered_bound(96, 16), 129 + 321 + 96);
        assert!(ms_buffered_bound(96, 16) >= mergesort_worst_case(96));
    }
}
