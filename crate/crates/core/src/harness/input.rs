//! Deterministic input generators.
//!
//! All randomness comes from `Xoshiro256PlusPlus::seed_from_u64(seed)`, so a
//! given `(distribution, n, seed)` yields the same array on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::counter::Counter;
use crate::error::Error;
use crate::primitives::median3_at;
use crate::selection::{partition, EqualSide};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// A uniformly random permutation of `0..n`.
    RandomPerm,
    /// Two ascending runs, the first two elements longer than the second.
    MergeRuns,
    /// Adversarial input for median-of-three Quicksort, see [`gen_input`].
    Mo3Killer,
    AllEqual,
    /// Uniform over `d` distinct values.
    FewDistinct(u32),
}

impl Distribution {
    pub const NAMES: [&'static str; 5] = ["random", "merge", "mo3killer", "equal", "few:D"];
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::RandomPerm => f.write_str("random"),
            Distribution::MergeRuns => f.write_str("merge"),
            Distribution::Mo3Killer => f.write_str("mo3killer"),
            Distribution::AllEqual => f.write_str("equal"),
            Distribution::FewDistinct(d) => write!(f, "few:{d}"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::UnknownDistribution(s.to_owned());
        Ok(match s.to_ascii_lowercase().as_str() {
            "random" => Distribution::RandomPerm,
            "merge" => Distribution::MergeRuns,
            "mo3killer" => Distribution::Mo3Killer,
            "equal" => Distribution::AllEqual,
            other => {
                let d = other.strip_prefix("few:").ok_or_else(bad)?;
                match d.parse() {
                    Ok(d) if d > 0 => Distribution::FewDistinct(d),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InputSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
}

impl InputSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        InputSpec { distribution, n, seed }
    }
}

/// Generates the input described by `spec`.
///
/// `Mo3Killer` is built against [`quicksort_mo3`](crate::quicksort_mo3): for
/// the first `4⌈log₂ n⌉` partitioning steps, the two largest values not yet
/// placed go to the middle and the last position of the current subarray,
/// so the pivot is always its second largest element. Positions are tracked
/// by replaying the partition on slot ids. The remaining slots get the
/// remaining values in random order. For `n = 8` the largest value sits at
/// position 4 and the second largest at position 7.
pub fn gen_input(spec: &InputSpec) -> Vec<u32> {
    let n = spec.n;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.seed);
    match spec.distribution {
        Distribution::RandomPerm => {
            let mut v: Vec<u32> = (0..n as u32).collect();
            v.shuffle(&mut rng);
            v
        }
        Distribution::MergeRuns => {
            let mut v: Vec<u32> = (0..n as u32).collect();
            v.shuffle(&mut rng);
            let first = (n.div_ceil(2) + 1).min(n);
            v[..first].sort_unstable();
            v[first..].sort_unstable();
            v
        }
        Distribution::Mo3Killer => mo3_killer(n, &mut rng),
        Distribution::AllEqual => vec![0; n],
        Distribution::FewDistinct(d) => (0..n).map(|_| rng.random_range(0..d)).collect(),
    }
}

const UNPLACED: u32 = u32::MAX;

fn mo3_killer(n: usize, rng: &mut Xoshiro256PlusPlus) -> Vec<u32> {
    // Unplaced slots compare by a random key below every placed value.
    let mut key: Vec<u32> = (0..n as u32).collect();
    key.shuffle(rng);
    let mut value = vec![UNPLACED; n];
    let mut slots: Vec<u32> = (0..n as u32).collect();
    let steps = 4 * (usize::BITS - n.leading_zeros()) as usize;
    let mut next = n as u32;
    let mut hi = n;
    for _ in 0..steps {
        if hi < 3 {
            break;
        }
        let sub = &mut slots[..hi];
        for at in [hi / 2, hi - 1] {
            next -= 1;
            value[sub[at] as usize] = next;
        }
        let rank = |s: u32| match value[s as usize] {
            UNPLACED => key[s as usize] as u64,
            x => n as u64 + x as u64,
        };
        let mut ctx = Counter::new(|a: &u32, b: &u32| rank(*a) < rank(*b));
        let p = median3_at(sub, 0, hi / 2, hi - 1, &mut ctx);
        hi = partition(sub, p, EqualSide::Right, &mut ctx).pivot_position;
    }
    let mut rest: Vec<u32> = (0..n as u32).filter(|&s| value[s as usize] == UNPLACED).collect();
    rest.sort_unstable_by_key(|&s| key[s as usize]);
    for (x, s) in rest.into_iter().enumerate() {
        value[s as usize] = x as u32;
    }
    value
}

/// Element with a key and `P` bytes of payload; only the key is compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingElement<const P: usize> {
    pub key: u32,
    pub payload: [u8; P],
}

impl<const P: usize> CountingElement<P> {
    pub fn new(key: u32) -> Self {
        CountingElement { key, payload: [key as u8; P] }
    }

    /// The comparator to hand to a [`Counter`](crate::Counter).
    pub fn less(a: &Self, b: &Self) -> bool {
        a.key < b.key
    }
}
