//! Bitset representation of chore sets.
//!
//! Chores are 0-indexed. A [`ChoreSet`] holds up to [`MAX_CHORES`] chores in a
//! single `u64`, which is the hard cap on instance size for the library.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Hard upper bound on the number of chores in an instance.
pub const MAX_CHORES: usize = 64;

#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoreSet(u64);

impl ChoreSet {
    pub const EMPTY: ChoreSet = ChoreSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ChoreSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The ground set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_CHORES, "at most {MAX_CHORES} chores are supported");
        if m == MAX_CHORES {
            ChoreSet(u64::MAX)
        } else {
            ChoreSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(chore: usize) -> Self {
        ChoreSet::EMPTY.with(chore)
    }

    /// Lowest chores `{start, .., start+len-1}`.
    pub fn range(start: usize, len: usize) -> Self {
        ChoreSet::full(start + len).difference(ChoreSet::full(start))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, chore: usize) -> bool {
        chore < MAX_CHORES && self.0 & (1u64 << chore) != 0
    }

    pub fn insert(&mut self, chore: usize) -> bool {
        let had = self.contains(chore);
        self.0 |= 1u64 << chore;
        !had
    }

    pub fn remove(&mut self, chore: usize) -> bool {
        let had = self.contains(chore);
        self.0 &= !(1u64 << chore);
        had
    }

    #[must_use]
    pub fn with(self, chore: usize) -> Self {
        ChoreSet(self.0 | (1u64 << chore))
    }

    #[must_use]
    pub fn without(self, chore: usize) -> Self {
        ChoreSet(self.0 & !(1u64 << chore))
    }

    #[must_use]
    pub fn union(self, other: ChoreSet) -> Self {
        ChoreSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: ChoreSet) -> Self {
        ChoreSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: ChoreSet) -> Self {
        ChoreSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ChoreSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ChoreSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest-index chore in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest chore index plus one, i.e. the smallest `m` with `self ⊆ [m]`.
    pub fn span(self) -> usize {
        MAX_CHORES - self.0.leading_zeros() as usize
    }

    /// The `count` lowest-index chores of the set.
    pub fn lowest(self, count: usize) -> ChoreSet {
        self.iter().take(count).collect()
    }

    /// Chores in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, in binary-counter order of the packed bits.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// All subsets of `self` with exactly `k` elements, without visiting the
    /// other subsets.
    pub fn subsets_of_size(self, k: usize) -> Combinations {
        let len = self.len();
        let next = (k <= len).then(|| (1u128 << k) - 1);
        Combinations { elements: self.to_vec(), limit: 1u128 << len, next }
    }

    /// Number of `k`-element subsets, saturating at `u128::MAX`.
    pub fn count_subsets_of_size(self, k: usize) -> u128 {
        let n = self.len() as u128;
        let k = k as u128;
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ChoreSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ChoreSet;

    fn next(&mut self) -> Option<ChoreSet> {
        let cur = self.next?;
        // Carry-propagating increment restricted to the mask bits.
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(ChoreSet(cur))
    }
}

/// Gosper's-hack enumeration of fixed-size subsets, mapped from positions
/// within the parent set back to chore indices.
pub struct Combinations {
    elements: Vec<usize>,
    limit: u128,
    next: Option<u128>,
}

impl Iterator for Combinations {
    type Item = ChoreSet;

    fn next(&mut self) -> Option<ChoreSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        let mut set = ChoreSet::EMPTY;
        let mut bits = cur;
        while bits != 0 {
            let pos = bits.trailing_zeros() as usize;
            set.insert(self.elements[pos]);
            bits &= bits - 1;
        }
        Some(set)
    }
}

impl FromIterator<usize> for ChoreSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ChoreSet::EMPTY;
        for c in iter {
            assert!(c < MAX_CHORES, "chore index {c} exceeds the {MAX_CHORES}-chore cap");
            s.insert(c);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for ChoreSet {
    fn from(chores: [usize; N]) -> Self {
        chores.into_iter().collect()
    }
}

impl fmt::Debug for ChoreSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ChoreSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ChoreSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ChoreSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let chores = Vec::<usize>::deserialize(deserializer)?;
        let mut set = ChoreSet::EMPTY;
        for c in chores {
            if c >= MAX_CHORES {
                return Err(de::Error::custom(format!(
                    "chore index {c} exceeds the {MAX_CHORES}-chore cap"
                )));
            }
            if !set.insert(c) {
                return Err(de::Error::custom(format!("chore {c} listed twice")));
            }
        }
        Ok(set)
    }
}
