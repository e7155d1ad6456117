//! Finite subsets of `{1, ..., n}` stored as bitmasks.
//!
//! The same type indexes simple reflections (`I(θ)`, `J`, `K`) and the
//! vertices of the Boolean lattice underlying the incidence algebra.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest element a [`Subset`] can hold.
pub const MAX_ELEMENT: usize = 32;

/// A subset of `{1, ..., 32}`; bit `i - 1` is set iff `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENT);
        if n == MAX_ELEMENT {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    /// Builds a subset from 1-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i == 0 || i > MAX_ELEMENT {
                return None;
            }
            bits |= 1 << (i - 1);
        }
        Some(Subset(bits))
    }

    /// Membership test for the 0-based position `i`.
    pub fn contains0(self, i: usize) -> bool {
        i < MAX_ELEMENT && self.0 & (1 << i) != 0
    }

    /// Membership test for the 1-based index `i`.
    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.contains0(i - 1)
    }

    pub fn with0(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// 0-based positions in increasing order.
    pub fn iter0(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_ELEMENT).filter(move |&i| bits & (1 << i) != 0)
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        self.iter0().map(|i| i + 1).collect()
    }

    /// Every subset of `self`, ordered by [`Subset::graded_cmp`].
    pub fn subsets(self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.0;
        loop {
            out.push(Subset(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.sort_by(|a, b| a.graded_cmp(b));
        out
    }

    /// Order by cardinality, then lexicographically on the sorted index lists.
    pub fn graded_cmp(&self, other: &Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_cmp(other)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formats as a compact JSON-style array, e.g. `[1,2]`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl std::str::FromStr for Subset {
    type Err = String;

    /// Accepts `[1,2]`, `1,2`, `{1,2}` and the empty forms `[]`, `{}`, ``.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_start_matches(['[', '{'])
            .trim_end_matches([']', '}'])
            .trim();
        if body.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut idx = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            let i: usize = part
                .parse()
                .map_err(|_| format!("bad subset element {part:?}"))?;
            idx.push(i);
        }
        Subset::from_indices(idx).ok_or_else(|| format!("subset element out of range in {s:?}"))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Subset::from_indices(v).ok_or_else(|| serde::de::Error::custom("subset index out of range"))
    }
}
