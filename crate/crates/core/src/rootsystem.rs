//! Finite crystallographic root systems built from Cartan data.
//!
//! Roots are integer vectors in the basis of simple roots. Every root gets a
//! stable index: positive roots occupy `0..N` in (height, descending lex)
//! order, and the negative of root `i` sits at `N + i`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, resource, Error, Result};

/// Default ceiling on the rank accepted by [`RootSystem::build`].
pub const MAX_RANK: usize = 8;
/// Default ceiling on `|W|` accepted by [`RootSystem::build`].
pub const MAX_WEYL_ORDER: u128 = 10_000_000;
/// Hard ceiling on `|Φ⁺|`, imposed by the 128-bit [`RootSet`] representation.
pub const MAX_POSITIVE_ROOTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan–Killing type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return input(format!("no root system of type {family:?}{rank}"));
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Closed-form `|Φ⁺|`.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// `|W|` as the product of the degrees of the basic invariants.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Cartan matrix with `C[i][j] = ⟨α_j, α_i^∨⟩` (0-based, Bourbaki labelling).
    ///
    /// With this convention `s_i(β) = β − (Σ_j β_j C[i][j]) α_i`.
    pub fn cartan_matrix(self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0i32; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
                    if j < n {
                        link(i, j);
                    }
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // α_n short
            Family::B => c[n - 1][n - 2] = -2,
            // α_n long
            Family::C => c[n - 2][n - 1] = -2,
            Family::F => c[2][1] = -2,
            // α_1 short
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `A1`..`A8`, `B2`..`B8`, `C2`..`C8`, `D4`..`D8`, `E6`..`E8`,
    /// `F4`, `G2`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return input(format!("unknown Cartan type {s:?}")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Input(format!("unknown Cartan type {s:?}")))?;
        if rank > MAX_RANK {
            return input(format!("Cartan type {s:?} exceeds rank {MAX_RANK}"));
        }
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A root written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    coords: Vec<i32>,
}

impl Root {
    /// Rejects the zero vector and vectors with mixed signs.
    pub fn new(coords: Vec<i32>) -> Result<Self> {
        let pos = coords.iter().all(|&c| c >= 0);
        let neg = coords.iter().all(|&c| c <= 0);
        if coords.iter().all(|&c| c == 0) {
            return input("the zero vector is not a root");
        }
        if !pos && !neg {
            return input(format!("root {coords:?} has mixed signs"));
        }
        Ok(Root { coords })
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Root {
    /// Writes e.g. `3a1+2a2` or `-a2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_positive() { "" } else { "-" };
        f.write_str(sign)?;
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            let c = c.abs();
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        Ok(())
    }
}

/// A subset of `Φ⁺`, bit `i` standing for positive root `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn full(n: usize) -> Self {
        if n == 128 {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> RootSet {
        RootSet(!self.0 & RootSet::full(n).0)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn lex_cmp(self, other: RootSet) -> std::cmp::Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

/// Lifts the default rank and group-order guards.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Guard {
    pub allow_large: bool,
}

/// A root system `Φ` with a fixed positive system and root indexing.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan_matrix: Vec<Vec<i32>>,
    /// All roots: positives first, then their negatives in the same order.
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    /// `reflections[i][r]` is the index of `s_i(root r)`.
    reflections: Vec<Vec<u16>>,
    /// Triples `(a, b, c)` of positive indices with `a < b` and `root a + root b = root c`.
    sums: Vec<(u16, u16, u16)>,
}

impl RootSystem {
    /// Builds `Φ` under the default guards (rank ≤ 8, `|W|` ≤ 10⁷).
    pub fn build(t: CartanType) -> Result<Self> {
        Self::build_with(t, Guard::default())
    }

    pub fn build_with(t: CartanType, guard: Guard) -> Result<Self> {
        if !guard.allow_large {
            if t.rank() > MAX_RANK {
                return resource(format!("rank of {t} exceeds {MAX_RANK}"));
            }
            if t.weyl_order() > MAX_WEYL_ORDER {
                return resource(format!(
                    "|W({t})| = {} exceeds {MAX_WEYL_ORDER}",
                    t.weyl_order()
                ));
            }
        }
        if t.positive_root_count() > MAX_POSITIVE_ROOTS {
            return resource(format!("{t} has more than {MAX_POSITIVE_ROOTS} positive roots"));
        }
        let rank = t.rank();
        let cartan_matrix = t.cartan_matrix();

        // Closure of the simple roots under simple reflections, staying in Φ⁺.
        let mut positive: Vec<Vec<i32>> = (0..rank).map(|i| Root::simple(rank, i).coords).collect();
        let mut seen: HashMap<Vec<i32>, ()> = positive.iter().map(|r| (r.clone(), ())).collect();
        let mut k = 0;
        while k < positive.len() {
            let beta = positive[k].clone();
            for i in 0..rank {
                let image = reflect_coords(&cartan_matrix, i, &beta);
                if image.iter().all(|&c| c >= 0) && !seen.contains_key(&image) {
                    seen.insert(image.clone(), ());
                    positive.push(image);
                }
            }
            k += 1;
        }
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n = positive.len();
        debug_assert_eq!(n, t.positive_root_count());

        let mut roots: Vec<Root> = positive.iter().map(|c| Root { coords: c.clone() }).collect();
        roots.extend(positive.iter().map(|c| Root { coords: c.iter().map(|x| -x).collect() }));
        let index: HashMap<Vec<i32>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();

        let reflections = (0..rank)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let image = reflect_coords(&cartan_matrix, i, &r.coords);
                        index[&image] as u16
                    })
                    .collect()
            })
            .collect();

        let mut sums = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let s: Vec<i32> = roots[a].coords.iter().zip(&roots[b].coords).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&s) {
                    sums.push((a as u16, b as u16, c as u16));
                }
            }
        }

        Ok(RootSystem {
            cartan_type: t,
            cartan_matrix,
            roots,
            index,
            reflections,
            sums,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan_matrix
    }

    /// `|Φ⁺|`.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    /// Root by index (negatives at `N..2N`).
    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.index.get(&root.coords).copied()
    }

    pub(crate) fn require_index(&self, root: &Root) -> Result<usize> {
        if root.coords.len() != self.rank() {
            return input(format!("{root} has the wrong length for {}", self.cartan_type));
        }
        self.index_of(root)
            .ok_or_else(|| Error::Input(format!("{root} is not a root of {}", self.cartan_type)))
    }

    pub fn negate_index(&self, idx: usize) -> usize {
        let n = self.num_positive();
        if idx < n {
            idx + n
        } else {
            idx - n
        }
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.num_positive()
    }

    /// Index of simple root `α_i` (0-based `i`).
    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&Root::simple(self.rank(), i).coords]
    }

    pub(crate) fn reflection_table(&self, i: usize) -> &[u16] {
        &self.reflections[i]
    }

    /// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` for the 0-based simple index `i`.
    pub fn reflect_root(&self, i: usize, beta: &Root) -> Result<Root> {
        if i >= self.rank() {
            return input(format!("simple index {} out of range", i + 1));
        }
        let b = self.require_index(beta)?;
        Ok(self.roots[self.reflections[i][b] as usize].clone())
    }

    /// All `(m, n)` with `m, n > 0` and `mα + nβ ∈ Φ⁺`.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<Vec<(u32, u32)>> {
        let a = self.require_index(alpha)?;
        let b = self.require_index(beta)?;
        if !self.is_positive_index(a) || !self.is_positive_index(b) {
            return input("root strings are taken between positive roots");
        }
        if a == b {
            return input("root strings need two distinct roots");
        }
        let max_height = self.roots[self.num_positive() - 1].height();
        let (ha, hb) = (alpha.height(), beta.height());
        let mut out = Vec::new();
        let mut m = 1;
        while m * ha + hb <= max_height {
            let mut n = 1;
            while m * ha + n * hb <= max_height {
                let coords: Vec<i32> = alpha
                    .coords
                    .iter()
                    .zip(&beta.coords)
                    .map(|(x, y)| m * x + n * y)
                    .collect();
                if self.index.contains_key(&coords) {
                    out.push((m as u32, n as u32));
                }
                n += 1;
            }
            m += 1;
        }
        Ok(out)
    }

    /// Converts a list of positive roots into a [`RootSet`].
    pub fn root_set(&self, roots: &[Root]) -> Result<RootSet> {
        let mut set = RootSet::EMPTY;
        for r in roots {
            let i = self.require_index(r)?;
            if !self.is_positive_index(i) {
                return input(format!("{r} is not a positive root"));
            }
            set.insert(i);
        }
        Ok(set)
    }

    pub fn roots_of(&self, set: RootSet) -> Vec<Root> {
        set.iter().map(|i| self.roots[i].clone()).collect()
    }

    /// Whether `X ⊆ Φ⁺` is closed: `α, β ∈ X` and `α + β ∈ Φ` force `α + β ∈ X`.
    pub fn is_closed_subset(&self, x: &[Root]) -> Result<bool> {
        Ok(self.is_closed(self.root_set(x)?))
    }

    pub fn is_closed(&self, x: RootSet) -> bool {
        self.sums
            .iter()
            .all(|&(a, b, c)| !(x.contains(a as usize) && x.contains(b as usize)) || x.contains(c as usize))
    }

    /// `Φ⁺ ∩ Φ_J` for a set of 0-based simple indices.
    pub fn parabolic_positive(&self, j: crate::Subset) -> RootSet {
        let mut set = RootSet::EMPTY;
        for (i, r) in self.positive_roots().iter().enumerate() {
            if r.coords.iter().enumerate().all(|(k, &c)| c == 0 || j.contains0(k)) {
                set.insert(i);
            }
        }
        set
    }
}

fn reflect_coords(cartan: &[Vec<i32>], i: usize, beta: &[i32]) -> Vec<i32> {
    let pairing: i32 = beta.iter().zip(&cartan[i]).map(|(b, c)| b * c).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    fn root(c: &[i32]) -> Root {
        Root::new(c.to_vec()).unwrap()
    }

    #[test]
    fn a2_has_three_positive_roots() {
        let a2 = rs("A2");
        let shown: Vec<String> = a2.positive_roots().iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["a1", "a2", "a1+a2"]);
    }

    #[test]
    fn g2_contains_long_roots() {
        let g2 = rs("G2");
        assert_eq!(g2.num_positive(), 6);
        assert!(g2.index_of(&root(&[3, 1])).is_some());
        assert!(g2.index_of(&root(&[3, 2])).is_some());
        assert!(g2.index_of(&root(&[2, 1])).is_some());
    }

    #[test]
    fn counts_match_closed_forms() {
        for s in ["A1", "A4", "B3", "C4", "D4", "D5", "F4", "G2", "E6", "E7"] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(rs(s).num_positive(), t.positive_root_count(), "{s}");
        }
        assert_eq!(rs("B3").num_positive(), 9);
    }

    #[test]
    fn e8_needs_override() {
        let t: CartanType = "E8".parse().unwrap();
        assert!(matches!(RootSystem::build(t), Err(Error::Resource(_))));
        let e8 = RootSystem::build_with(t, Guard { allow_large: true }).unwrap();
        assert_eq!(e8.num_positive(), 120);
    }

    #[test]
    fn invalid_types_are_rejected() {
        for s in ["Z9", "B1", "D3", "E5", "F3", "G3", "A0", "A9", "", "A"] {
            assert!(s.parse::<CartanType>().is_err(), "{s}");
        }
        assert_eq!("g2".parse::<CartanType>().unwrap().to_string(), "G2");
        assert!(CartanType::new(Family::A, 12).is_ok());
    }

    #[test]
    fn reflections() {
        let g2 = rs("G2");
        assert_eq!(g2.reflect_root(0, &root(&[0, 1])).unwrap(), root(&[3, 1]));
        assert_eq!(g2.reflect_root(1, &root(&[1, 0])).unwrap(), root(&[1, 1]));
        let a2 = rs("A2");
        assert_eq!(a2.reflect_root(0, &root(&[1, 0])).unwrap(), root(&[-1, 0]));
        assert_eq!(a2.reflect_root(0, &root(&[0, 1])).unwrap(), root(&[1, 1]));
        assert!(a2.reflect_root(0, &root(&[2, 1])).is_err());
        assert!(a2.reflect_root(5, &root(&[1, 0])).is_err());
    }

    #[test]
    fn reflections_are_involutions() {
        for s in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let r = rs(s);
            for i in 0..r.rank() {
                let t = r.reflection_table(i);
                for (k, &img) in t.iter().enumerate() {
                    assert_eq!(t[img as usize] as usize, k);
                }
            }
        }
    }

    #[test]
    fn root_strings() {
        let a2 = rs("A2");
        assert_eq!(a2.root_string(&root(&[1, 0]), &root(&[0, 1])).unwrap(), vec![(1, 1)]);
        assert!(a2.root_string(&root(&[1, 0]), &root(&[1, 1])).unwrap().is_empty());
        let g2 = rs("G2");
        assert_eq!(
            g2.root_string(&root(&[1, 0]), &root(&[0, 1])).unwrap(),
            vec![(1, 1), (2, 1), (3, 1), (3, 2)]
        );
        assert!(a2.root_string(&root(&[1, 0]), &root(&[1, 0])).is_err());
        assert!(a2.root_string(&root(&[-1, 0]), &root(&[0, 1])).is_err());
    }

    #[test]
    fn closed_subsets() {
        let a2 = rs("A2");
        assert!(a2.is_closed_subset(&[root(&[1, 0]), root(&[1, 1])]).unwrap());
        assert!(!a2.is_closed_subset(&[root(&[1, 0]), root(&[0, 1])]).unwrap());
        assert!(a2.is_closed_subset(&[]).unwrap());
        assert!(a2.is_closed_subset(&[root(&[-1, 0])]).is_err());
    }

    #[test]
    fn roots_reject_mixed_signs() {
        assert!(Root::new(vec![1, -1]).is_err());
        assert!(Root::new(vec![0, 0]).is_err());
    }
}
