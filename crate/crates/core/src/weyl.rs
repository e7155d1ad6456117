//! Weyl group elements, inversion sets, parabolic data and biclosed sets.
//!
//! An element is stored as the permutation it induces on `Φ⁺` (images may be
//! negative roots). Two elements are equal iff their inversion sets agree.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{input, resource, Result};
use crate::rootsystem::{Guard, Root, RootSet, RootSystem};
use crate::Subset;

/// Default ceiling on `|W| · |Φ⁺|` (stored permutation entries).
pub const MAX_TABLE_ENTRIES: u128 = 200_000_000;
/// Default ceiling on `|Φ⁺|` for the biclosed sweep (the F4 size).
pub const MAX_BICLOSED_ROOTS: usize = 24;

#[derive(Clone)]
pub struct WeylElement {
    /// `images[b]` is the index of `w(root b)` for each positive root `b`.
    images: Arc<[u16]>,
    inversions: RootSet,
}

impl WeylElement {
    fn from_images(images: Vec<u16>) -> Self {
        let n = images.len();
        let mut inversions = RootSet::EMPTY;
        for (b, &img) in images.iter().enumerate() {
            if img as usize >= n {
                inversions.insert(b);
            }
        }
        WeylElement {
            images: images.into(),
            inversions,
        }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Self::from_images((0..rs.num_positive() as u16).collect())
    }

    /// The simple reflection `s_i` (0-based `i`).
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        Self::from_images(rs.reflection_table(i)[..rs.num_positive()].to_vec())
    }

    fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the root with index `idx` (negatives at `N..2N`).
    pub fn act_index(&self, idx: usize) -> usize {
        let n = self.n();
        if idx < n {
            self.images[idx] as usize
        } else {
            let img = self.images[idx - n] as usize;
            if img < n {
                img + n
            } else {
                img - n
            }
        }
    }

    /// `Φ_w^-`: positive roots sent to negative roots.
    pub fn inversions(&self) -> RootSet {
        self.inversions
    }

    /// `Φ_w^+ = Φ⁺ ∖ Φ_w^-`.
    pub fn non_inversions(&self) -> RootSet {
        self.inversions.complement(self.n())
    }

    pub fn length(&self) -> usize {
        self.inversions.len()
    }

    pub fn is_identity(&self) -> bool {
        self.inversions.is_empty()
    }

    /// Right descents `{i : w(α_i) ∈ Φ⁻}`; simple root `α_i` has index `i`.
    pub fn descent_set(&self, rank: usize) -> Subset {
        let mut d = Subset::EMPTY;
        for i in 0..rank {
            if self.inversions.contains(i) {
                d = d.with0(i);
            }
        }
        d
    }

    /// Whether `w(α_i)` is positive.
    pub fn keeps_simple_positive(&self, i: usize) -> bool {
        !self.inversions.contains(i)
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let images = other.images.iter().map(|&b| self.act_index(b as usize) as u16).collect();
        Self::from_images(images)
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.n();
        let mut images = vec![0u16; n];
        for b in 0..n {
            let c = self.images[b] as usize;
            if c < n {
                images[c] = b as u16;
            } else {
                images[c - n] = (b + n) as u16;
            }
        }
        Self::from_images(images)
    }

    /// Image of the set `X ⊆ Φ⁺`, or `None` if some root leaves `Φ⁺`.
    pub fn map_positive_set(&self, x: RootSet) -> Option<RootSet> {
        let n = self.n();
        let mut out = RootSet::EMPTY;
        for b in x.iter() {
            let c = self.images[b] as usize;
            if c >= n {
                return None;
            }
            out.insert(c);
        }
        Some(out)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.inversions == other.inversions
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inversions.hash(state);
    }
}

/// By length, then lexicographically on the sorted inversion sets.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.inversions.lex_cmp(other.inversions))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeylElement(inv={:#x}, len={})", self.inversions.0, self.length())
    }
}

/// All elements of `W`, breadth-first from the identity, sorted by [`Ord`].
pub fn enumerate_weyl(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    enumerate_weyl_with(rs, Guard::default())
}

pub fn enumerate_weyl_with(rs: &RootSystem, guard: Guard) -> Result<Vec<WeylElement>> {
    let order = rs.cartan_type().weyl_order();
    if !guard.allow_large && order * rs.num_positive() as u128 > MAX_TABLE_ENTRIES {
        return resource(format!(
            "enumerating |W({})| = {order} elements exceeds the table guard",
            rs.cartan_type()
        ));
    }
    let gens: Vec<WeylElement> = (0..rs.rank()).map(|i| WeylElement::simple(rs, i)).collect();
    let identity = WeylElement::identity(rs);
    let mut seen: HashSet<RootSet> = HashSet::new();
    seen.insert(identity.inversions);
    let mut out = vec![identity];
    let mut k = 0;
    while k < out.len() {
        for g in &gens {
            let next = out[k].compose(g);
            if seen.insert(next.inversions) {
                out.push(next);
            }
        }
        k += 1;
    }
    out.sort();
    Ok(out)
}

/// A biclosed subset of `Φ⁺` with the element `w` such that `X = Φ⁺_w`, if any.
#[derive(Debug, Clone)]
pub struct BiclosedSet {
    pub set: RootSet,
    pub witness: Option<WeylElement>,
}

/// A root system together with its enumerated Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    lookup: HashMap<RootSet, usize>,
    gens: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Result<Self> {
        Self::new_with(rs, Guard::default())
    }

    pub fn new_with(rs: RootSystem, guard: Guard) -> Result<Self> {
        for i in 0..rs.rank() {
            debug_assert_eq!(rs.simple_index(i), i);
        }
        let elements = enumerate_weyl_with(&rs, guard)?;
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.inversions, k))
            .collect();
        let gens = (0..rs.rank()).map(|i| WeylElement::simple(&rs, i)).collect();
        Ok(WeylGroup {
            rs,
            elements,
            lookup,
            gens,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Position of `w` in [`WeylGroup::elements`].
    pub fn position(&self, w: &WeylElement) -> usize {
        self.lookup[&w.inversions]
    }

    pub fn identity(&self) -> WeylElement {
        self.elements[0].clone()
    }

    /// The simple reflection `s_i` (0-based `i`).
    pub fn simple(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    pub fn longest(&self) -> WeylElement {
        self.longest_element(Subset::full(self.rank()))
    }

    /// Product `s_{i_1} s_{i_2} ⋯` of a word of 1-based indices; need not be reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i == 0 || i > self.rank() {
                return input(format!("simple index {i} out of range for {}", self.rs.cartan_type()));
            }
            w = w.compose(&self.gens[i - 1]);
        }
        Ok(w)
    }

    /// A reduced word (1-based), peeling the smallest right descent each step.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..self.rank())
                .find(|&i| !cur.keeps_simple_positive(i))
                .expect("non-identity element has a right descent");
            word.push(i + 1);
            cur = cur.compose(&self.gens[i]);
        }
        word.reverse();
        word
    }

    /// Compact word form such as `s1s2`, or `e` for the identity.
    pub fn word_string(&self, w: &WeylElement) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|i| format!("s{i}")).collect()
    }

    pub fn act(&self, w: &WeylElement, beta: &Root) -> Result<Root> {
        let b = self.rs.require_index(beta)?;
        Ok(self.rs.root(w.act_index(b)).clone())
    }

    /// `(Φ_w^-, Φ_w^+)` as explicit root lists.
    pub fn inversion_set(&self, w: &WeylElement) -> (Vec<Root>, Vec<Root>) {
        (self.rs.roots_of(w.inversions()), self.rs.roots_of(w.non_inversions()))
    }

    /// `𝓡(w) = {i : ℓ(w s_i) < ℓ(w)}`.
    pub fn descent_set(&self, w: &WeylElement) -> Subset {
        w.descent_set(self.rank())
    }

    fn check_subset(&self, j: Subset) -> Result<()> {
        if !j.is_subset(Subset::full(self.rank())) {
            return input(format!("{j} is not a set of simple indices of {}", self.rs.cartan_type()));
        }
        Ok(())
    }

    /// `w_J`, the longest element of `W_J`.
    pub fn longest_element(&self, j: Subset) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = j.iter0().find(|&i| w.keeps_simple_positive(i)) {
            w = w.compose(&self.gens[i]);
        }
        w
    }

    /// `W_J`, generated breadth-first from `{s_j : j ∈ J}`.
    pub fn parabolic_subgroup(&self, j: Subset) -> Vec<WeylElement> {
        let mut seen = HashSet::new();
        let id = self.identity();
        seen.insert(id.inversions);
        let mut out = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for i in j.iter0() {
                let next = out[k].compose(&self.gens[i]);
                if seen.insert(next.inversions) {
                    out.push(next);
                    queue.push_back(out.len() - 1);
                }
            }
        }
        out.sort();
        out
    }

    /// The minimal-length element of the coset `w W_J`.
    pub fn min_coset_rep(&self, w: &WeylElement, j: Subset) -> WeylElement {
        let mut cur = w.clone();
        while let Some(i) = j.iter0().find(|&i| !cur.keeps_simple_positive(i)) {
            cur = cur.compose(&self.gens[i]);
        }
        cur
    }

    pub fn is_min_coset_rep(&self, w: &WeylElement, j: Subset) -> bool {
        j.iter0().all(|i| w.keeps_simple_positive(i))
    }

    /// `X_J = {x : x(α_j) ∈ Φ⁺ for all j ∈ J}`, in group order.
    pub fn min_coset_reps(&self, j: Subset) -> Result<Vec<WeylElement>> {
        self.check_subset(j)?;
        Ok(self
            .elements
            .iter()
            .filter(|w| self.is_min_coset_rep(w, j))
            .cloned()
            .collect())
    }

    /// Every `X ⊆ Φ⁺` with `X` and `Φ⁺ ∖ X` closed, paired with its witness.
    pub fn enumerate_biclosed(&self, guard: Guard) -> Result<Vec<BiclosedSet>> {
        let n = self.rs.num_positive();
        if !guard.allow_large && n > MAX_BICLOSED_ROOTS {
            return resource(format!(
                "biclosed sweep over 2^{n} subsets exceeds the 2^{MAX_BICLOSED_ROOTS} guard"
            ));
        }
        if n > 40 {
            return resource(format!("biclosed sweep over 2^{n} subsets is infeasible"));
        }
        let rs = &self.rs;
        let mut found: Vec<RootSet> = (0..1u64 << n)
            .into_par_iter()
            .map(|m| RootSet(m as u128))
            .filter(|&x| rs.is_closed(x) && rs.is_closed(x.complement(n)))
            .collect();
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(*b)));
        let witnesses: HashMap<RootSet, &WeylElement> =
            self.elements.iter().map(|w| (w.non_inversions(), w)).collect();
        Ok(found
            .into_iter()
            .map(|set| BiclosedSet {
                set,
                witness: witnesses.get(&set).map(|w| (*w).clone()),
            })
            .collect())
    }
}
