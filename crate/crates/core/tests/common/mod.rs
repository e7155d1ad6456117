//! Brute-force reference computations shared by the integration tests.
//! Only root coordinates and the root indexing come from the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use catx_core::{CartanType, CharCalc, ModuleCharacter, RootSystem, Subset, WeylElement};

/// A Weyl group element as the images of all positive roots, in simple-root
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    images: Vec<Vec<i32>>,
}

pub struct Oracle {
    pub rank: usize,
    pub roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    cartan: Vec<Vec<i32>>,
    pub elems: Vec<Elem>,
    pos: HashMap<Elem, usize>,
    inv_mask: Vec<u128>,
    inverse: Vec<usize>,
    mul: Vec<Vec<usize>>,
}

fn is_pos(v: &[i32]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

/// Key of a weight: label, inversion mask of the coset representative,
/// inversion mask of `v`.
pub type Key = (String, u128, u128);

impl Oracle {
    pub fn new(t: CartanType) -> Self {
        let rs = RootSystem::build(t).unwrap();
        let rank = rs.rank();
        let cartan: Vec<Vec<i32>> = rs.cartan_matrix().to_vec();
        let roots: Vec<Vec<i32>> = rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut o = Oracle {
            rank,
            roots,
            index,
            cartan,
            elems: Vec::new(),
            pos: HashMap::new(),
            inv_mask: Vec::new(),
            inverse: Vec::new(),
            mul: Vec::new(),
        };
        let id = Elem { images: o.roots.clone() };
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(w) = queue.pop_front() {
            for i in 0..rank {
                let next = Elem {
                    images: w.images.iter().map(|b| o.reflect(i, b)).collect(),
                };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            o.elems.push(w);
        }
        o.pos = o.elems.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        o.inv_mask = o
            .elems
            .iter()
            .map(|e| {
                e.images
                    .iter()
                    .enumerate()
                    .filter(|(_, img)| !is_pos(img))
                    .fold(0u128, |m, (k, _)| m | 1 << k)
            })
            .collect();
        let n = o.elems.len();
        o.mul = (0..n)
            .map(|a| (0..n).map(|b| o.compose_raw(a, b)).collect())
            .collect();
        o.inverse = (0..n).map(|a| (0..n).find(|&b| o.mul[a][b] == 0).unwrap()).collect();
        o
    }

    /// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i`.
    fn reflect(&self, i: usize, b: &[i32]) -> Vec<i32> {
        let pairing: i32 = (0..self.rank).map(|j| b[j] * self.cartan[i][j]).sum();
        let mut out = b.to_vec();
        out[i] -= pairing;
        out
    }

    fn apply(&self, e: usize, b: &[i32]) -> Vec<i32> {
        let mut out = vec![0; self.rank];
        for (j, &c) in b.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut unit = vec![0; self.rank];
            unit[j] = 1;
            let img = &self.elems[e].images[self.index[&unit]];
            for k in 0..self.rank {
                out[k] += c * img[k];
            }
        }
        out
    }

    fn compose_raw(&self, a: usize, b: usize) -> usize {
        let images = self.elems[b].images.iter().map(|r| self.apply(a, r)).collect();
        self.pos[&Elem { images }]
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.inv_mask[a].count_ones() as usize
    }

    pub fn inversions(&self, a: usize) -> u128 {
        self.inv_mask[a]
    }

    pub fn positive_mask(&self) -> u128 {
        (1u128 << self.roots.len()) - 1
    }

    pub fn non_inversions(&self, a: usize) -> u128 {
        self.positive_mask() & !self.inv_mask[a]
    }

    pub fn simple(&self, i: usize) -> usize {
        let mut unit = vec![0; self.rank];
        unit[i] = 1;
        (0..self.order())
            .find(|&e| self.length(e) == 1 && !is_pos(&self.apply(e, &unit)))
            .unwrap()
    }

    /// `w(α_i) > 0`.
    pub fn keeps(&self, w: usize, i: usize) -> bool {
        let mut unit = vec![0; self.rank];
        unit[i] = 1;
        is_pos(&self.apply(w, &unit))
    }

    pub fn descents(&self, w: usize) -> Subset {
        Subset::from_indices((1..=self.rank).filter(|&i| !self.keeps(w, i - 1))).unwrap()
    }

    /// The subgroup generated by `s_j`, `j ∈ J`, by closure.
    pub fn parabolic(&self, j: Subset) -> Vec<usize> {
        let gens: Vec<usize> = j.iter0().map(|i| self.simple(i)).collect();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let w = out[k];
            for &g in &gens {
                let x = self.mul(w, g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            k += 1;
        }
        out
    }

    pub fn longest(&self, j: Subset) -> usize {
        *self.parabolic(j).iter().max_by_key(|&&w| self.length(w)).unwrap()
    }

    /// `X_J`: elements of minimal length in their coset `w W_J`.
    pub fn min_reps(&self, j: Subset) -> Vec<usize> {
        let p = self.parabolic(j);
        (0..self.order())
            .filter(|&w| p.iter().all(|&u| self.length(self.mul(w, u)) >= self.length(w)))
            .collect()
    }

    pub fn canonical(&self, w: usize, itheta: Subset) -> usize {
        *self
            .parabolic(itheta)
            .iter()
            .map(|&u| self.mul(w, u))
            .collect::<Vec<_>>()
            .iter()
            .min_by_key(|&&x| self.length(x))
            .unwrap()
    }

    pub fn z_set(&self, itheta: Subset, rank_set: Subset, j: Subset) -> Vec<usize> {
        let allowed = j.union(rank_set.difference(itheta));
        let wj = self.longest(j);
        self.min_reps(j)
            .into_iter()
            .filter(|&w| self.descents(self.mul(w, wj)).is_subset(allowed))
            .collect()
    }

    fn key(&self, label: &str, itheta: Subset, w: usize, v: usize) -> Key {
        (label.to_string(), self.inv_mask[self.canonical(w, itheta)], self.inv_mask[v])
    }

    fn tally(keys: impl IntoIterator<Item = Key>) -> BTreeMap<Key, u64> {
        let mut out = BTreeMap::new();
        for k in keys {
            *out.entry(k).or_insert(0) += 1;
        }
        out
    }

    pub fn ch_m(&self, label: &str, itheta: Subset, j: Subset) -> BTreeMap<Key, u64> {
        let wj = self.longest(j);
        Self::tally(
            self.min_reps(j)
                .into_iter()
                .map(|w| self.key(label, itheta, w, self.mul(wj, self.inv(w)))),
        )
    }

    pub fn ch_e(&self, label: &str, itheta: Subset, j: Subset) -> BTreeMap<Key, u64> {
        let wj = self.longest(j);
        let full = Subset::full(self.rank);
        Self::tally(
            self.z_set(itheta, full, j)
                .into_iter()
                .map(|w| self.key(label, itheta, w, self.mul(wj, self.inv(w)))),
        )
    }

    /// Weights `{θ^w, Φ⁺_{w⁻¹}}` over `w ∈ X_{I(θ)∖J}`.
    pub fn ch_nabla(&self, label: &str, itheta: Subset, j: Subset) -> BTreeMap<Key, u64> {
        Self::tally(
            self.min_reps(itheta.difference(j))
                .into_iter()
                .map(|w| self.key(label, itheta, w, self.inv(w))),
        )
    }

    /// Index of the element with the given inversion mask.
    pub fn by_mask(&self, mask: u128) -> usize {
        self.inv_mask.iter().position(|&m| m == mask).unwrap()
    }

    /// `x⁻¹(S)` as a mask, or `None` if some image is not positive.
    pub fn preimage(&self, x: usize, s: u128) -> Option<u128> {
        let xi = self.inv(x);
        let mut out = 0u128;
        for k in 0..self.roots.len() {
            if s >> k & 1 == 1 {
                let img = self.apply(xi, &self.roots[k]);
                if !is_pos(&img) {
                    return None;
                }
                out |= 1 << self.index[&img];
            }
        }
        Some(out)
    }

    /// `a ≺ b` by search over all `x ∈ W`.
    pub fn weight_lt(&self, itheta: Subset, a: &Key, b: &Key) -> bool {
        if a.0 != b.0 {
            return false;
        }
        let (wa, va) = (self.by_mask(a.1), self.by_mask(a.2));
        let (wb, vb) = (self.by_mask(b.1), self.by_mask(b.2));
        let (xa, xb) = (self.non_inversions(va), self.non_inversions(vb));
        (0..self.order()).any(|x| {
            self.canonical(self.mul(x, wb), itheta) == wa
                && matches!(self.preimage(x, xa), Some(img) if img & !xb == 0 && img != xb)
        })
    }

    /// Biclosed subsets of `Φ⁺` by testing every subset.
    pub fn biclosed(&self) -> Vec<u128> {
        let n = self.roots.len();
        let mut sums = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let s: Vec<i32> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&c) = self.index.get(&s) {
                    sums.push((a, b, c));
                }
            }
        }
        let closed = |m: u128| sums.iter().all(|&(a, b, c)| m >> a & 1 == 0 || m >> b & 1 == 0 || m >> c & 1 == 1);
        let full = self.positive_mask();
        (0..1u128 << n).filter(|&m| closed(m) && closed(full & !m)).collect()
    }
}

pub fn lib_key(w: (&catx_core::Weight, u64)) -> (Key, u64) {
    let (w, m) = w;
    (
        (w.base().label().to_string(), w.tchar.coset_rep().inversions().0, w.v.inversions().0),
        m,
    )
}

pub fn lib_tally(c: &ModuleCharacter) -> BTreeMap<Key, u64> {
    c.iter().map(lib_key).collect()
}

pub fn lib_elem_mask(w: &WeylElement) -> u128 {
    w.inversions().0
}

pub fn calc(t: &str) -> CharCalc {
    CharCalc::for_type(t.parse().unwrap()).unwrap()
}

pub fn label_for(itheta: Subset) -> String {
    format!("theta{itheta}")
}

/// Types of rank at most three.
pub const SWEEP_TYPES: [&str; 8] = ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3"];
