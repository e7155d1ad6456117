use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CharCalc, FormalCharacter, ModuleCharacter, Weight};
use crate::Subset;

/// How to choose among incomparable maximal highest weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// `|J|` descending, then `J` lexicographically, then label.
    #[default]
    Canonical,
    /// The canonical order reversed.
    Reversed,
    /// A seeded shuffle of the maxima.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeDiagnostic {
    /// Subtracting `ch E(θ)_J` would make these weights negative.
    MissingWeights {
        theta: FormalCharacter,
        j: Subset,
        missing: Vec<Weight>,
    },
    /// Weights remain but none of them has the form `{θ, w_J}`.
    NoHighestWeight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: BTreeMap<(FormalCharacter, Subset), u64>,
    pub remainder: ModuleCharacter,
    pub diagnostic: Option<DecomposeDiagnostic>,
}

impl Decomposition {
    pub fn is_complete(&self) -> bool {
        self.remainder.is_empty()
    }

    /// Sum of the factor multiplicities.
    pub fn length(&self) -> u64 {
        self.factors.values().sum()
    }

    /// `J ↦ multiplicity` for a single formal character.
    pub fn factors_of(&self, theta: &FormalCharacter) -> BTreeMap<Subset, u64> {
        self.factors
            .iter()
            .filter(|((t, _), _)| t == theta)
            .map(|((_, j), &m)| (*j, m))
            .collect()
    }
}

fn canonical_cmp(a: &(Weight, Subset), b: &(Weight, Subset)) -> Ordering {
    let key = |x: &(Weight, Subset)| (Reverse(x.1.len()), x.1.indices(), x.0.base().clone());
    key(a).cmp(&key(b))
}

impl CharCalc {
    /// Peels off simple characters `ch E(θ)_J` from the top.
    ///
    /// At each step a `⪯`-maximal weight of the form `{θ, w_J}` is chosen and
    /// `ch E(θ)_J` is subtracted as many times as that weight occurs.
    pub fn decompose_character(&self, c: &ModuleCharacter, tie: TieBreak) -> Decomposition {
        let mut rng = match tie {
            TieBreak::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut factors = BTreeMap::new();
        let mut rem = c.clone();
        loop {
            if rem.is_empty() {
                return Decomposition {
                    factors,
                    remainder: rem,
                    diagnostic: None,
                };
            }
            let candidates: Vec<(Weight, Subset)> = rem
                .weights()
                .filter_map(|w| self.highest_weight_subset(w).map(|j| (w.clone(), j)))
                .collect();
            if candidates.is_empty() {
                return Decomposition {
                    factors,
                    remainder: rem,
                    diagnostic: Some(DecomposeDiagnostic::NoHighestWeight),
                };
            }
            let mut maxima: Vec<(Weight, Subset)> = candidates
                .iter()
                .filter(|(a, _)| !candidates.iter().any(|(b, _)| self.weight_lt(a, b)))
                .cloned()
                .collect();
            maxima.sort_by(canonical_cmp);
            match tie {
                TieBreak::Canonical => {}
                TieBreak::Reversed => maxima.reverse(),
                TieBreak::Shuffled(_) => maxima.shuffle(rng.as_mut().expect("seeded")),
            }
            let (top, j) = maxima.swap_remove(0);
            let theta = top.base().clone();
            let k = rem.get(&top);
            let e = self.ch_e(&theta, j).expect("J taken from a highest weight lies in I(theta)");
            match rem.checked_sub(&e, k) {
                Ok(next) => {
                    *factors.entry((theta, j)).or_insert(0) += k;
                    rem = next;
                }
                Err(missing) => {
                    return Decomposition {
                        factors,
                        remainder: rem,
                        diagnostic: Some(DecomposeDiagnostic::MissingWeights { theta, j, missing }),
                    };
                }
            }
        }
    }
}
