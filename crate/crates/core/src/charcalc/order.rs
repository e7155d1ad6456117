use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharCalc, FormalCharacter, NablaConvention, Weight};
use crate::error::Result;
use crate::Subset;

impl CharCalc {
    /// `a ≺ b`: some `x` with `θ_a = θ_b^x` has `x⁻¹(Φ⁺_{v_a}) ⊊ Φ⁺_{v_b}`.
    ///
    /// The admissible `x` are exactly `w_a · u · w_b⁻¹` for `u ∈ W_{I(θ)}`.
    pub fn weight_lt(&self, a: &Weight, b: &Weight) -> bool {
        if a.base() != b.base() {
            return false;
        }
        let xa = a.v.non_inversions();
        let xb = b.v.non_inversions();
        if xa.len() >= xb.len() {
            return false;
        }
        let wa = a.tchar.coset_rep();
        let wb_inv = b.tchar.coset_rep().inverse();
        self.parabolic(a.base().itheta()).iter().any(|u| {
            let x = wa.compose(u).compose(&wb_inv);
            matches!(x.inverse().map_positive_set(xa), Some(img) if img.is_subset(xb) && img != xb)
        })
    }

    /// `a ⪯ b`.
    pub fn weight_le(&self, a: &Weight, b: &Weight) -> bool {
        a == b || self.weight_lt(a, b)
    }
}

/// `(θ_1, J_1) < (θ_2, J_2)` iff `θ_1 = θ_2` and `J_1 ⊋ J_2`.
pub fn omega0_lt(a: (&FormalCharacter, Subset), b: (&FormalCharacter, Subset)) -> bool {
    a.0 == b.0 && b.1.is_proper_subset(a.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    Reflexive(Weight),
    Intransitive(Weight, Weight, Weight),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderAxiomReport {
    pub weights: usize,
    /// Every triple was examined rather than a sample.
    pub exhaustive: bool,
    pub triples_checked: u64,
    /// Triples `a ≺ b ≺ c` among those examined.
    pub chains: u64,
    pub violation: Option<OrderViolation>,
}

impl CharCalc {
    /// Every distinct weight of `M(θ)_J`, `E(θ)_J`, `∇(θ)_J` with one formal
    /// character `theta[I]` per `I(θ) ⊆ I` and every `J ⊆ I(θ)`.
    pub fn sweep_weights(&self, conv: NablaConvention) -> Result<Vec<Weight>> {
        let mut all = BTreeSet::new();
        for itheta in self.index_set().subsets() {
            let theta = self.formal(&format!("theta{itheta}"), itheta)?;
            for j in itheta.subsets() {
                for ch in [self.ch_m(&theta, j)?, self.ch_e(&theta, j)?, self.ch_nabla(&theta, j, conv)?] {
                    all.extend(ch.weights().cloned());
                }
            }
        }
        Ok(all.into_iter().collect())
    }

    /// Irreflexivity and transitivity of `≺` on `weights`: every triple when
    /// `sample` is `None`, otherwise that many seeded random triples drawn
    /// within a single formal character.
    pub fn check_order_axioms(&self, weights: &[Weight], sample: Option<(usize, u64)>) -> OrderAxiomReport {
        let n = weights.len();
        let mut report = OrderAxiomReport {
            weights: n,
            exhaustive: sample.is_none(),
            triples_checked: 0,
            chains: 0,
            violation: None,
        };
        if let Some(w) = weights.iter().find(|w| self.weight_lt(w, w)) {
            report.violation = Some(OrderViolation::Reflexive(w.clone()));
            return report;
        }
        match sample {
            None => {
                let rel: Vec<Vec<bool>> = weights
                    .iter()
                    .map(|a| weights.iter().map(|b| self.weight_lt(a, b)).collect())
                    .collect();
                report.triples_checked = (n as u64).pow(3);
                for a in 0..n {
                    for b in (0..n).filter(|&b| rel[a][b]) {
                        for c in (0..n).filter(|&c| rel[b][c]) {
                            report.chains += 1;
                            if !rel[a][c] {
                                report.violation = Some(OrderViolation::Intransitive(
                                    weights[a].clone(),
                                    weights[b].clone(),
                                    weights[c].clone(),
                                ));
                                return report;
                            }
                        }
                    }
                }
            }
            Some((count, seed)) => {
                let mut groups: Vec<Vec<&Weight>> = Vec::new();
                for w in weights {
                    match groups.last_mut() {
                        Some(g) if g[0].base() == w.base() => g.push(w),
                        _ => groups.push(vec![w]),
                    }
                }
                if groups.is_empty() {
                    return report;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let g = &groups[rng.gen_range(0..groups.len())];
                    let pick = |rng: &mut ChaCha8Rng| g[rng.gen_range(0..g.len())];
                    let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    report.triples_checked += 1;
                    if self.weight_lt(a, b) && self.weight_lt(b, c) {
                        report.chains += 1;
                        if !self.weight_lt(a, c) {
                            report.violation = Some(OrderViolation::Intransitive(a.clone(), b.clone(), c.clone()));
                            return report;
                        }
                    }
                }
            }
        }
        report
    }
}
