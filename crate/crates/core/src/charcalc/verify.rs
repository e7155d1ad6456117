use std::collections::{BTreeMap, HashSet};

use super::{CharCalc, FormalCharacter, ModuleCharacter, NablaConvention, TieBreak, Weight, STABILIZER_MODEL};
use crate::error::Result;
use crate::rootsystem::CartanType;
use crate::weyl::WeylElement;
use crate::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiltrationCheckKind {
    /// `ch ∇(θ)_J = Σ_{K⊆J} ch E(θ)_K`.
    NablaIdentity,
    /// `|X_{J'}| = Σ_{K⊆J} |Z_K(θ)|`.
    Counting,
    /// `∇(θ)_J` has the factors `E(θ)_K`, `K ⊆ J`, once each.
    NablaFactors,
    /// `M(θ)_J` has the factors `E(θ)_K`, `J ⊆ K ⊆ I(θ)`, once each.
    ProjectiveFactors,
}

impl FiltrationCheckKind {
    pub fn name(self) -> &'static str {
        match self {
            FiltrationCheckKind::NablaIdentity => "nabla-identity",
            FiltrationCheckKind::Counting => "counting",
            FiltrationCheckKind::NablaFactors => "nabla-factors",
            FiltrationCheckKind::ProjectiveFactors => "projective-factors",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// Weights with non-zero `lhs − rhs`.
    Weights(Vec<(Weight, i64)>),
    Counts { lhs: u64, rhs: u64 },
    Factors {
        expected: Vec<Subset>,
        found: Vec<(Subset, u64)>,
        remainder: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationCheck {
    pub kind: FiltrationCheckKind,
    pub j: Subset,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub cartan_type: CartanType,
    pub theta: FormalCharacter,
    pub stabilizer_model: &'static str,
    pub convention: NablaConvention,
    pub checks: Vec<FiltrationCheck>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FiltrationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// How the successive property is read; the two multiplications differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuccessiveReading {
    /// `v < sv < rsv`, predicting the weight attached to `sv`.
    Left,
    /// `v < vs < vsr`, predicting the weight attached to `vs`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessiveViolation {
    pub v: WeylElement,
    pub s: usize,
    pub r: usize,
}

fn factor_check(
    kind: FiltrationCheckKind,
    j: Subset,
    expected: Vec<Subset>,
    found: BTreeMap<Subset, u64>,
    remainder: u64,
) -> FiltrationCheck {
    let pass = remainder == 0 && found.len() == expected.len() && expected.iter().all(|k| found.get(k) == Some(&1));
    FiltrationCheck {
        kind,
        j,
        pass,
        counterexample: (!pass).then(|| Counterexample::Factors {
            expected,
            found: found.into_iter().collect(),
            remainder,
        }),
    }
}

impl CharCalc {
    /// Runs the filtration and multiplicity checks for every `J ⊆ I(θ)`.
    pub fn verify_filtration(&self, theta: &FormalCharacter, conv: NablaConvention) -> Result<FiltrationReport> {
        let itheta = theta.itheta();
        let mut checks = Vec::new();
        for j in itheta.subsets() {
            let nabla = self.ch_nabla(theta, j, conv)?;
            let mut sum = ModuleCharacter::new();
            let mut z_total = 0u64;
            for k in j.subsets() {
                sum.add_all(&self.ch_e(theta, k)?)?;
                z_total += self.z_set(theta, k)?.len() as u64;
            }
            let diff = nabla.difference(&sum);
            checks.push(FiltrationCheck {
                kind: FiltrationCheckKind::NablaIdentity,
                j,
                pass: diff.is_empty(),
                counterexample: (!diff.is_empty()).then_some(Counterexample::Weights(diff)),
            });

            let x_len = self.group().min_coset_reps(self.jprime(theta, j, conv.jprime))?.len() as u64;
            checks.push(FiltrationCheck {
                kind: FiltrationCheckKind::Counting,
                j,
                pass: x_len == z_total,
                counterexample: (x_len != z_total).then_some(Counterexample::Counts {
                    lhs: x_len,
                    rhs: z_total,
                }),
            });

            let d = self.decompose_character(&nabla, TieBreak::Canonical);
            checks.push(factor_check(
                FiltrationCheckKind::NablaFactors,
                j,
                j.subsets(),
                d.factors_of(theta),
                d.remainder.total(),
            ));

            let d = self.decompose_character(&self.ch_m(theta, j)?, TieBreak::Canonical);
            let above: Vec<Subset> = itheta.subsets().into_iter().filter(|k| j.is_subset(*k)).collect();
            checks.push(factor_check(
                FiltrationCheckKind::ProjectiveFactors,
                j,
                above,
                d.factors_of(theta),
                d.remainder.total(),
            ));
        }
        checks.sort_by(|a, b| a.j.cmp(&b.j).then(a.kind.cmp(&b.kind)));
        Ok(FiltrationReport {
            cartan_type: self.cartan_type(),
            theta: theta.clone(),
            stabilizer_model: STABILIZER_MODEL,
            convention: conv,
            checks,
        })
    }

    /// Diagnostic only: instances where the successive property, read as
    /// `reading`, predicts a weight of `c` that is absent. Weights of `c` are
    /// read as `{θ^x, w_J x⁻¹}`.
    pub fn successive_violations(
        &self,
        theta: &FormalCharacter,
        j: Subset,
        c: &ModuleCharacter,
        reading: SuccessiveReading,
    ) -> Result<Vec<SuccessiveViolation>> {
        let wj = self.longest(j);
        let attached = |x: &WeylElement| self.weight(theta, x, wj.compose(&x.inverse()));
        let present: HashSet<WeylElement> = self
            .group()
            .elements()
            .iter()
            .filter(|x| c.get(&attached(x)) > 0)
            .cloned()
            .collect();
        let gens: Vec<&WeylElement> = (0..self.rank()).map(|i| self.group().simple(i)).collect();
        let mut out = Vec::new();
        let mut vs: Vec<&WeylElement> = present.iter().collect();
        vs.sort();
        for v in vs {
            for (s, gs) in gens.iter().enumerate() {
                let mid = match reading {
                    SuccessiveReading::Left => gs.compose(v),
                    SuccessiveReading::Right => v.compose(gs),
                };
                if mid.length() <= v.length() {
                    continue;
                }
                for (r, gr) in gens.iter().enumerate() {
                    let w = match reading {
                        SuccessiveReading::Left => gr.compose(&mid),
                        SuccessiveReading::Right => mid.compose(gr),
                    };
                    if w.length() > mid.length() && present.contains(&w) && c.get(&attached(&mid)) == 0 {
                        out.push(SuccessiveViolation { v: v.clone(), s: s + 1, r: r + 1 });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::calc;
    use super::super::{JPrime, NablaWeights};
    use super::*;

    fn set(idx: &[usize]) -> Subset {
        Subset::from_indices(idx.iter().copied()).unwrap()
    }

    #[test]
    fn a2_trivial_passes() {
        let c = calc("A2");
        let t = c.formal("t", set(&[1, 2])).unwrap();
        let r = c.verify_filtration(&t, NablaConvention::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 16);
    }

    #[test]
    fn rejected_jprime_convention_fails_counting() {
        let c = calc("A2");
        let t = c.formal("t", set(&[1])).unwrap();
        let conv = NablaConvention {
            jprime: JPrime::IMinusJ,
            weights: NablaWeights::Inverse,
        };
        let r = c.verify_filtration(&t, conv).unwrap();
        let bad = r
            .failures()
            .find(|f| f.kind == FiltrationCheckKind::Counting && f.j == set(&[1]))
            .unwrap();
        assert_eq!(bad.counterexample, Some(Counterexample::Counts { lhs: 3, rhs: 6 }));
    }

    #[test]
    fn successive_property_on_standard_modules() {
        let c = calc("A2");
        let t = c.formal("t", set(&[1, 2])).unwrap();
        let m = c.ch_m(&t, Subset::EMPTY).unwrap();
        for reading in [SuccessiveReading::Left, SuccessiveReading::Right] {
            assert!(c.successive_violations(&t, Subset::EMPTY, &m, reading).unwrap().is_empty());
        }
    }
}
