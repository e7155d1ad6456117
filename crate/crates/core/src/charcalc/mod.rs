//! Formal characters of `M(θ)_J`, `E(θ)_J` and `∇(θ)_J`.
//!
//! A weight `{θ^w, Φ⁺_v}` is stored as a twisted character (the canonical
//! representative of `w·W_{I(θ)}`) together with the Weyl element `v`.
//! The stabiliser of `θ` is modelled as exactly `W_{I(θ)}`.

mod decompose;
mod order;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{input, Result};
use crate::rootsystem::{CartanType, RootSystem};
use crate::weyl::{WeylElement, WeylGroup};
use crate::Subset;

pub use decompose::{DecomposeDiagnostic, Decomposition, TieBreak};
pub use order::{omega0_lt, OrderAxiomReport, OrderViolation};
pub use verify::{
    Counterexample, FiltrationCheck, FiltrationCheckKind, FiltrationReport, SuccessiveReading,
    SuccessiveViolation,
};

/// Text recorded in reports for the stabiliser assumption.
pub const STABILIZER_MODEL: &str = "Stab_W(theta) = W_I(theta)";

/// An abstract torus character: identified by its label, carrying `I(θ)`.
#[derive(Clone)]
pub struct FormalCharacter {
    label: Arc<str>,
    itheta: Subset,
}

impl FormalCharacter {
    /// Does not check `itheta` against a rank; see [`CharCalc::formal`].
    pub fn new(label: &str, itheta: Subset) -> Self {
        FormalCharacter {
            label: label.into(),
            itheta,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn itheta(&self) -> Subset {
        self.itheta
    }
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl Eq for FormalCharacter {}

impl PartialOrd for FormalCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FormalCharacter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.label.cmp(&other.label)
    }
}

impl std::hash::Hash for FormalCharacter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.label.hash(state);
    }
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.itheta)
    }
}

/// `θ^w`, with `w` reduced to the minimal element of `w·W_{I(θ)}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TwistedCharacter {
    base: FormalCharacter,
    coset_rep: WeylElement,
}

impl TwistedCharacter {
    pub fn base(&self) -> &FormalCharacter {
        &self.base
    }

    pub fn coset_rep(&self) -> &WeylElement {
        &self.coset_rep
    }
}

/// The weight `{θ^w, Φ⁺_v}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    pub tchar: TwistedCharacter,
    pub v: WeylElement,
}

impl Weight {
    pub fn base(&self) -> &FormalCharacter {
        &self.tchar.base
    }
}

/// A finite multiset of weights.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ModuleCharacter {
    entries: BTreeMap<Weight, u64>,
}

impl ModuleCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `w`. Rejects a zero multiplicity and a label
    /// that is already present with a different `I(θ)`.
    pub fn add(&mut self, w: Weight, mult: u64) -> Result<()> {
        if mult == 0 {
            return input("nonpositive multiplicity");
        }
        if let Some(other) = self.entries.keys().find(|k| k.base() == w.base()) {
            if other.base().itheta != w.base().itheta {
                return input(format!(
                    "label {:?} used with I(theta) {} and {}",
                    w.base().label(),
                    other.base().itheta,
                    w.base().itheta
                ));
            }
        }
        *self.entries.entry(w).or_insert(0) += mult;
        Ok(())
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn labels(&self) -> Vec<FormalCharacter> {
        let mut out: Vec<FormalCharacter> = self.entries.keys().map(|w| w.base().clone()).collect();
        out.dedup();
        out.sort();
        out.dedup();
        out
    }

    pub fn add_all(&mut self, other: &ModuleCharacter) -> Result<()> {
        for (w, m) in other.iter() {
            self.add(w.clone(), m)?;
        }
        Ok(())
    }

    pub fn is_submultiset_of(&self, other: &ModuleCharacter) -> bool {
        self.iter().all(|(w, m)| other.get(w) >= m)
    }

    /// `self − k·other` if every multiplicity stays non-negative, otherwise the
    /// weights of `other` that are short.
    pub fn checked_sub(&self, other: &ModuleCharacter, k: u64) -> std::result::Result<ModuleCharacter, Vec<Weight>> {
        let short: Vec<Weight> = other
            .iter()
            .filter(|(w, m)| self.get(w) < m * k)
            .map(|(w, _)| w.clone())
            .collect();
        if !short.is_empty() {
            return Err(short);
        }
        let mut entries = self.entries.clone();
        for (w, m) in other.iter() {
            let e = entries.get_mut(w).expect("checked above");
            *e -= m * k;
            if *e == 0 {
                entries.remove(w);
            }
        }
        Ok(ModuleCharacter { entries })
    }

    /// Signed multiplicity differences `self − other`, non-zero entries only.
    pub fn difference(&self, other: &ModuleCharacter) -> Vec<(Weight, i64)> {
        let mut keys: Vec<&Weight> = self.weights().chain(other.weights()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|w| {
                let d = self.get(w) as i64 - other.get(w) as i64;
                (d != 0).then(|| (w.clone(), d))
            })
            .collect()
    }
}

/// Which set `J'` indexes the weights of `∇(θ)_J`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum JPrime {
    /// `J' = I(θ) ∖ J`.
    #[default]
    IthetaMinusJ,
    /// `J' = I ∖ J`; kept for comparison, it breaks the filtration identity.
    IMinusJ,
}

impl JPrime {
    pub fn name(self) -> &'static str {
        match self {
            JPrime::IthetaMinusJ => "itheta-minus-j",
            JPrime::IMinusJ => "i-minus-j",
        }
    }
}

impl std::str::FromStr for JPrime {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "itheta-minus-j" => Ok(JPrime::IthetaMinusJ),
            "i-minus-j" => Ok(JPrime::IMinusJ),
            _ => input(format!("unknown J' convention {s:?}")),
        }
    }
}

/// The `v`-component attached to `w ∈ X_{J'}` in `ch ∇(θ)_J`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NablaWeights {
    /// `v = w⁻¹`: the generator of `∇(θ)_J` is fixed by all of `U`.
    #[default]
    Inverse,
    /// `v = w_J w⁻¹`, the same shape as for `M(θ)_J`.
    LongestTimesInverse,
}

impl NablaWeights {
    pub fn name(self) -> &'static str {
        match self {
            NablaWeights::Inverse => "inverse",
            NablaWeights::LongestTimesInverse => "wj-inverse",
        }
    }
}

impl std::str::FromStr for NablaWeights {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse" => Ok(NablaWeights::Inverse),
            "wj-inverse" => Ok(NablaWeights::LongestTimesInverse),
            _ => input(format!("unknown nabla weight convention {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct NablaConvention {
    pub jprime: JPrime,
    pub weights: NablaWeights,
}

/// Which module a character is requested for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    M,
    E,
    Nabla,
}

impl std::str::FromStr for ModuleKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(ModuleKind::M),
            "E" | "e" => Ok(ModuleKind::E),
            "nabla" | "Nabla" | "N" => Ok(ModuleKind::Nabla),
            _ => input(format!("unknown module kind {s:?}")),
        }
    }
}

/// A Weyl group with cached parabolic data, the context for all character
/// computations.
pub struct CharCalc {
    group: WeylGroup,
    parabolics: Vec<OnceLock<Arc<[WeylElement]>>>,
    longest: Vec<OnceLock<WeylElement>>,
}

impl fmt::Debug for CharCalc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharCalc({})", self.cartan_type())
    }
}

impl CharCalc {
    pub fn new(group: WeylGroup) -> Self {
        let n = 1usize << group.rank();
        CharCalc {
            group,
            parabolics: (0..n).map(|_| OnceLock::new()).collect(),
            longest: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn for_type(t: CartanType) -> Result<Self> {
        Ok(Self::new(WeylGroup::new(RootSystem::build(t)?)?))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn cartan_type(&self) -> CartanType {
        self.group.root_system().cartan_type()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// The full index set `I`.
    pub fn index_set(&self) -> Subset {
        Subset::full(self.rank())
    }

    fn check_in_i(&self, j: Subset) -> Result<()> {
        if !j.is_subset(self.index_set()) {
            return input(format!("{j} is not a subset of the simple indices of {}", self.cartan_type()));
        }
        Ok(())
    }

    fn check_in_itheta(&self, theta: &FormalCharacter, j: Subset) -> Result<()> {
        self.check_in_i(theta.itheta)?;
        if !j.is_subset(theta.itheta) {
            return input(format!("J = {j} is not contained in I(theta) = {}", theta.itheta));
        }
        Ok(())
    }

    /// A formal character whose `I(θ)` is validated against the rank.
    pub fn formal(&self, label: &str, itheta: Subset) -> Result<FormalCharacter> {
        self.check_in_i(itheta)?;
        Ok(FormalCharacter::new(label, itheta))
    }

    /// `W_J`, cached.
    pub fn parabolic(&self, j: Subset) -> &[WeylElement] {
        self.parabolics[j.bits() as usize].get_or_init(|| self.group.parabolic_subgroup(j).into())
    }

    /// `w_J`, cached.
    pub fn longest(&self, j: Subset) -> &WeylElement {
        self.longest[j.bits() as usize].get_or_init(|| self.group.longest_element(j))
    }

    /// `θ^w` in canonical form.
    pub fn twist(&self, base: &FormalCharacter, w: &WeylElement) -> TwistedCharacter {
        TwistedCharacter {
            base: base.clone(),
            coset_rep: self.group.min_coset_rep(w, base.itheta),
        }
    }

    /// `(θ^w)^v = θ^{vw}`.
    pub fn canonical_twist(&self, tc: &TwistedCharacter, v: &WeylElement) -> TwistedCharacter {
        self.twist(&tc.base, &v.compose(&tc.coset_rep))
    }

    pub fn weight(&self, base: &FormalCharacter, w: &WeylElement, v: WeylElement) -> Weight {
        Weight {
            tchar: self.twist(base, w),
            v,
        }
    }

    /// `J` when `a = {θ, w_J}` with `J ⊆ I(θ)`.
    pub fn highest_weight_subset(&self, a: &Weight) -> Option<Subset> {
        if !a.tchar.coset_rep.is_identity() {
            return None;
        }
        let j = a.v.descent_set(self.rank());
        (j.is_subset(a.base().itheta) && *self.longest(j) == a.v).then_some(j)
    }

    /// `Z_J(θ) = {w ∈ X_J : 𝓡(w w_J) ⊆ J ∪ (I ∖ I(θ))}`.
    pub fn z_set(&self, theta: &FormalCharacter, j: Subset) -> Result<Vec<WeylElement>> {
        self.check_in_itheta(theta, j)?;
        let allowed = j.union(self.index_set().difference(theta.itheta));
        let wj = self.longest(j);
        Ok(self
            .group
            .min_coset_reps(j)?
            .into_iter()
            .filter(|w| w.compose(wj).descent_set(self.rank()).is_subset(allowed))
            .collect())
    }

    fn standard_character<'a>(
        &self,
        theta: &FormalCharacter,
        j: Subset,
        ws: impl IntoIterator<Item = &'a WeylElement>,
    ) -> ModuleCharacter {
        let wj = self.longest(j);
        let mut c = ModuleCharacter::new();
        for w in ws {
            let wt = self.weight(theta, w, wj.compose(&w.inverse()));
            c.add(wt, 1).expect("single label");
        }
        c
    }

    /// `ch M(θ)_J`: weights `{θ^w, w_J w⁻¹}` for `w ∈ X_J`.
    pub fn ch_m(&self, theta: &FormalCharacter, j: Subset) -> Result<ModuleCharacter> {
        self.check_in_itheta(theta, j)?;
        let xs = self.group.min_coset_reps(j)?;
        Ok(self.standard_character(theta, j, &xs))
    }

    /// `ch E(θ)_J`: weights `{θ^w, w_J w⁻¹}` for `w ∈ Z_J(θ)`.
    pub fn ch_e(&self, theta: &FormalCharacter, j: Subset) -> Result<ModuleCharacter> {
        let zs = self.z_set(theta, j)?;
        Ok(self.standard_character(theta, j, &zs))
    }

    /// The index set `J'` of `∇(θ)_J` under `conv`.
    pub fn jprime(&self, theta: &FormalCharacter, j: Subset, conv: JPrime) -> Subset {
        match conv {
            JPrime::IthetaMinusJ => theta.itheta.difference(j),
            JPrime::IMinusJ => self.index_set().difference(j),
        }
    }

    /// `ch ∇(θ)_J`, summed over `w ∈ X_{J'}`.
    pub fn ch_nabla(&self, theta: &FormalCharacter, j: Subset, conv: NablaConvention) -> Result<ModuleCharacter> {
        self.check_in_itheta(theta, j)?;
        let jp = self.jprime(theta, j, conv.jprime);
        let xs = self.group.min_coset_reps(jp)?;
        match conv.weights {
            NablaWeights::LongestTimesInverse => Ok(self.standard_character(theta, j, &xs)),
            NablaWeights::Inverse => {
                let mut c = ModuleCharacter::new();
                for w in &xs {
                    c.add(self.weight(theta, w, w.inverse()), 1).expect("single label");
                }
                Ok(c)
            }
        }
    }

    pub fn character(
        &self,
        kind: ModuleKind,
        theta: &FormalCharacter,
        j: Subset,
        conv: NablaConvention,
    ) -> Result<ModuleCharacter> {
        match kind {
            ModuleKind::M => self.ch_m(theta, j),
            ModuleKind::E => self.ch_e(theta, j),
            ModuleKind::Nabla => self.ch_nabla(theta, j, conv),
        }
    }
}
