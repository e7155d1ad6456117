//! JSON documents for module characters and `𝒜_n`-modules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charcalc::{CharCalc, FormalCharacter, ModuleCharacter};
use crate::error::{Error, Result};
use crate::incidence::AlgebraModule;
use crate::linalg::Matrix;
use crate::rootsystem::CartanType;
use crate::scalar::Field;
use crate::Subset;

fn format_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Format(msg.into()))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub coset_rep: Vec<usize>,
    pub v: Vec<usize>,
    pub mult: i64,
}

/// On-disk form of a single-label [`ModuleCharacter`]. Weyl elements are
/// 1-based reduced words.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub itheta: Vec<usize>,
    pub label: String,
    pub weights: Vec<WeightEntry>,
}

/// A character read back from a document.
#[derive(Debug, Clone)]
pub struct LoadedCharacter {
    pub theta: FormalCharacter,
    pub character: ModuleCharacter,
    /// Some coset representative had to be replaced by its canonical form.
    pub canonicalized: bool,
}

impl CharacterDoc {
    /// Every weight of `c` must be based at `theta`. Entries follow the
    /// canonical weight order.
    pub fn from_character(calc: &CharCalc, theta: &FormalCharacter, c: &ModuleCharacter) -> Result<Self> {
        let g = calc.group();
        let mut weights = Vec::with_capacity(c.len());
        for (w, m) in c.iter() {
            if w.base() != theta || w.base().itheta() != theta.itheta() {
                return format_err(format!("weight based at {:?}, expected {:?}", w.base(), theta));
            }
            weights.push(WeightEntry {
                coset_rep: g.reduced_word(w.tchar.coset_rep()),
                v: g.reduced_word(&w.v),
                mult: m as i64,
            });
        }
        Ok(CharacterDoc {
            cartan_type: calc.cartan_type().to_string(),
            itheta: theta.itheta().indices(),
            label: theta.label().to_string(),
            weights,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn cartan_type(&self) -> Result<CartanType> {
        self.cartan_type.parse()
    }

    /// Rebuilds the character over `calc`, which must have the document's type.
    pub fn resolve(&self, calc: &CharCalc, strict: bool) -> Result<LoadedCharacter> {
        if self.cartan_type()? != calc.cartan_type() {
            return format_err(format!("document is for {}, not {}", self.cartan_type, calc.cartan_type()));
        }
        let itheta = Subset::from_indices(self.itheta.iter().copied())
            .ok_or_else(|| Error::Input(format!("bad itheta {:?}", self.itheta)))?;
        let theta = calc.formal(&self.label, itheta)?;
        let g = calc.group();
        let word = |w: &[usize]| g.from_word(w);
        let mut character = ModuleCharacter::new();
        let mut canonicalized = false;
        for e in &self.weights {
            if e.mult <= 0 {
                return Err(Error::Input("nonpositive multiplicity".into()));
            }
            let rep = word(&e.coset_rep)?;
            if !g.is_min_coset_rep(&rep, itheta) {
                if strict {
                    return Err(Error::Input(format!(
                        "coset_rep {:?} is not the minimal representative of its coset modulo W_{}",
                        e.coset_rep, itheta
                    )));
                }
                canonicalized = true;
            }
            character.add(calc.weight(&theta, &rep, word(&e.v)?), e.mult as u64)?;
        }
        Ok(LoadedCharacter {
            theta,
            character,
            canonicalized,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }
}

/// Reads a character document, building the Weyl group of its type.
pub fn read_character(text: &str, strict: bool) -> Result<(CharCalc, LoadedCharacter)> {
    let doc = CharacterDoc::parse(text)?;
    let calc = CharCalc::for_type(doc.cartan_type()?)?;
    let loaded = doc.resolve(&calc, strict)?;
    Ok((calc, loaded))
}

pub fn write_character(calc: &CharCalc, theta: &FormalCharacter, c: &ModuleCharacter) -> Result<String> {
    Ok(CharacterDoc::from_character(calc, theta, c)?.to_json())
}

/// A matrix entry: an integer, or a string `"p"` / `"p/q"`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// On-disk form of an [`AlgebraModule`]: keys are subsets written `[1,2]`,
/// maps are keyed `"[Y]->[Z]"`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub n: usize,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Entry>>>,
}

fn parse_subset(s: &str) -> Result<Subset> {
    s.parse().map_err(Error::Input)
}

fn parse_entry<F: Field>(e: &Entry) -> Result<F> {
    match e {
        Entry::Int(v) => Ok(F::from_i64(*v)),
        Entry::Text(t) => t
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad rational {t:?}"))),
    }
}

impl ModuleDoc {
    /// Zero dimensions and maps that follow from covering maps are omitted.
    pub fn from_module<F: Field>(m: &AlgebraModule<F>) -> Self {
        let dims = m.dim_vector().into_iter().map(|(y, d)| (y.to_string(), d)).collect();
        let maps = m
            .covering_pairs()
            .map(|(y, z)| (y, z, m.map(y, z)))
            .filter(|(_, _, a)| a.rows() > 0 && a.cols() > 0)
            .map(|(y, z, a)| {
                let rows = a
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Entry::Text(x.to_string())).collect())
                    .collect();
                (format!("{y}->{z}"), rows)
            })
            .collect();
        ModuleDoc { n: m.n(), dims, maps }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_module<F: Field>(&self) -> Result<AlgebraModule<F>> {
        let mut dims = BTreeMap::new();
        for (k, &d) in &self.dims {
            dims.insert(parse_subset(k)?, d);
        }
        let mut maps = BTreeMap::new();
        for (k, rows) in &self.maps {
            let Some((y, z)) = k.split_once("->") else {
                return Err(Error::Input(format!("map key {k:?} is not of the form \"[Y]->[Z]\"")));
            };
            let (y, z) = (parse_subset(y)?, parse_subset(z)?);
            let entries: Vec<Vec<F>> = rows
                .iter()
                .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<F>>>())
                .collect::<Result<_>>()?;
            let cols = entries.first().map_or(0, |r| r.len());
            if entries.iter().any(|r| r.len() != cols) {
                return Err(Error::Input(format!("map {k} has ragged rows")));
            }
            let (dy, dz) = (dims.get(&y).copied().unwrap_or(0), dims.get(&z).copied().unwrap_or(0));
            let m = if entries.is_empty() { Matrix::zeros(0, dz) } else { Matrix::from_rows(entries) };
            if m.rows() != dy || m.cols() != dz {
                return Err(Error::Input(format!(
                    "map {k} has shape {}x{}, expected {dy}x{dz}",
                    m.rows(),
                    m.cols()
                )));
            }
            maps.insert((y, z), m);
        }
        AlgebraModule::new(self.n, &dims, &maps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }
}

pub fn read_module<F: Field>(text: &str) -> Result<AlgebraModule<F>> {
    ModuleDoc::parse(text)?.to_module()
}

pub fn write_module<F: Field>(m: &AlgebraModule<F>) -> String {
    ModuleDoc::from_module(m).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn set(idx: &[usize]) -> Subset {
        Subset::from_indices(idx.iter().copied()).unwrap()
    }

    #[test]
    fn character_round_trip_is_bit_exact() {
        let calc = CharCalc::for_type("A2".parse().unwrap()).unwrap();
        let t = calc.formal("theta", set(&[1])).unwrap();
        for j in [Subset::EMPTY, set(&[1])] {
            let c = calc.ch_m(&t, j).unwrap();
            let text = write_character(&calc, &t, &c).unwrap();
            let (_, back) = read_character(&text, true).unwrap();
            assert_eq!(back.character, c);
            assert!(!back.canonicalized);
            assert_eq!(write_character(&calc, &back.theta, &back.character).unwrap(), text);
        }
    }

    #[test]
    fn character_errors() {
        let zero = r#"{"type":"A2","itheta":[1],"label":"t","weights":[{"coset_rep":[],"v":[1],"mult":0}]}"#;
        let e = read_character(zero, false).unwrap_err();
        assert!(e.to_string().contains("nonpositive multiplicity"));
        let noncanon = r#"{"type":"A2","itheta":[1],"label":"t","weights":[{"coset_rep":[1],"v":[1],"mult":1}]}"#;
        assert!(read_character(noncanon, true).is_err());
        let (_, loose) = read_character(noncanon, false).unwrap();
        assert!(loose.canonicalized);
        let w = loose.character.weights().next().unwrap();
        assert!(w.tchar.coset_rep().is_identity());
        assert!(read_character(r#"{"type":"Z9","itheta":[],"label":"t","weights":[]}"#, false).is_err());
        assert!(read_character("{", false).is_err());
    }

    #[test]
    fn module_round_trip() {
        let text = r#"{"n": 2, "dims": {"[]": 1, "[1]": 1}, "maps": {"[]->[1]": [[1]]}}"#;
        let m = read_module::<Rational>(text).unwrap();
        assert_eq!(m.total_dim(), 2);
        assert_eq!(m.dim_at(set(&[1])), 1);
        let out = write_module(&m);
        assert_eq!(read_module::<Rational>(&out).unwrap(), m);
        assert_eq!(write_module(&read_module::<Rational>(&out).unwrap()), out);
        let frac = r#"{"n": 1, "dims": {"[]": 1, "[1]": 1}, "maps": {"[]->[1]": [["-3/4"]]}}"#;
        let m = read_module::<Rational>(frac).unwrap();
        assert!(write_module(&m).contains("-3/4"));
        let bad = r#"{"n": 1, "dims": {"[]": 1, "[1]": 1}, "maps": {"[]->[1]": [[1, 2]]}}"#;
        assert!(read_module::<Rational>(bad).is_err());
    }
}
