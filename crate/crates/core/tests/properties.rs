mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use catx_core::charcalc::TieBreak;
use catx_core::incidence::AlgebraModule as Module;
use catx_core::io::{read_character, read_module, write_character, write_module};
use catx_core::linalg::Matrix;
use catx_core::{CharCalc, IncidenceAlgebra, ModuleCharacter, NablaConvention, Rational, Subset};
use common::{calc, lib_tally, Oracle, SWEEP_TYPES};
use num_rational::Rational64;
use proptest::prelude::*;

struct Fixture {
    calc: CharCalc,
    oracle: Oracle,
}

impl std::fmt::Debug for Fixture {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.calc)
    }
}

fn fixtures() -> &'static Vec<Fixture> {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        SWEEP_TYPES
            .iter()
            .map(|t| Fixture {
                calc: calc(t),
                oracle: Oracle::new(t.parse().unwrap()),
            })
            .collect()
    })
}

fn fixture() -> impl Strategy<Value = &'static Fixture> {
    (0..SWEEP_TYPES.len()).prop_map(|k| &fixtures()[k])
}

fn subset_of(s: Subset, bits: u32) -> Subset {
    Subset::from_bits(s.bits() & bits)
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_words_round_trip(f in fixture(), k in any::<prop::sample::Index>()) {
        let g = f.calc.group();
        let w = &g.elements()[k.index(g.order())];
        let word = g.reduced_word(w);
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(&g.from_word(&word).unwrap(), w);
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(w.compose(&w.inverse()), g.identity());
    }

    #[test]
    fn multiplication_matches_oracle(f in fixture(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let g = f.calc.group();
        let o = &f.oracle;
        let (x, y, z) = (&g.elements()[a.index(g.order())], &g.elements()[b.index(g.order())], &g.elements()[c.index(g.order())]);
        prop_assert_eq!(x.compose(y).compose(z), x.compose(&y.compose(z)));
        let (ox, oy) = (o.by_mask(x.inversions().0), o.by_mask(y.inversions().0));
        prop_assert_eq!(x.compose(y).inversions().0, o.inversions(o.mul(ox, oy)));
        prop_assert_eq!(g.descent_set(x), o.descents(ox));
    }

    #[test]
    fn inversion_sets_are_biclosed(f in fixture(), k in any::<prop::sample::Index>()) {
        let g = f.calc.group();
        let rs = g.root_system();
        let w = &g.elements()[k.index(g.order())];
        let n = rs.num_positive();
        prop_assert!(rs.is_closed(w.inversions()));
        prop_assert!(rs.is_closed(w.inversions().complement(n)));
    }

    #[test]
    fn coset_representatives(f in fixture(), k in any::<prop::sample::Index>(), bits in 0u32..8) {
        let g = f.calc.group();
        let o = &f.oracle;
        let j = subset_of(f.calc.index_set(), bits);
        let w = &g.elements()[k.index(g.order())];
        let rep = g.min_coset_rep(w, j);
        let ow = o.by_mask(w.inversions().0);
        prop_assert_eq!(rep.inversions().0, o.inversions(o.canonical(ow, j)));
        prop_assert!(g.is_min_coset_rep(&rep, j));
        prop_assert_eq!(g.longest_element(j).inversions().0, o.inversions(o.longest(j)));
    }

    #[test]
    fn twisting_composes(f in fixture(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), bits in 0u32..8) {
        let c = &f.calc;
        let g = c.group();
        let itheta = subset_of(c.index_set(), bits);
        let theta = c.formal("t", itheta).unwrap();
        let (w, v) = (&g.elements()[a.index(g.order())], &g.elements()[b.index(g.order())]);
        let tw = c.twist(&theta, w);
        prop_assert_eq!(c.canonical_twist(&tw, v), c.twist(&theta, &v.compose(w)));
        prop_assert!(g.is_min_coset_rep(tw.coset_rep(), itheta));
    }

    #[test]
    fn standard_characters(f in fixture(), bits in 0u32..8, jbits in 0u32..8) {
        let c = &f.calc;
        let itheta = subset_of(c.index_set(), bits);
        let j = subset_of(itheta, jbits);
        let theta = c.formal("t", itheta).unwrap();
        let m = c.ch_m(&theta, j).unwrap();
        let e = c.ch_e(&theta, j).unwrap();
        prop_assert!(e.is_submultiset_of(&m));
        prop_assert!(m.iter().all(|(_, k)| k == 1));
        let wj = c.longest(j);
        prop_assert_eq!(e.weights().filter(|w| &w.v == wj).count(), 1);
        prop_assert_eq!(lib_tally(&m), f.oracle.ch_m("t", itheta, j));
    }

    #[test]
    fn order_matches_oracle(f in fixture(), bits in 0u32..8, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let c = &f.calc;
        let g = c.group();
        let itheta = subset_of(c.index_set(), bits);
        let theta = c.formal("t", itheta).unwrap();
        let pick = |i: &prop::sample::Index| g.elements()[i.index(g.order())].clone();
        let wa = c.weight(&theta, &pick(&a), pick(&x));
        let wb = c.weight(&theta, &pick(&b), pick(&y));
        let key = |w| common::lib_key((w, 1)).0;
        prop_assert_eq!(c.weight_lt(&wa, &wb), f.oracle.weight_lt(itheta, &key(&wa), &key(&wb)));
        prop_assert!(!c.weight_lt(&wa, &wa));
        prop_assert!(!(c.weight_lt(&wa, &wb) && c.weight_lt(&wb, &wa)));
    }

    #[test]
    fn sums_of_simples_decompose(f in fixture(), bits in 0u32..8, mults in prop::collection::vec(0u64..3, 8), seed in any::<u64>()) {
        let c = &f.calc;
        let itheta = subset_of(c.index_set(), bits);
        let theta = c.formal("t", itheta).unwrap();
        let mut ch = ModuleCharacter::new();
        let mut want = BTreeMap::new();
        for (k, j) in itheta.subsets().into_iter().enumerate() {
            let m = mults[k % mults.len()];
            for _ in 0..m {
                ch.add_all(&c.ch_e(&theta, j).unwrap()).unwrap();
            }
            if m > 0 {
                want.insert((theta.clone(), j), m);
            }
        }
        for tie in [TieBreak::Canonical, TieBreak::Reversed, TieBreak::Shuffled(seed)] {
            let d = c.decompose_character(&ch, tie);
            prop_assert!(d.is_complete());
            prop_assert_eq!(&d.factors, &want);
        }
    }

    #[test]
    fn characters_round_trip(f in fixture(), bits in 0u32..8, jbits in 0u32..8, kind in 0usize..3) {
        let c = &f.calc;
        let itheta = subset_of(c.index_set(), bits);
        let j = subset_of(itheta, jbits);
        let theta = c.formal("label", itheta).unwrap();
        let ch = match kind {
            0 => c.ch_m(&theta, j).unwrap(),
            1 => c.ch_e(&theta, j).unwrap(),
            _ => c.ch_nabla(&theta, j, NablaConvention::default()).unwrap(),
        };
        let text = write_character(c, &theta, &ch).unwrap();
        let (_, back) = read_character(&text, true).unwrap();
        prop_assert_eq!(&back.character, &ch);
        prop_assert_eq!(write_character(c, &back.theta, &back.character).unwrap(), text);
    }
}

fn interval() -> impl Strategy<Value = (u32, u32)> {
    (0u32..4, 0u32..4).prop_filter_map("Y ⊆ Z", |(y, z)| (y & z == y).then_some((y, z)))
}

fn change_of_basis(d: usize, entries: &[i64]) -> Matrix<Rational> {
    let m = Matrix::from_fn(d, d, |r, c| {
        if r == c {
            q(1)
        } else if c > r {
            q(entries[(r * 7 + c) % entries.len()])
        } else {
            q(0)
        }
    });
    let l = Matrix::from_fn(d, d, |r, c| {
        if r == c {
            q(1)
        } else if c < r {
            q(entries[(r * 3 + c * 5 + 1) % entries.len()])
        } else {
            q(0)
        }
    });
    l.mul(&m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn krull_schmidt_recovers_intervals(
        parts in prop::collection::vec(interval(), 1..=5),
        entries in prop::collection::vec(-3i64..=3, 16),
        seed in any::<u64>(),
    ) {
        let a = IncidenceAlgebra::new(2).unwrap();
        let mods: Vec<Module<Rational>> = parts
            .iter()
            .map(|&(y, z)| Module::interval(2, Subset::from_bits(y), Subset::from_bits(z)).unwrap())
            .collect();
        let sum = Module::direct_sum(&mods.iter().collect::<Vec<_>>()).unwrap();
        let g: Vec<Matrix<Rational>> = sum.dims().iter().map(|&d| change_of_basis(d, &entries)).collect();
        let m = sum.base_change(&g).unwrap();
        let mut want: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for p in &mods {
            *want.entry(p.dims().to_vec()).or_insert(0) += 1;
        }
        let s = a.krull_schmidt_decompose(&m, seed).unwrap();
        let got: BTreeMap<Vec<usize>, usize> = s.iter().map(|x| (x.module.dims().to_vec(), x.multiplicity)).collect();
        prop_assert_eq!(got, want);
        prop_assert!(s.iter().all(|x| x.certified_local));
        let text = write_module(&m);
        prop_assert_eq!(read_module::<Rational>(&text).unwrap(), m);
    }

    #[test]
    fn incidence_products_associate(n in 0usize..=3, xs in prop::collection::vec(-3i64..=3, 81), ys in prop::collection::vec(-3i64..=3, 81), zs in prop::collection::vec(-3i64..=3, 81)) {
        let a = IncidenceAlgebra::new(n).unwrap();
        let v = |s: &[i64]| -> Vec<Rational64> { s[..a.dim()].iter().map(|&x| Rational64::from_integer(x)).collect() };
        let (x, y, z) = (v(&xs), v(&ys), v(&zs));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.unit()), x);
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-2i64..=2, 36)) {
        let m = Matrix::from_fn(rows, cols, |r, c| Rational64::from_integer(entries[r * 6 + c]));
        prop_assert_eq!(m.rank() + m.nullspace().len(), cols);
        for v in m.nullspace() {
            let col = Matrix::from_rows(v.into_iter().map(|x| vec![x]).collect());
            prop_assert!(m.mul(&col).is_zero());
        }
        if rows == cols && m.is_invertible() {
            prop_assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(rows));
        }
    }
}

#[test]
fn radical_is_nilpotent_of_exact_index() {
    for n in 1..=4 {
        let a = IncidenceAlgebra::new(n).unwrap();
        let series = a.radical_series();
        assert_eq!(series.len(), n + 1, "n = {n}: {series:?}");
        assert_eq!(*series.last().unwrap(), 0);
        assert!(series[n - 1] > 0);
        let tr = a.trace_form_radical::<Rational64>();
        assert_eq!(tr.dim(), series[0]);
    }
}
