use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use catx_core::charcalc::{DecomposeDiagnostic, TieBreak};
use catx_core::incidence::IncidenceAlgebra;
use catx_core::io::{read_character, read_module, write_character, write_module};
use catx_core::{CharCalc, Guard, Rational, RootSystem, Subset, Weight, WeylElement, WeylGroup};
use serde_json::{json, Value};

use crate::{emit, parse_kind, parse_subset, parse_type, AlgebraArgs, CharArgs, DecomposeArgs, RootsArgs, WeylArgs};

pub fn word(g: &WeylGroup, w: &WeylElement) -> Vec<usize> {
    g.reduced_word(w)
}

pub fn weight_json(g: &WeylGroup, w: &Weight) -> Value {
    json!({
        "label": w.base().label(),
        "itheta": w.base().itheta(),
        "coset_rep": word(g, w.tchar.coset_rep()),
        "v": word(g, &w.v),
    })
}

pub fn build_group(t: catx_core::CartanType, guard: Guard) -> Result<WeylGroup> {
    Ok(WeylGroup::new_with(RootSystem::build_with(t, guard)?, guard)?)
}

pub fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn to_json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

pub fn roots(a: RootsArgs) -> Result<bool> {
    let (t, guard) = a.t.resolve()?;
    let rs = RootSystem::build_with(t, guard)?;
    let cartan = rs.cartan_matrix().to_vec();
    if let Some(p) = &a.csv {
        let header: Vec<String> = std::iter::once("i".to_string()).chain((1..=rs.rank()).map(|j| j.to_string())).collect();
        let rows: Vec<Vec<String>> = cartan
            .iter()
            .enumerate()
            .map(|(i, r)| std::iter::once((i + 1).to_string()).chain(r.iter().map(|x| x.to_string())).collect())
            .collect();
        write_csv(p, &header, &rows)?;
    }
    let text = if a.output.json {
        to_json_text(&json!({
            "type": t.to_string(),
            "rank": rs.rank(),
            "cartan_matrix": cartan,
            "positive_roots": rs.positive_roots().iter().map(|r| json!({"coords": r.coords(), "height": r.height()})).collect::<Vec<_>>(),
            "weyl_order": t.weyl_order().to_string(),
        }))
    } else {
        let mut s = String::new();
        writeln!(s, "type {t}: rank {}, {} positive roots, |W| = {}", rs.rank(), rs.num_positive(), t.weyl_order())?;
        writeln!(s, "cartan matrix, C[i][j] = <alpha_j, alpha_i^vee>:")?;
        for r in &cartan {
            writeln!(s, "  {}", r.iter().map(|x| format!("{x:>3}")).collect::<String>())?;
        }
        writeln!(s, "positive roots (simple-root coordinates, height):")?;
        for r in rs.positive_roots() {
            writeln!(s, "  {r}  {}", r.height())?;
        }
        s
    };
    emit(&text, a.output.out.as_ref())?;
    Ok(true)
}

pub fn weyl(a: WeylArgs) -> Result<bool> {
    let (t, guard) = a.t.resolve()?;
    let g = build_group(t, guard)?;
    let w0 = g.longest();
    let mut out = json!({
        "type": t.to_string(),
        "order": g.order(),
        "longest": word(&g, &w0),
        "longest_length": w0.length(),
    });
    let j = a.j.as_deref().map(parse_subset).transpose()?;
    if let Some(j) = j {
        if !j.is_subset(Subset::full(g.rank())) {
            bail!("J = {j} is not a subset of the simple indices of {t}");
        }
        let wj = g.longest_element(j);
        let reps = g.min_coset_reps(j)?;
        out["j"] = json!(j);
        out["longest_in_j"] = json!(word(&g, &wj));
        out["parabolic_order"] = json!(g.parabolic_subgroup(j).len());
        out["min_coset_reps"] = json!(reps.iter().map(|w| word(&g, w)).collect::<Vec<_>>());
    }
    if let Some(ws) = &a.word {
        let letters: Vec<usize> = if ws.trim().is_empty() {
            Vec::new()
        } else {
            ws.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<_, _>>().context("bad --word")?
        };
        let w = g.from_word(&letters)?;
        let (pos, _) = g.inversion_set(&w);
        let mut el = json!({
            "reduced_word": word(&g, &w),
            "length": w.length(),
            "inversion_set": pos.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
            "descents": g.descent_set(&w),
        });
        if let Some(j) = j {
            el["min_coset_rep"] = json!(word(&g, &g.min_coset_rep(&w, j)));
        }
        out["element"] = el;
    }
    let text = if a.output.json {
        to_json_text(&out)
    } else {
        let mut s = String::new();
        writeln!(s, "type {t}: |W| = {}, w0 = {} (length {})", g.order(), g.word_string(&w0), w0.length())?;
        if let Some(j) = j {
            let reps = g.min_coset_reps(j)?;
            writeln!(s, "J = {j}: w_J = {}, |W_J| = {}", g.word_string(&g.longest_element(j)), g.parabolic_subgroup(j).len())?;
            writeln!(
                s,
                "X_J ({}): {}",
                reps.len(),
                reps.iter().map(|w| g.word_string(w)).collect::<Vec<_>>().join(" ")
            )?;
        }
        if let Some(el) = out.get("element") {
            writeln!(s, "element: {el}")?;
        }
        s
    };
    emit(&text, a.output.out.as_ref())?;
    Ok(true)
}

pub fn character(a: CharArgs) -> Result<bool> {
    if let Some(input) = &a.input {
        let text = std::fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
        let (calc, loaded) = read_character(&text, a.strict)?;
        if loaded.canonicalized {
            eprintln!("catx: warning: non-canonical coset representatives were canonicalized");
        }
        emit(&write_character(&calc, &loaded.theta, &loaded.character)?, a.out.as_ref())?;
        return Ok(true);
    }
    let t = parse_type(a.cartan_type.as_deref().unwrap_or_default(), a.max_rank, a.allow_large)?;
    let guard = Guard {
        allow_large: a.allow_large,
    };
    let calc = CharCalc::new(build_group(t, guard)?);
    let theta = calc.formal(&a.label, parse_subset(&a.itheta)?)?;
    let ch = calc.character(parse_kind(&a.kind)?, &theta, parse_subset(&a.j)?, a.conv.resolve()?)?;
    emit(&write_character(&calc, &theta, &ch)?, a.out.as_ref())?;
    Ok(true)
}

pub fn parse_tie(s: &str, seed: u64) -> Result<TieBreak> {
    Ok(match s {
        "canonical" => TieBreak::Canonical,
        "reversed" => TieBreak::Reversed,
        "shuffled" => TieBreak::Shuffled(seed),
        _ => bail!("unknown tie-break {s:?}; expected canonical, reversed or shuffled"),
    })
}

pub fn decompose(a: DecomposeArgs) -> Result<bool> {
    let tie = parse_tie(&a.tie_break, a.seed)?;
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let (calc, loaded) = read_character(&text, a.strict)?;
    if loaded.canonicalized {
        eprintln!("catx: warning: non-canonical coset representatives were canonicalized");
    }
    let g = calc.group();
    let d = calc.decompose_character(&loaded.character, tie);
    let factors: Vec<Value> = d
        .factors
        .iter()
        .map(|((f, j), m)| json!({"label": f.label(), "j": j, "mult": m}))
        .collect();
    let remainder: Vec<Value> = d
        .remainder
        .iter()
        .map(|(w, m)| {
            let mut v = weight_json(g, w);
            v["mult"] = json!(m);
            v
        })
        .collect();
    let diagnostic = match &d.diagnostic {
        None => Value::Null,
        Some(DecomposeDiagnostic::MissingWeights { theta, j, missing }) => json!({
            "kind": "missing-weights",
            "label": theta.label(),
            "j": j,
            "missing": missing.iter().map(|w| weight_json(g, w)).collect::<Vec<_>>(),
        }),
        Some(DecomposeDiagnostic::NoHighestWeight) => json!({"kind": "no-highest-weight"}),
    };
    let out = if a.output.json {
        to_json_text(&json!({
            "type": calc.cartan_type().to_string(),
            "complete": d.is_complete(),
            "length": d.length(),
            "factors": factors,
            "remainder": remainder,
            "diagnostic": diagnostic,
        }))
    } else {
        let mut s = String::new();
        for ((f, j), m) in &d.factors {
            writeln!(s, "E({}){j} x{m}", f.label())?;
        }
        writeln!(s, "composition length {}", d.length())?;
        if !d.is_complete() {
            writeln!(s, "remainder: {} weights; diagnostic: {diagnostic}", d.remainder.total())?;
        }
        s
    };
    emit(&out, a.output.out.as_ref())?;
    Ok(d.is_complete())
}

pub fn algebra(a: AlgebraArgs) -> Result<bool> {
    let alg = IncidenceAlgebra::new_with(a.n, Guard { allow_large: a.allow_large })?;
    let module = match &a.module {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Some(read_module::<Rational>(&text)?)
        }
        None => None,
    };
    let cartan = alg.cartan();
    let vs = alg.vertices();
    if let Some(p) = &a.csv {
        let header: Vec<String> = std::iter::once("Y\\Z".to_string()).chain(vs.iter().map(|v| v.to_string())).collect();
        let rows: Vec<Vec<String>> = vs
            .iter()
            .zip(&cartan)
            .map(|(y, r)| std::iter::once(y.to_string()).chain(r.iter().map(|x| x.to_string())).collect())
            .collect();
        write_csv(p, &header, &rows)?;
    }
    let heredity = alg.heredity_chain_check::<Rational>();
    let arrows: Vec<Value> = alg.ext1().iter().map(|((y, z), m)| json!({"from": y, "to": z, "mult": m})).collect();
    let dims: Vec<Value> = alg
        .projective_injective_dims()
        .iter()
        .map(|d| {
            json!({
                "vertex": d.vertex,
                "projective_dim": d.projective_dim,
                "injective_dim": d.injective_dim,
                "projective_length": d.projective_length,
                "injective_length": d.injective_length,
            })
        })
        .collect();
    let layers: Vec<Value> = heredity
        .layers
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "ideal_dim": l.ideal_dim,
                "layer_dim": l.layer_dim,
                "idempotent": l.idempotent,
                "radical_annihilated": l.radical_annihilated,
                "semisimple_corner": l.semisimple_corner,
                "tensor_dim": l.tensor_dim,
                "tensor_exact": l.tensor_exact,
                "pass": l.pass,
            })
        })
        .collect();
    let mut out = json!({
        "n": a.n,
        "dim": alg.dim(),
        "radical_series": alg.radical_series(),
        "cartan_determinant": alg.cartan_determinant::<Rational>().to_string(),
        "ext1_arrows": arrows,
        "vertices": dims,
        "heredity": {"pass": heredity.passed(), "layers": layers},
    });
    let mut summands_text = String::new();
    if let Some(m) = &module {
        let s = alg.krull_schmidt_decompose(m, a.seed)?;
        out["seed"] = json!(a.seed);
        out["summands"] = json!(s
            .iter()
            .map(|x| {
                json!({
                    "dims": x.module.dim_vector().iter().map(|(y, d)| (y.to_string(), *d)).collect::<std::collections::BTreeMap<_, _>>(),
                    "total_dim": x.module.total_dim(),
                    "multiplicity": x.multiplicity,
                    "certified_local": x.certified_local,
                    "module": serde_json::from_str::<Value>(&write_module(&x.module)).expect("module documents are JSON"),
                })
            })
            .collect::<Vec<_>>());
        for x in &s {
            let dv: Vec<String> = x.module.dim_vector().iter().map(|(y, d)| format!("{y}:{d}")).collect();
            writeln!(
                summands_text,
                "  {} x{}  total dim {}  {}",
                dv.join(" "),
                x.multiplicity,
                x.module.total_dim(),
                if x.certified_local { "local" } else { "not certified" }
            )?;
        }
    }
    let text = if a.output.json {
        to_json_text(&out)
    } else {
        let mut s = String::new();
        writeln!(s, "A_{}: dim {}, radical series {:?}", a.n, alg.dim(), alg.radical_series())?;
        writeln!(s, "cartan determinant {}", alg.cartan_determinant::<Rational>())?;
        writeln!(s, "ext1 arrows: {}", alg.ext1().len())?;
        for ((y, z), _) in alg.ext1() {
            writeln!(s, "  {y} -> {z}")?;
        }
        writeln!(
            s,
            "heredity chain: {} ({} layers)",
            if heredity.passed() { "pass" } else { "FAIL" },
            heredity.layers.len()
        )?;
        if module.is_some() {
            writeln!(s, "summands:")?;
            s.push_str(&summands_text);
        }
        s
    };
    emit(&text, a.output.out.as_ref())?;
    Ok(true)
}

