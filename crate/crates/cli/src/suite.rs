//! The `verify` sub-command: a grid of checks run in parallel, merged into
//! one sorted JSON report.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use catx_core::charcalc::{Counterexample, OrderViolation, TieBreak, STABILIZER_MODEL};
use catx_core::{CartanType, CharCalc, Guard, IncidenceAlgebra, NablaConvention, Rational, Subset};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{build_group, weight_json, write_csv};
use crate::{emit, parse_subset, parse_type};

pub const REPORT_SCHEMA: &str = "catx-report/1";
const CHECKS: [&str; 4] = ["biclosed", "filtration", "order-axioms", "algebra"];
const MAX_ALGEBRA_N: usize = 6;

#[derive(Args)]
pub struct VerifyArgs {
    /// JSON suite configuration; command-line flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cartan types, repeated or comma-separated.
    #[arg(long = "type", value_name = "TYPE", value_delimiter = ',')]
    pub types: Vec<String>,
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// "all" for every subset, or an explicit I(theta) such as "[1]"; repeatable.
    #[arg(long)]
    pub itheta: Vec<String>,
    /// Any of biclosed, filtration, order-axioms, algebra.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Largest n for the algebra check.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sampled triples for the order check at rank 3 and above.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the composition multiplicities found by the filtration check as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "itheta-minus-j|i-minus-j")]
    pub jprime_convention: Option<String>,
    #[arg(long, value_name = "inverse|wj-inverse")]
    pub nabla_weights: Option<String>,
    #[arg(long = "override")]
    pub allow_large: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum IthetaMode {
    Named(String),
    Explicit(Vec<Vec<usize>>),
}

impl Default for IthetaMode {
    fn default() -> Self {
        IthetaMode::Named("all-subsets".into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub types: Vec<String>,
    pub max_rank: usize,
    pub itheta_mode: IthetaMode,
    pub checks: Vec<String>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub algebra_n: usize,
    pub samples: usize,
    pub jprime_convention: String,
    pub nabla_weights: String,
    #[serde(rename = "override")]
    pub allow_large: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            types: Vec::new(),
            max_rank: 4,
            itheta_mode: IthetaMode::default(),
            checks: CHECKS.iter().map(|s| s.to_string()).collect(),
            output_path: None,
            seed: catx_core::incidence::DEFAULT_SEED,
            algebra_n: 4,
            samples: 10_000,
            jprime_convention: "itheta-minus-j".into(),
            nabla_weights: "inverse".into(),
            allow_large: false,
        }
    }
}

impl SuiteConfig {
    fn merge(mut self, a: &VerifyArgs) -> Result<Self> {
        if !a.types.is_empty() {
            self.types = a.types.clone();
        }
        if let Some(r) = a.max_rank {
            self.max_rank = r;
        }
        if !a.itheta.is_empty() {
            self.itheta_mode = if a.itheta.iter().any(|s| s == "all" || s == "all-subsets") {
                IthetaMode::default()
            } else {
                IthetaMode::Explicit(a.itheta.iter().map(|s| Ok(parse_subset(s)?.indices())).collect::<Result<_>>()?)
            };
        }
        if !a.checks.is_empty() {
            self.checks = a.checks.clone();
        }
        if let Some(n) = a.n {
            self.algebra_n = n;
        }
        if let Some(s) = a.seed {
            self.seed = s;
        }
        if let Some(s) = a.samples {
            self.samples = s;
        }
        if let Some(p) = &a.out {
            self.output_path = Some(p.clone());
        }
        if let Some(c) = &a.jprime_convention {
            self.jprime_convention = c.clone();
        }
        if let Some(c) = &a.nabla_weights {
            self.nabla_weights = c.clone();
        }
        self.allow_large |= a.allow_large;
        Ok(self)
    }
}

/// The validated form of a [`SuiteConfig`].
struct Plan {
    types: Vec<CartanType>,
    itheta: Option<Vec<Subset>>,
    checks: Vec<&'static str>,
    conv: NablaConvention,
    guard: Guard,
}

fn plan(cfg: &SuiteConfig) -> Result<Plan> {
    let types = cfg
        .types
        .iter()
        .map(|t| parse_type(t, cfg.max_rank, cfg.allow_large))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    for c in &cfg.checks {
        match CHECKS.iter().find(|k| **k == c) {
            Some(k) if !checks.contains(k) => checks.push(*k),
            Some(_) => {}
            None => bail!("unknown check {c:?}; expected one of {}", CHECKS.join(", ")),
        }
    }
    checks.sort_by_key(|c| CHECKS.iter().position(|k| k == c));
    if types.is_empty() && checks.iter().any(|c| *c != "algebra") {
        bail!("no types given for the checks {:?}", checks);
    }
    let itheta = match &cfg.itheta_mode {
        IthetaMode::Named(s) if s == "all-subsets" => None,
        IthetaMode::Named(s) => bail!("unknown itheta_mode {s:?}; expected \"all-subsets\" or a list of subsets"),
        IthetaMode::Explicit(list) => Some(
            list.iter()
                .map(|ix| Subset::from_indices(ix.iter().copied()).with_context(|| format!("bad subset {ix:?}")))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    if let Some(list) = &itheta {
        for t in &types {
            if let Some(s) = list.iter().find(|s| !s.is_subset(Subset::full(t.rank()))) {
                bail!("I(theta) = {s} is not a subset of the simple indices of {t}");
            }
        }
    }
    if cfg.algebra_n > MAX_ALGEBRA_N && !cfg.allow_large && checks.contains(&"algebra") {
        bail!("algebra n = {} exceeds {MAX_ALGEBRA_N}; pass --override to allow it", cfg.algebra_n);
    }
    Ok(Plan {
        types,
        itheta,
        checks,
        conv: NablaConvention {
            jprime: cfg.jprime_convention.parse().map_err(anyhow::Error::msg)?,
            weights: cfg.nabla_weights.parse().map_err(anyhow::Error::msg)?,
        },
        guard: Guard {
            allow_large: cfg.allow_large,
        },
    })
}

#[derive(Serialize)]
struct Record {
    check: &'static str,
    #[serde(rename = "type")]
    cartan_type: Option<String>,
    params: Value,
    pass: bool,
    details: Value,
    counterexample: Value,
    #[serde(skip)]
    key: (usize, Option<CartanType>, Vec<u32>),
    #[serde(skip)]
    ms: f64,
}

/// One row of the multiplicity table.
type MultRow = (String, Subset, Subset, &'static str, Subset, u64);

enum Task {
    Biclosed(CartanType),
    Filtration(CartanType, Subset),
    Order(CartanType),
    Algebra(usize),
}

fn check_index(c: &str) -> usize {
    CHECKS.iter().position(|k| *k == c).unwrap_or(CHECKS.len())
}

fn record(check: &'static str, t: Option<CartanType>, params: Value, key: Vec<u32>) -> Record {
    Record {
        check,
        cartan_type: t.map(|t| t.to_string()),
        params,
        pass: true,
        details: json!({}),
        counterexample: Value::Null,
        key: (check_index(check), t, key),
        ms: 0.0,
    }
}

fn counterexample_json(calc: &CharCalc, c: &Counterexample) -> Value {
    let g = calc.group();
    match c {
        Counterexample::Weights(ws) => json!({
            "kind": "weights",
            "weights": ws.iter().map(|(w, d)| {
                let mut v = weight_json(g, w);
                v["lhs_minus_rhs"] = json!(d);
                v
            }).collect::<Vec<_>>(),
        }),
        Counterexample::Counts { lhs, rhs } => json!({"kind": "counts", "lhs": lhs, "rhs": rhs}),
        Counterexample::Factors {
            expected,
            found,
            remainder,
        } => json!({
            "kind": "factors",
            "expected": expected,
            "found": found.iter().map(|(k, m)| json!({"k": k, "mult": m})).collect::<Vec<_>>(),
            "remainder": remainder,
        }),
    }
}

fn run_biclosed(g: &catx_core::WeylGroup, t: CartanType, guard: Guard) -> Result<Record> {
    let mut r = record("biclosed", Some(t), json!({}), vec![]);
    let sets = g.enumerate_biclosed(guard)?;
    let orphans: Vec<_> = sets
        .iter()
        .filter(|b| !b.witness.as_ref().is_some_and(|w| w.non_inversions() == b.set))
        .collect();
    r.pass = orphans.is_empty() && sets.len() == g.order();
    r.details = json!({"biclosed_sets": sets.len(), "weyl_order": g.order()});
    if let Some(b) = orphans.first() {
        r.counterexample = json!({
            "kind": "biclosed-without-witness",
            "roots": g.root_system().roots_of(b.set).iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>(),
        });
    }
    Ok(r)
}

fn run_filtration(calc: &CharCalc, itheta: Subset, conv: NablaConvention, rows: &mut Vec<MultRow>) -> Result<Vec<Record>> {
    let t = calc.cartan_type();
    let theta = calc.formal(&format!("theta{itheta}"), itheta)?;
    let report = calc.verify_filtration(&theta, conv)?;
    let mut by_j: BTreeMap<Subset, Vec<_>> = BTreeMap::new();
    for c in &report.checks {
        by_j.entry(c.j).or_default().push(c);
    }
    let mut out = Vec::new();
    for (j, checks) in by_j {
        let mut r = record("filtration", Some(t), json!({"itheta": itheta, "j": j}), vec![itheta.bits(), j.bits()]);
        r.pass = checks.iter().all(|c| c.pass);
        let nabla = calc.ch_nabla(&theta, j, conv)?;
        r.details = json!({
            "checks": checks.iter().map(|c| (c.kind.name(), c.pass)).collect::<BTreeMap<_, _>>(),
            "nabla_weights": nabla.total(),
        });
        let failing: BTreeMap<&str, Value> = checks
            .iter()
            .filter_map(|c| c.counterexample.as_ref().map(|x| (c.kind.name(), counterexample_json(calc, x))))
            .collect();
        if !failing.is_empty() {
            r.counterexample = json!(failing);
        }
        for (module, ch) in [("nabla", nabla), ("M", calc.ch_m(&theta, j)?)] {
            let d = calc.decompose_character(&ch, TieBreak::Canonical);
            for ((_, k), m) in d.factors {
                rows.push((t.to_string(), itheta, j, module, k, m));
            }
        }
        out.push(r);
    }
    Ok(out)
}

fn run_order(calc: &CharCalc, conv: NablaConvention, samples: usize, seed: u64) -> Result<Record> {
    let t = calc.cartan_type();
    let exhaustive = t.rank() <= 2;
    let mut r = record("order-axioms", Some(t), json!({"exhaustive": exhaustive}), vec![]);
    let ws = calc.sweep_weights(conv)?;
    let rep = calc.check_order_axioms(&ws, (!exhaustive).then_some((samples, seed)));
    r.pass = rep.violation.is_none();
    r.details = json!({
        "weights": rep.weights,
        "exhaustive": rep.exhaustive,
        "triples_checked": rep.triples_checked,
        "chains": rep.chains,
    });
    let g = calc.group();
    r.counterexample = match &rep.violation {
        None => Value::Null,
        Some(OrderViolation::Reflexive(w)) => json!({"kind": "reflexive", "weight": weight_json(g, w)}),
        Some(OrderViolation::Intransitive(a, b, c)) => json!({
            "kind": "intransitive",
            "chain": [weight_json(g, a), weight_json(g, b), weight_json(g, c)],
        }),
    };
    Ok(r)
}

fn run_algebra(n: usize, guard: Guard) -> Result<Record> {
    let mut r = record("algebra", None, json!({"n": n}), vec![n as u32]);
    let a = IncidenceAlgebra::new_with(n, guard)?;
    let det = a.cartan_determinant::<Rational>();
    let ext = a.ext1();
    let covering = a
        .vertices()
        .iter()
        .flat_map(|&y| a.vertices().iter().map(move |&z| (y, z)))
        .filter(|(y, z)| y.is_subset(*z) && z.len() == y.len() + 1)
        .count();
    let arrows_ok = ext.len() == covering
        && ext.iter().all(|((y, z), &m)| m == 1 && y.is_subset(*z) && z.len() == y.len() + 1);
    let h = a.heredity_chain_check::<Rational>();
    let dim_ok = a.dim() == 3usize.pow(n as u32);
    let det_ok = det == Rational::from_integer(1.into());
    r.pass = dim_ok && det_ok && arrows_ok && h.passed();
    r.details = json!({
        "dim": a.dim(),
        "cartan_determinant": det.to_string(),
        "ext1_arrows": ext.len(),
        "covering_pairs": covering,
        "heredity_layers": h.layers.len(),
        "heredity_pass": h.passed(),
    });
    if !r.pass {
        r.counterexample = json!({
            "dim_ok": dim_ok,
            "determinant_ok": det_ok,
            "arrows_ok": arrows_ok,
            "failing_layers": h.layers.iter().filter(|l| !l.pass).map(|l| l.level).collect::<Vec<_>>(),
        });
    }
    Ok(r)
}

fn unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

pub fn verify(a: VerifyArgs) -> Result<bool> {
    let started_unix_ms = unix_ms();
    let start = Instant::now();
    let base = match &a.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            serde_json::from_str::<SuiteConfig>(&text).with_context(|| format!("invalid config {}", p.display()))?
        }
        None => SuiteConfig::default(),
    };
    let cfg = base.merge(&a)?;
    let p = plan(&cfg)?;

    let mut calcs = BTreeMap::new();
    for &t in &p.types {
        calcs.insert(t.to_string(), CharCalc::new(build_group(t, p.guard)?));
    }
    let mut tasks = Vec::new();
    for check in &p.checks {
        match *check {
            "algebra" => tasks.extend((0..=cfg.algebra_n).map(Task::Algebra)),
            _ => {
                for &t in &p.types {
                    match *check {
                        "biclosed" => tasks.push(Task::Biclosed(t)),
                        "order-axioms" => tasks.push(Task::Order(t)),
                        _ => {
                            let subsets = p.itheta.clone().unwrap_or_else(|| Subset::full(t.rank()).subsets());
                            tasks.extend(subsets.into_iter().map(|s| Task::Filtration(t, s)));
                        }
                    }
                }
            }
        }
    }

    let results: Vec<Result<(Vec<Record>, Vec<MultRow>)>> = tasks
        .par_iter()
        .map(|task| {
            let t0 = Instant::now();
            let mut rows = Vec::new();
            let mut recs = match *task {
                Task::Biclosed(t) => vec![run_biclosed(calcs[&t.to_string()].group(), t, p.guard)?],
                Task::Filtration(t, s) => run_filtration(&calcs[&t.to_string()], s, p.conv, &mut rows)?,
                Task::Order(t) => vec![run_order(&calcs[&t.to_string()], p.conv, cfg.samples, cfg.seed)?],
                Task::Algebra(n) => vec![run_algebra(n, p.guard)?],
            };
            let ms = t0.elapsed().as_secs_f64() * 1e3 / recs.len().max(1) as f64;
            for r in &mut recs {
                r.ms = ms;
            }
            Ok((recs, rows))
        })
        .collect();
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for res in results {
        let (r, m) = res?;
        records.extend(r);
        rows.extend(m);
    }
    records.sort_by(|x, y| x.key.cmp(&y.key));
    rows.sort();

    let failed = records.iter().filter(|r| !r.pass).count();
    let mut by_check: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &records {
        let e = by_check.entry(r.check).or_default();
        e.0 += 1;
        e.1 += usize::from(r.pass);
    }
    let report = json!({
        "schema": REPORT_SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "config": {
            "types": p.types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "max_rank": cfg.max_rank,
            "itheta_mode": cfg.itheta_mode,
            "checks": p.checks,
            "algebra_n": cfg.algebra_n,
            "seed": cfg.seed,
            "samples": cfg.samples,
            "jprime_convention": p.conv.jprime.name(),
            "nabla_weights": p.conv.weights.name(),
            "override": cfg.allow_large,
        },
        "stabilizer_model": STABILIZER_MODEL,
        "status": if failed == 0 { "pass" } else { "fail" },
        "summary": {
            "records": records.len(),
            "passed": records.len() - failed,
            "failed": failed,
            "by_check": by_check.iter().map(|(k, (n, ok))| (k.to_string(), json!({"records": n, "passed": ok}))).collect::<serde_json::Map<_, _>>(),
        },
        "records": records,
        "timing": {
            "started_unix_ms": started_unix_ms as u64,
            "total_ms": start.elapsed().as_secs_f64() * 1e3,
            "record_ms": records.iter().map(|r| r.ms).collect::<Vec<_>>(),
        },
    });
    let text = serde_json::to_string_pretty(&report)? + "\n";
    emit(&text, cfg.output_path.as_ref())?;
    if let Some(path) = &a.csv {
        let header: Vec<String> = ["type", "itheta", "j", "module", "k", "multiplicity"].iter().map(|s| s.to_string()).collect();
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|(t, i, j, m, k, n)| vec![t.clone(), i.to_string(), j.to_string(), m.to_string(), k.to_string(), n.to_string()])
            .collect();
        write_csv(path, &header, &body)?;
    }
    if cfg.output_path.is_some() {
        eprintln!(
            "catx verify: {} ({} of {} records passed)",
            if failed == 0 { "pass" } else { "FAIL" },
            records.len() - failed,
            records.len()
        );
    }
    Ok(failed == 0)
}
