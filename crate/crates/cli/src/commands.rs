use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use ribbon_core::corpus;
use ribbon_core::decide::{batch, decide_with_field, BatchError, DecideConfig};
use ribbon_core::fd::oracle::{is_symmetric_oracle, OracleConfig, SymmetryVerdict};
use ribbon_core::fd::{expected_dimension, BrauerQuotient, QuotientKind};
use ribbon_core::field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
use ribbon_core::order::{
    cartan_matrix, check_nu_symmetry, cycle_type, cartan_rank_check, rank_formula_check, BasisElem, CanonicalBasis,
};
use ribbon_core::polarization::Polarization;
use ribbon_core::quiver::MultiplicityMap;
use ribbon_core::ribbon::{graph_of_quiver, BipartiteCertificate};
use ribbon_core::specfile::{parse_instance, ribbon_graph_spec_string, Instance};
use serde_json::{json, Value};

pub struct Options {
    pub json: bool,
    pub seed: u64,
    pub budget: usize,
}

impl Options {
    fn decide_config(&self) -> DecideConfig {
        DecideConfig {
            oracle: OracleConfig { seed: self.seed, max_dim: self.budget, ..OracleConfig::default() },
            ..DecideConfig::default()
        }
    }

    fn emit(&self, value: Value, text: String) -> Result<String> {
        if self.json {
            Ok(serde_json::to_string_pretty(&value)? + "\n")
        } else {
            Ok(text)
        }
    }
}

fn load(file: &str) -> Result<Instance> {
    if let Some(name) = file.strip_prefix("corpus:") {
        let entry = corpus::get(name)
            .ok_or_else(|| anyhow!("no corpus instance named {name:?}; known: {}", corpus::names().join(", ")))?;
        return Ok(entry.instance());
    }
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    parse_instance(&text).with_context(|| format!("parsing {file}"))
}

fn multiplicity(inst: &Instance, uniform: Option<u32>) -> MultiplicityMap {
    match uniform {
        Some(m) => MultiplicityMap::uniform(&inst.quiver, m),
        None => inst.multiplicity.clone(),
    }
}

fn signs(colors: &[ribbon_core::sign::Sign]) -> String {
    colors.iter().map(|s| s.symbol()).collect::<Vec<_>>().join(" ")
}

pub fn validate(file: &str, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let q = &inst.quiver;
    let mult = inst.multiplicity.entries(q);
    let value = json!({
        "name": q.name(),
        "vertices": q.vertex_count(),
        "arrows": q.arrow_count(),
        "sigma": q.sigma_string(),
        "orbit_sizes": cycle_type(q),
        "multiplicity": mult,
    });
    let mut text = String::new();
    writeln!(text, "{}: complete gentle quiver", q.name())?;
    writeln!(text, "vertices {} ({})", q.vertex_count(), q.vertex_names().join(" "))?;
    writeln!(text, "arrows {}", q.arrow_count())?;
    writeln!(text, "sigma {}", q.sigma_string())?;
    writeln!(text, "orbit sizes {:?}", cycle_type(q))?;
    if !inst.multiplicity.is_one() {
        let parts: Vec<String> = mult.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(text, "multiplicity {}", parts.join(" "))?;
    }
    opts.emit(value, text)
}

pub fn graph(file: &str, ribbon: bool, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let g = graph_of_quiver(&inst.quiver);
    if ribbon {
        let m: Vec<(String, u32)> = inst
            .multiplicity
            .entries(&inst.quiver)
            .into_iter()
            .filter(|&(_, v)| v != 1)
            .collect();
        return Ok(ribbon_graph_spec_string(&g, &m));
    }
    let cert = g.is_bipartite();
    let nodes: Vec<(String, Vec<String>)> = g.cyclic_orders();
    let edges: Vec<Value> = (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.edge_ends(e);
            json!({"edge": g.edge_name(e), "ends": [g.node_name(a), g.node_name(b)]})
        })
        .collect();
    let certificate = match &cert {
        BipartiteCertificate::Coloring(c) => json!({
            "bipartite": true,
            "coloring": (0..g.node_count()).map(|v| (g.node_name(v), c[v])).collect::<Vec<_>>(),
        }),
        BipartiteCertificate::OddWalk(w) => json!({
            "bipartite": false,
            "odd_walk": {
                "nodes": w.nodes.iter().map(|&v| g.node_name(v)).collect::<Vec<_>>(),
                "edges": w.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
            },
        }),
    };
    let value = json!({"name": g.name(), "nodes": nodes, "edges": edges, "certificate": certificate});

    let mut text = String::new();
    writeln!(text, "{}: {} nodes, {} edges", g.name(), g.node_count(), g.edge_count())?;
    for v in 0..g.node_count() {
        writeln!(text, "  node {}: {}", g.node_name(v), g.cyclic_order_string(v))?;
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        writeln!(text, "  edge {}: {} -- {}", g.edge_name(e), g.node_name(a), g.node_name(b))?;
    }
    match &cert {
        BipartiteCertificate::Coloring(c) => writeln!(text, "bipartite; coloring {}", signs(c))?,
        BipartiteCertificate::OddWalk(w) => {
            let names: Vec<&str> = w.edges.iter().map(|&e| g.edge_name(e)).collect();
            writeln!(text, "not bipartite; odd closed walk of length {} through {}", w.edges.len(), names.join(" "))?
        }
    }
    opts.emit(value, text)
}

pub fn basis(file: &str, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let q = &inst.quiver;
    let basis = CanonicalBasis::for_multiplicity(q, &Polarization::standard(q), &inst.multiplicity)?;
    let rank = rank_formula_check(q, &inst.multiplicity);
    let kind = |e: &BasisElem| match e {
        BasisElem::Idempotent(_) => "idempotent",
        BasisElem::Top(_) => "top",
        BasisElem::Arrow { .. } => "path",
    };
    let names = basis.names(q);
    let elems: Vec<Value> =
        basis.elems().iter().zip(&names).map(|(e, n)| json!({"name": n, "kind": kind(e)})).collect();
    let value = json!({"basis": elems, "rank": rank.rank, "basis_size": basis.len()});
    let mut text = String::new();
    for (e, n) in basis.elems().iter().zip(&names) {
        writeln!(text, "{n:>8}  {}", kind(e))?;
    }
    writeln!(text, "rank formula {} ; |B| = {}", rank.rank, basis.len())?;
    if rank.rank != basis.len() {
        bail!("rank formula gives {} but the basis has {} elements", rank.rank, basis.len());
    }
    opts.emit(value, text)
}

pub fn frobenius(file: &str, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let q = &inst.quiver;
    let eps = Polarization::standard(q);
    let basis = CanonicalBasis::new(q, &eps);
    let names = basis.names(q);
    let mut table = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let v = basis.frobenius_of_product(q, &Rationals, i, j);
            if !v.is_zero() {
                table.push((names[i].clone(), names[j].clone(), v.to_string()));
            }
        }
    }
    let report = check_nu_symmetry(q, &eps, &Rationals);
    let value = json!({"values": table, "nu_symmetry": report});
    let mut text = String::new();
    for (a, b, v) in &table {
        writeln!(text, "phi({a} * {b}) = {v}")?;
    }
    let pairs: Vec<String> = report.nonzero_pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    writeln!(text, "nonzero pairs {{{}}}", pairs.join(", "))?;
    writeln!(text, "matches prediction: {}", report.nonzero_list_matches)?;
    writeln!(
        text,
        "nu-symmetry: {} ({} pairs, {} violations)",
        if report.passed() { "holds" } else { "FAILS" },
        report.pairs_checked,
        report.violations.len()
    )?;
    opts.emit(value, text)
}

pub fn cartan(file: &str, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let q = &inst.quiver;
    let c = cartan_matrix(q, &Polarization::standard(q));
    let k = cartan_rank_check(q);
    let value = json!({"vertices": q.vertex_names(), "matrix": c.entries, "cartan_rank": k});
    let mut text = String::new();
    for row in &c.entries {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(text, "{}", cells.join(""))?;
    }
    writeln!(text, "rank {} ; nodes {} ; components {}", k.rank, k.nodes, k.components)?;
    writeln!(text, "bipartite {} ; rank = nodes - components: {}", k.bipartite, k.formula_holds)?;
    writeln!(text, "rank = nodes - bipartite components: {}", k.refined_holds)?;
    opts.emit(value, text)
}

fn quotient_in<F: Field>(
    field: F,
    inst: &Instance,
    m: &MultiplicityMap,
    kind: QuotientKind,
    opts: &Options,
) -> Result<String> {
    let q = &inst.quiver;
    let a = BrauerQuotient::build(field, q, m, &Polarization::standard(q), kind);
    let config = opts.decide_config().oracle;
    let socle = a.socle();
    let outcome = is_symmetric_oracle(a.algebra(), &a.candidate_forms(), Some(&socle), &config);
    let labels = a.algebra().labels();
    let show = |v: &[F::Elem]| -> Vec<(String, String)> {
        labels.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.to_string())).collect()
    };
    let socle_named: Vec<Vec<(String, String)>> = socle.iter().map(|v| show(v)).collect();
    let verdict = match &outcome.verdict {
        SymmetryVerdict::Symmetric { witness, .. } => json!({"symmetric": true, "witness": show(witness)}),
        SymmetryVerdict::NotSymmetric { .. } => json!({"symmetric": false}),
        SymmetryVerdict::ProbablyNotSymmetric { trials, bound } => {
            json!({"symmetric": "probably-not", "trials": trials, "bound": bound})
        }
        SymmetryVerdict::Undecided { reason } => json!({"symmetric": "undecided", "reason": reason}),
    };
    let kind_name = match kind {
        QuotientKind::Twisted => "twisted",
        QuotientKind::Untwisted => "untwisted",
    };
    let value = json!({
        "kind": kind_name,
        "dim": a.dim(),
        "expected_dim": expected_dimension(q, m),
        "admissible": a.is_admissible(),
        "nonzero_constants": a.algebra().nonzero_constants(),
        "basis": labels,
        "socle": socle_named,
        "symmetric_forms": outcome.symmetric_forms,
        "verdict": verdict,
    });
    let mut text = String::new();
    writeln!(text, "{kind_name} quotient of {} over {}", q.name(), a.algebra().field().name())?;
    writeln!(text, "dim {} (expected {}) ; admissible {}", a.dim(), expected_dimension(q, m), a.is_admissible())?;
    writeln!(text, "nonzero structure constants {}", a.algebra().nonzero_constants())?;
    writeln!(text, "basis {}", labels.join(" "))?;
    for v in &socle_named {
        let terms: Vec<String> = v.iter().map(|(l, c)| if c == "1" { l.clone() } else { format!("{c}*{l}") }).collect();
        writeln!(text, "socle {}", terms.join(" + "))?;
    }
    writeln!(text, "symmetric forms: dim {}", outcome.symmetric_forms)?;
    match &outcome.verdict {
        SymmetryVerdict::Symmetric { .. } => writeln!(text, "symmetric")?,
        SymmetryVerdict::NotSymmetric { .. } => writeln!(text, "not symmetric")?,
        SymmetryVerdict::ProbablyNotSymmetric { trials, .. } => {
            writeln!(text, "probably not symmetric ({trials} random trials)")?
        }
        SymmetryVerdict::Undecided { reason } => writeln!(text, "undecided: {reason}")?,
    }
    opts.emit(value, text)
}

pub fn quotient(
    file: &str,
    field: FieldSpec,
    uniform: Option<u32>,
    untwisted: bool,
    opts: &Options,
) -> Result<String> {
    let inst = load(file)?;
    let m = multiplicity(&inst, uniform);
    let kind = if untwisted { QuotientKind::Untwisted } else { QuotientKind::Twisted };
    match field {
        FieldSpec::Prime(p) => quotient_in(PrimeField::new(p)?, &inst, &m, kind, opts),
        FieldSpec::Rationals => quotient_in(Rationals, &inst, &m, kind, opts),
    }
}

pub fn decide(file: &str, field: FieldSpec, uniform: Option<u32>, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let m = multiplicity(&inst, uniform);
    let report = decide_with_field(&inst.quiver, &m, field, &opts.decide_config())?;
    let mut text = String::new();
    writeln!(text, "{} over {}", report.instance, report.field)?;
    writeln!(text, "{}", report.summary())?;
    let c = &report.conditions;
    let labels = [
        "order symmetric",
        "quotient symmetric",
        "bipartite or char 2",
        "trivial involution",
        "psi isomorphism",
        "Brauer graph algebra",
    ];
    for (k, (label, status)) in labels.iter().zip(c.statuses()).enumerate() {
        writeln!(text, "  ({}) {label}: {}", k + 1, status.word())?;
    }
    for v in &report.violations {
        writeln!(text, "  violation: {v}")?;
    }
    writeln!(text, "  certificates: {}", serde_json::to_string(&report.certificates)?)?;
    let value = serde_json::to_value(&report)?;
    if !report.consistency {
        bail!("{text}inconsistent report");
    }
    opts.emit(value, text)
}

pub fn corpus(fields: &[FieldSpec], multiplicities: &[u32], opts: &Options) -> Result<String> {
    let reports = match batch(&corpus::all(), fields, multiplicities, &opts.decide_config()) {
        Ok(r) => r,
        Err(BatchError::Inconsistent { count, reproducer, .. }) => {
            bail!("{count} inconsistent report(s); reproducer:\n{reproducer}")
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    for r in &reports {
        let m = r.multiplicity.first().map_or(1, |(_, v)| *v);
        writeln!(text, "{:<10} {:<6} m={m}  {}", r.instance, r.field, r.summary())?;
    }
    writeln!(text, "{} reports, all consistent", reports.len())?;
    opts.emit(serde_json::to_value(&reports)?, text)
}

pub fn resolve(file: &str, opts: &Options) -> Result<String> {
    let inst = load(file)?;
    let q = &inst.quiver;
    let rows: Vec<(String, String, usize)> = q
        .arrow_ids()
        .map(|a| (q.arrow_name(a).to_string(), q.arrow_name(q.resolution_successor(a)).to_string(), q.resolution_period(a)))
        .collect();
    let mut text = String::new();
    for (a, b, p) in &rows {
        writeln!(text, "{a} -> {b}  period {p}")?;
    }
    let value = json!(rows
        .iter()
        .map(|(a, b, p)| json!({"arrow": a, "successor": b, "period": p}))
        .collect::<Vec<_>>());
    opts.emit(value, text)
}
