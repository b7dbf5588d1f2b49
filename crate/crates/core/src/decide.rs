//! Evaluates the six symmetry conditions on one instance and cross-checks
//! the implications between them.
//!
//! 1. the order is symmetric;
//! 2. `ĀI` is symmetric;
//! 3. the graph is bipartite or `char k = 2`;
//! 4. some polarization has trivial involution;
//! 5. `ĀI ≅ B̄I` through the constructed `ψ`;
//! 6. `ĀI` is isomorphic to some Brauer graph algebra.
//!
//! (1)–(4) are equivalent, (5) implies (6) and (6) implies the rest.

use std::fmt::Display;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::CorpusEntry;
use crate::fd::oracle::{is_symmetric_oracle, NonSymmetryProof, OracleConfig, SymmetryVerdict};
use crate::fd::psi::{construct_psi_isomorphism, describe_psi, PsiInapplicable};
use crate::fd::{
    check_canonical_bimodule_twist, check_nakayama_involution_bar, compare_socle_quotients, expected_dimension,
    BrauerQuotient, NuBarReport,
};
use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals, Scalar};
use crate::polarization::{enumerate_polarizations, find_sigma_stable, involution_of, Polarization};
use crate::quiver::{GentleQuiver, MultiplicityMap};
use crate::ribbon::{graph_of_quiver, BipartiteCertificate};
use crate::sign::Sign;
use crate::specfile::to_spec_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    /// Only randomized evidence against.
    ProbablyFails,
    Unknown,
}

impl Status {
    pub fn is_certain(self) -> bool {
        matches!(self, Status::Holds | Status::Fails)
    }

    pub fn word(self) -> &'static str {
        match self {
            Status::Holds => "true",
            Status::Fails => "false",
            Status::ProbablyFails => "probably-false",
            Status::Unknown => "unknown",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Status copied from an equivalent condition.
    Delegated { to: String, note: String },
    Oracle { algebra: String, dim: usize, symmetric_forms: usize, verdict: SymmetryVerdict<String> },
    Graph { bipartite: bool, characteristic: u64 },
    Polarizations {
        checked: usize,
        trivial: Option<Vec<(String, Sign)>>,
        sigma_stable: Option<Vec<(String, Sign)>>,
    },
    Psi { identity: bool, algebra_map: bool, bijective: bool, scalings: Vec<(String, String)>, images: Vec<(String, String)> },
    PsiInapplicable { reason: String, fallback: String },
    Implied { from: String, note: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub status: Status,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conditions {
    pub c1: Condition,
    pub c2: Condition,
    pub c3: Condition,
    pub c4: Condition,
    pub c5: Condition,
    pub c6: Condition,
}

impl Conditions {
    pub fn statuses(&self) -> [Status; 6] {
        [self.c1.status, self.c2.status, self.c3.status, self.c4.status, self.c5.status, self.c6.status]
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Coloring { nodes: Vec<(String, Sign)> },
    OddWalk { nodes: Vec<String>, edges: Vec<String> },
    SymmetrizingForm { algebra: String, terms: Vec<(String, String)> },
    CommonRadical { algebra: String, element: Vec<(String, String)>, in_socle: Option<bool> },
    ExhaustiveSearch { algebra: String, forms: u64 },
    Psi { images: Vec<(String, String)> },
    NoRoot { node: String, degree: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientChecks {
    pub dim: usize,
    pub expected_dim: usize,
    pub admissible: bool,
    pub twisted_associative: bool,
    pub nu_bar: NuBarReport,
    pub twist_violations: usize,
    pub twist_nondegenerate: bool,
    /// The top form of `B̄I` is symmetric and nondegenerate.
    pub bga_top_form_symmetrizes: bool,
    pub socle_dims: (usize, usize),
    pub socle_quotients_equal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub instance: String,
    pub field: String,
    pub multiplicity: Vec<(String, u32)>,
    pub conditions: Conditions,
    pub consistency: bool,
    pub violations: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub quotient: QuotientChecks,
}

impl SymmetryReport {
    /// One-line text rendering, e.g.
    /// `(1) false; (2) not-symmetric; (3) false (loop); ...; consistent`.
    pub fn summary(&self) -> String {
        let c = &self.conditions;
        let oracle_word = match c.c2.status {
            Status::Holds => "symmetric",
            Status::Fails => "not-symmetric",
            Status::ProbablyFails => "probably-not-symmetric",
            Status::Unknown => "undecided",
        };
        let c3_reason = self
            .certificates
            .iter()
            .find_map(|cert| match cert {
                Certificate::OddWalk { edges, .. } if edges.len() == 1 => Some("loop".to_string()),
                Certificate::OddWalk { edges, .. } => Some(format!("odd cycle of length {}", edges.len())),
                Certificate::Coloring { .. } => Some("bipartite".to_string()),
                _ => None,
            })
            .unwrap_or_else(|| "char 2".to_string());
        let c3_reason = if matches!(c.c3.evidence, Evidence::Graph { characteristic: 2, .. }) {
            "char 2".to_string()
        } else {
            c3_reason
        };
        format!(
            "(1) {}; (2) {oracle_word}; (3) {} ({c3_reason}); (4) {}; (5) {}; (6) {}; {}",
            c.c1.status.word(),
            c.c3.status.word(),
            c.c4.status.word(),
            c.c5.status.word(),
            c.c6.status.word(),
            if self.consistency { "consistent" } else { "INCONSISTENT" },
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecideConfig {
    pub oracle: OracleConfig,
    /// Polarizations are enumerated up to this many vertices.
    pub max_enumerated_vertices: usize,
}

impl Default for DecideConfig {
    fn default() -> Self {
        Self { oracle: OracleConfig::default(), max_enumerated_vertices: 16 }
    }
}

fn labelled<E: Scalar>(labels: &[String], v: &[E]) -> Vec<(String, String)> {
    labels.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.to_string())).collect()
}

fn stringify<E: Display>(v: SymmetryVerdict<E>) -> SymmetryVerdict<String> {
    let strs = |xs: Vec<E>| xs.into_iter().map(|x| x.to_string()).collect();
    match v {
        SymmetryVerdict::Symmetric { witness, strategy } => SymmetryVerdict::Symmetric { witness: strs(witness), strategy },
        SymmetryVerdict::NotSymmetric { proof } => SymmetryVerdict::NotSymmetric {
            proof: match proof {
                NonSymmetryProof::CommonRadical { element, in_socle } => {
                    NonSymmetryProof::CommonRadical { element: strs(element), in_socle }
                }
                NonSymmetryProof::Exhaustive { forms } => NonSymmetryProof::Exhaustive { forms },
            },
        },
        SymmetryVerdict::ProbablyNotSymmetric { trials, bound } => SymmetryVerdict::ProbablyNotSymmetric { trials, bound },
        SymmetryVerdict::Undecided { reason } => SymmetryVerdict::Undecided { reason },
    }
}

/// Implication checks between reported statuses. `roots_missing` marks
/// instances where `ψ` could not be built for lack of roots of `−1`.
pub fn lattice_violations(c: &Conditions, roots_missing: bool) -> Vec<String> {
    let s = c.statuses();
    let mut out = Vec::new();
    let disagree = |x: Status, y: Status| {
        (x.is_certain() && y.is_certain() && x != y)
            || (x == Status::Holds && y == Status::ProbablyFails)
            || (y == Status::Holds && x == Status::ProbablyFails)
    };
    for i in 0..4 {
        for j in i + 1..4 {
            if disagree(s[i], s[j]) {
                out.push(format!("({}) is {} but ({}) is {}", i + 1, s[i].word(), j + 1, s[j].word()));
            }
        }
    }
    if s[4] == Status::Holds && !matches!(s[5], Status::Holds | Status::Unknown) {
        out.push(format!("(5) holds but (6) is {}", s[5].word()));
    }
    for (k, name) in [(4, "(5)"), (5, "(6)")] {
        if s[k] == Status::Holds {
            for (i, st) in s.iter().enumerate().take(4) {
                if matches!(st, Status::Fails | Status::ProbablyFails) {
                    out.push(format!("{name} holds but ({}) is {}", i + 1, st.word()));
                }
            }
        }
    }
    if s[2] == Status::Holds && s[4] != Status::Holds && !roots_missing {
        out.push(format!("(3) holds with all roots present but (5) is {}", s[4].word()));
    }
    out
}

pub fn decide<F: Field>(q: &GentleQuiver, m: &MultiplicityMap, field: F, config: &DecideConfig) -> SymmetryReport {
    let characteristic = field.characteristic();
    let graph = graph_of_quiver(q);
    let bip = graph.is_bipartite();
    let mut certificates = Vec::new();
    let mut violations = Vec::new();
    match &bip {
        BipartiteCertificate::Coloring(colors) => certificates.push(Certificate::Coloring {
            nodes: colors.iter().enumerate().map(|(v, s)| (graph.node_name(v).to_string(), *s)).collect(),
        }),
        BipartiteCertificate::OddWalk(w) => certificates.push(Certificate::OddWalk {
            nodes: w.nodes.iter().map(|&v| graph.node_name(v).to_string()).collect(),
            edges: w.edges.iter().map(|&e| graph.edge_name(e).to_string()).collect(),
        }),
    }

    // (3)
    let c3 = Condition {
        status: Status::from_bool(bip.is_bipartite() || characteristic == 2),
        evidence: Evidence::Graph { bipartite: bip.is_bipartite(), characteristic },
    };

    // (4)
    let stable = find_sigma_stable(q).ok();
    let (checked, trivial) = if q.vertex_count() <= config.max_enumerated_vertices {
        let all = enumerate_polarizations(q);
        let found = all.iter().find(|eps| involution_of(q, eps, characteristic).is_trivial()).cloned();
        (all.len(), found)
    } else {
        let found = if characteristic == 2 { Some(Polarization::standard(q)) } else { stable.clone() };
        (0, found)
    };
    if characteristic != 2 && trivial.is_some() != stable.is_some() {
        violations.push("enumerated polarizations disagree with the colouring search".to_string());
    }
    if let Some(eps) = &stable {
        if !involution_of(q, eps, characteristic).is_trivial() {
            violations.push("σ-stable polarization has nontrivial involution".to_string());
        }
    }
    let c4 = Condition {
        status: Status::from_bool(trivial.is_some()),
        evidence: Evidence::Polarizations {
            checked,
            trivial: trivial.as_ref().map(|e| e.named(q)),
            sigma_stable: stable.as_ref().map(|e| e.named(q)),
        },
    };

    // quotients over the standard polarization
    let eps = Polarization::standard(q);
    let twisted = BrauerQuotient::twisted(field.clone(), q, m, &eps);
    let untwisted = BrauerQuotient::untwisted(field.clone(), q, m, &eps);
    let labels = twisted.algebra().labels().to_vec();
    let inv = involution_of(q, &eps, characteristic);
    let nu_bar = check_nakayama_involution_bar(&twisted, &inv);
    let twist = check_canonical_bimodule_twist(&twisted, &inv);
    let bga_form = untwisted.top_form();
    let socles = compare_socle_quotients(&twisted, &untwisted);
    let small = twisted.dim() <= config.oracle.max_dim;
    let quotient = QuotientChecks {
        dim: twisted.dim(),
        expected_dim: expected_dimension(q, m),
        admissible: twisted.is_admissible(),
        twisted_associative: !small || twisted.algebra().associativity_violation().is_none(),
        nu_bar,
        twist_violations: twist.violations.len(),
        twist_nondegenerate: twist.nondegenerate,
        bga_top_form_symmetrizes: untwisted.algebra().is_symmetric_form(&bga_form)
            && untwisted.algebra().is_nondegenerate(&bga_form),
        socle_dims: socles.socle_dim,
        socle_quotients_equal: socles.tables_equal,
    };
    if quotient.dim != quotient.expected_dim {
        violations.push(format!("dim ĀI = {} but Σ m n = {}", quotient.dim, quotient.expected_dim));
    }
    if !quotient.nu_bar.passed() || quotient.twist_violations > 0 || !quotient.twist_nondegenerate {
        violations.push("ν̄ or the twisted Frobenius form failed verification".to_string());
    }
    if !quotient.bga_top_form_symmetrizes {
        violations.push("B̄I top form is not symmetrizing".to_string());
    }

    // (2)
    let candidates = twisted.candidate_forms();
    let socle = twisted.socle();
    let outcome = is_symmetric_oracle(twisted.algebra(), &candidates, Some(&socle), &config.oracle);
    let c2_status = match &outcome.verdict {
        SymmetryVerdict::Symmetric { witness, .. } => {
            certificates.push(Certificate::SymmetrizingForm { algebra: "ĀI".into(), terms: labelled(&labels, witness) });
            Status::Holds
        }
        SymmetryVerdict::NotSymmetric { proof } => {
            certificates.push(match proof {
                NonSymmetryProof::CommonRadical { element, in_socle } => Certificate::CommonRadical {
                    algebra: "ĀI".into(),
                    element: labelled(&labels, element),
                    in_socle: *in_socle,
                },
                NonSymmetryProof::Exhaustive { forms } => {
                    Certificate::ExhaustiveSearch { algebra: "ĀI".into(), forms: *forms }
                }
            });
            Status::Fails
        }
        SymmetryVerdict::ProbablyNotSymmetric { .. } => Status::ProbablyFails,
        SymmetryVerdict::Undecided { .. } => Status::Unknown,
    };
    let c2 = Condition {
        status: c2_status,
        evidence: Evidence::Oracle {
            algebra: "ĀI".into(),
            dim: outcome.dim,
            symmetric_forms: outcome.symmetric_forms,
            verdict: stringify(outcome.verdict),
        },
    };

    // (5)
    let not_iso = match c2_status {
        Status::Fails | Status::ProbablyFails => c2_status,
        _ => Status::Unknown,
    };
    let mut roots_missing = false;
    let c5 = match construct_psi_isomorphism(&twisted, &untwisted) {
        Ok(psi) => {
            let images = describe_psi(q, &twisted, &psi);
            if !psi.verified() {
                violations.push("constructed ψ failed verification".to_string());
            } else {
                certificates.push(Certificate::Psi { images: images.clone() });
            }
            Condition {
                status: if psi.verified() { Status::Holds } else { Status::Unknown },
                evidence: Evidence::Psi {
                    identity: psi.identity,
                    algebra_map: psi.algebra_map,
                    bijective: psi.bijective,
                    scalings: psi.scalings.iter().map(|(a, l)| (a.clone(), l.to_string())).collect(),
                    images,
                },
            }
        }
        Err(err) => {
            if let PsiInapplicable::NoRoot { node, degree } = &err {
                roots_missing = true;
                certificates.push(Certificate::NoRoot { node: node.clone(), degree: *degree });
            }
            Condition {
                status: not_iso,
                evidence: Evidence::PsiInapplicable {
                    reason: err.to_string(),
                    fallback: "B̄I is symmetric, so ĀI ≇ B̄I whenever ĀI is not symmetric".into(),
                },
            }
        }
    };

    // (6)
    let c6 = if c5.status == Status::Holds {
        Condition {
            status: Status::Holds,
            evidence: Evidence::Implied { from: "(5)".into(), note: "B̄I is a Brauer graph algebra".into() },
        }
    } else {
        Condition {
            status: not_iso,
            evidence: Evidence::Implied {
                from: "(2)".into(),
                note: "only refuted when ĀI is not symmetric, since every Brauer graph algebra is".into(),
            },
        }
    };

    // (1)
    let c1 = Condition {
        status: c3.status,
        evidence: Evidence::Delegated {
            to: "(3)".into(),
            note: "order symmetry is equivalent to (3); no direct order-level computation is made".into(),
        },
    };

    let conditions = Conditions { c1, c2, c3, c4, c5, c6 };
    violations.extend(lattice_violations(&conditions, roots_missing));
    SymmetryReport {
        instance: q.name().to_string(),
        field: field.name(),
        multiplicity: m.entries(q),
        consistency: violations.is_empty(),
        conditions,
        violations,
        certificates,
        quotient,
    }
}

pub fn decide_with_field(
    q: &GentleQuiver,
    m: &MultiplicityMap,
    spec: FieldSpec,
    config: &DecideConfig,
) -> Result<SymmetryReport, FieldError> {
    Ok(match spec {
        FieldSpec::Prime(p) => decide(q, m, PrimeField::new(p)?, config),
        FieldSpec::Rationals => decide(q, m, Rationals, config),
    })
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("{count} inconsistent report(s); reproducer for the first:\n{reproducer}")]
    Inconsistent { count: usize, reproducer: String, reports: Vec<SymmetryReport> },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Runs [`decide`] over a grid of instances, fields and uniform
/// multiplicities; fails on any inconsistent report.
pub fn batch(
    entries: &[CorpusEntry],
    fields: &[FieldSpec],
    multiplicities: &[u32],
    config: &DecideConfig,
) -> Result<Vec<SymmetryReport>, BatchError> {
    let mut reports = Vec::new();
    let mut bad = Vec::new();
    let mut reproducer = None;
    for entry in entries {
        let inst = entry.instance();
        for &mult in multiplicities {
            let m = MultiplicityMap::uniform(&inst.quiver, mult);
            for &field in fields {
                let report = decide_with_field(&inst.quiver, &m, field, config)?;
                if !report.consistency {
                    reproducer.get_or_insert_with(|| {
                        format!(
                            "# field {field}, seed {}\n# {}\n{}",
                            config.oracle.seed,
                            report.violations.join("; "),
                            to_spec_string(&inst.quiver, &m)
                        )
                    });
                    bad.push(report.clone());
                }
                reports.push(report);
            }
        }
    }
    match reproducer {
        Some(reproducer) => Err(BatchError::Inconsistent { count: bad.len(), reproducer, reports: bad }),
        None => Ok(reports),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn run(name: &str, field: FieldSpec, m: u32) -> SymmetryReport {
        let inst = corpus::get(name).unwrap().instance();
        let mm = MultiplicityMap::uniform(&inst.quiver, m);
        decide_with_field(&inst.quiver, &mm, field, &DecideConfig::default()).unwrap()
    }

    #[test]
    fn loop2_depends_on_characteristic() {
        let r = run("loop2", FieldSpec::Prime(3), 1);
        assert!(r.consistency, "{:?}", r.violations);
        assert_eq!(r.conditions.c2.status, Status::Fails);
        assert_eq!(r.conditions.c3.status, Status::Fails);
        assert_eq!(r.conditions.c4.status, Status::Fails);
        assert!(r.summary().contains("(2) not-symmetric; (3) false (loop)"), "{}", r.summary());
        let r = run("loop2", FieldSpec::Prime(2), 1);
        assert!(r.conditions.statuses().iter().all(|&s| s == Status::Holds), "{}", r.summary());
    }

    #[test]
    fn line_is_symmetric_over_q() {
        let r = run("line3", FieldSpec::Rationals, 1);
        assert!(r.consistency);
        assert!(r.conditions.statuses().iter().all(|&s| s == Status::Holds), "{}", r.summary());
    }
}
