//! Plain-text instance files.
//!
//! ```text
//! # comment
//! name: loop2
//! vertices: 1
//! arrow a: 1 -> 1
//! arrow b: 1 -> 1
//! sigma: (a b)
//! multiplicity: a = 2
//! ```
//!
//! `relations: b.a, a.b` (zero relations, later arrow first) may replace
//! `sigma:`. A `ribbon_graph { node V: e1 e2 ... }` block may replace the
//! quiver lines; multiplicity keys then name nodes.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{GentleQuiver, MultiplicityMap, QuiverError, RawQuiver, SuccessorData};
use crate::ribbon::{quiver_from_ribbon_graph, RibbonError, RibbonGraph};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

fn parse_err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecSource {
    Quiver(RawQuiver),
    RibbonGraph(Vec<(String, Vec<String>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub name: String,
    pub source: SpecSource,
    pub multiplicity: Vec<(String, u32)>,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub quiver: GentleQuiver,
    pub multiplicity: MultiplicityMap,
    pub ribbon_graph: Option<RibbonGraph>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn ident(line: usize, s: &str, what: &str) -> Result<String, SpecError> {
    let s = s.trim();
    if is_ident(s) {
        Ok(s.to_string())
    } else {
        Err(parse_err(line, format!("invalid {what} name {s:?}")))
    }
}

fn parse_sigma(line: usize, s: &str) -> Result<Vec<Vec<String>>, SpecError> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| parse_err(line, "sigma cycles must be written as (a b ...)"))?;
        let close = inner.find(')').ok_or_else(|| parse_err(line, "unclosed cycle in sigma"))?;
        let cycle = inner[..close]
            .split_whitespace()
            .map(|a| ident(line, a, "arrow"))
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.is_empty() {
            return Err(parse_err(line, "empty cycle in sigma"));
        }
        cycles.push(cycle);
        rest = inner[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn parse_relations(line: usize, s: &str) -> Result<Vec<(String, String)>, SpecError> {
    s.split(',')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            let (later, earlier) =
                r.split_once('.').ok_or_else(|| parse_err(line, format!("relation {r:?} is not of the form b.a")))?;
            Ok((ident(line, later, "arrow")?, ident(line, earlier, "arrow")?))
        })
        .collect()
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut name = None;
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows = Vec::new();
        let mut sigma = None;
        let mut relations = None;
        let mut multiplicity: Vec<(String, u32)> = Vec::new();
        let mut ribbon: Option<Vec<(String, Vec<String>)>> = None;
        let mut in_ribbon = false;
        let mut seen_arrows = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if in_ribbon {
                if content == "}" {
                    in_ribbon = false;
                    continue;
                }
                let body = content
                    .strip_prefix("node ")
                    .ok_or_else(|| parse_err(line, "expected `node NAME: edges...` or `}`"))?;
                let (node, edges) = body.split_once(':').ok_or_else(|| parse_err(line, "missing ':' after node name"))?;
                let node = ident(line, node, "node")?;
                let edges =
                    edges.split_whitespace().map(|e| ident(line, e, "edge")).collect::<Result<Vec<_>, _>>()?;
                let nodes = ribbon.get_or_insert_with(Vec::new);
                if nodes.iter().any(|(n, _)| *n == node) {
                    return Err(parse_err(line, format!("duplicate node {node}")));
                }
                nodes.push((node, edges));
                continue;
            }
            if let Some(rest) = content.strip_prefix("ribbon_graph") {
                if rest.trim() != "{" {
                    return Err(parse_err(line, "expected `ribbon_graph {`"));
                }
                if ribbon.is_some() {
                    return Err(parse_err(line, "duplicate ribbon_graph block"));
                }
                ribbon = Some(Vec::new());
                in_ribbon = true;
                continue;
            }
            if let Some(rest) = content.strip_prefix("arrow ") {
                let (arrow, ends) = rest.split_once(':').ok_or_else(|| parse_err(line, "missing ':' after arrow name"))?;
                let arrow = ident(line, arrow, "arrow")?;
                let (src, tgt) = ends.split_once("->").ok_or_else(|| parse_err(line, "expected `SRC -> TGT`"))?;
                if !seen_arrows.insert(arrow.clone()) {
                    return Err(parse_err(line, format!("duplicate arrow {arrow}")));
                }
                arrows.push((arrow, ident(line, src, "vertex")?, ident(line, tgt, "vertex")?));
                continue;
            }
            let (key, value) =
                content.split_once(':').ok_or_else(|| parse_err(line, format!("unrecognised line {content:?}")))?;
            let value = value.trim();
            match key.trim() {
                "name" => {
                    if name.replace(ident(line, value, "instance")?).is_some() {
                        return Err(parse_err(line, "duplicate name"));
                    }
                }
                "vertices" => {
                    let vs = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|v| !v.is_empty())
                        .map(|v| ident(line, v, "vertex"))
                        .collect::<Result<Vec<_>, _>>()?;
                    if let Some(dup) = vs.iter().enumerate().find(|(i, v)| vs[..*i].contains(v)) {
                        return Err(parse_err(line, format!("duplicate vertex {}", dup.1)));
                    }
                    if vertices.replace(vs).is_some() {
                        return Err(parse_err(line, "duplicate vertices line"));
                    }
                }
                "sigma" => {
                    if sigma.replace(parse_sigma(line, value)?).is_some() {
                        return Err(parse_err(line, "duplicate sigma line"));
                    }
                }
                "relations" => {
                    if relations.replace(parse_relations(line, value)?).is_some() {
                        return Err(parse_err(line, "duplicate relations line"));
                    }
                }
                "multiplicity" => {
                    let (k, v) = value.split_once('=').ok_or_else(|| parse_err(line, "expected `NAME = INT`"))?;
                    let k = ident(line, k, "multiplicity key")?;
                    let v: u32 =
                        v.trim().parse().map_err(|_| parse_err(line, format!("invalid multiplicity {:?}", v.trim())))?;
                    if v == 0 {
                        return Err(parse_err(line, "multiplicities must be positive"));
                    }
                    if multiplicity.iter().any(|(x, _)| *x == k) {
                        return Err(parse_err(line, format!("duplicate multiplicity for {k}")));
                    }
                    multiplicity.push((k, v));
                }
                other => return Err(parse_err(line, format!("unknown key {other:?}"))),
            }
        }
        let last = text.lines().count().max(1);
        if in_ribbon {
            return Err(parse_err(last, "unclosed ribbon_graph block"));
        }
        let name = name.unwrap_or_else(|| "unnamed".to_string());
        let source = match ribbon {
            Some(nodes) => {
                if vertices.is_some() || !arrows.is_empty() || sigma.is_some() || relations.is_some() {
                    return Err(parse_err(last, "ribbon_graph input cannot be mixed with quiver lines"));
                }
                SpecSource::RibbonGraph(nodes)
            }
            None => {
                let vertices = vertices.ok_or_else(|| parse_err(last, "missing `vertices:` line"))?;
                let successor = match (sigma, relations) {
                    (Some(s), None) => SuccessorData::Sigma(s),
                    (None, Some(r)) => SuccessorData::Relations(r),
                    (Some(_), Some(_)) => return Err(parse_err(last, "give either sigma or relations, not both")),
                    (None, None) => return Err(parse_err(last, "missing `sigma:` or `relations:` line")),
                };
                SpecSource::Quiver(RawQuiver { name: name.clone(), vertices, arrows, successor })
            }
        };
        Ok(Self { name, source, multiplicity })
    }

    pub fn load(&self) -> Result<Instance, SpecError> {
        match &self.source {
            SpecSource::Quiver(raw) => {
                let quiver = GentleQuiver::validate(raw)?;
                let multiplicity = MultiplicityMap::from_pairs(&quiver, 1, &self.multiplicity)?;
                Ok(Instance { quiver, multiplicity, ribbon_graph: None })
            }
            SpecSource::RibbonGraph(nodes) => {
                let graph = RibbonGraph::from_cyclic_orders(self.name.clone(), nodes)?;
                let quiver = quiver_from_ribbon_graph(&graph)?;
                let pairs: Vec<(String, u32)> = self.multiplicity.iter().map(|(n, v)| (format!("{n}_1"), *v)).collect();
                let multiplicity = MultiplicityMap::from_pairs(&quiver, 1, &pairs)?;
                Ok(Instance { quiver, multiplicity, ribbon_graph: Some(graph) })
            }
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, SpecError> {
    SpecFile::parse(text)?.load()
}

/// Quiver form with `sigma:`; multiplicities other than one are listed by
/// orbit representative.
pub fn to_spec_string(q: &GentleQuiver, m: &MultiplicityMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", q.name());
    let _ = writeln!(out, "vertices: {}", q.vertex_names().join(" "));
    for a in q.arrows() {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target));
    }
    let _ = writeln!(out, "sigma: {}", q.sigma_string());
    for (rep, value) in m.entries(q) {
        if value != 1 {
            let _ = writeln!(out, "multiplicity: {rep} = {value}");
        }
    }
    out
}

/// `ribbon_graph` form.
pub fn ribbon_graph_spec_string(g: &RibbonGraph, m: &[(String, u32)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", g.name());
    out.push_str("ribbon_graph {\n");
    for (node, edges) in g.cyclic_orders() {
        let _ = writeln!(out, "  node {node}: {}", edges.join(" "));
    }
    out.push_str("}\n");
    for (node, value) in m {
        let _ = writeln!(out, "multiplicity: {node} = {value}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP2: &str = "# two loops\nname: loop2\nvertices: 1\narrow a: 1 -> 1\narrow b: 1 -> 1\nsigma: (a b)\n";

    #[test]
    fn parses_and_round_trips() {
        let inst = parse_instance(LOOP2).unwrap();
        assert_eq!(inst.quiver.arrow_count(), 2);
        let text = to_spec_string(&inst.quiver, &inst.multiplicity);
        let again = parse_instance(&text).unwrap();
        assert_eq!(again.quiver, inst.quiver);
    }

    #[test]
    fn relations_and_multiplicity() {
        let text = "name: nodal\nvertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelations: x.y, y.x\nmultiplicity: x = 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.quiver.sigma_string(), "(x)(y)");
        let x = inst.quiver.arrow_by_name("x").unwrap();
        assert_eq!(inst.multiplicity.of_arrow(&inst.quiver, x), 3);
    }

    #[test]
    fn ribbon_graph_block() {
        let text = "name: g\nribbon_graph {\n  node u: 1 2\n  node v: 1 2\n}\nmultiplicity: v = 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.quiver.vertex_count(), 2);
        assert!(inst.ribbon_graph.is_some());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = SpecFile::parse("name: x\nvertices: 1\narrow a 1 -> 1\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { line: 3, .. }), "{err}");
        let err = SpecFile::parse("name: x\nvertices: 1\narrow a: 1 -> 1\narrow a: 1 -> 1\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { line: 4, .. }));
        assert!(SpecFile::parse("name: x\nvertices: 1\nsigma: (a)\nrelations: a.a\n").is_err());
        assert!(SpecFile::parse("bogus: 1\n").is_err());
    }
}
