//! Built-in example instances, each stored as spec-file text.

use std::fmt::Write as _;

use crate::specfile::{parse_instance, Instance};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub text: String,
}

impl CorpusEntry {
    pub fn instance(&self) -> Instance {
        parse_instance(&self.text).unwrap_or_else(|e| panic!("corpus entry {}: {e}", self.name))
    }
}

fn entry(name: &str, description: &str, text: String) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), description: description.to_string(), text }
}

fn loop2() -> CorpusEntry {
    entry(
        "loop2",
        "one vertex, two loops composing nontrivially; graph is a single loop",
        "name: loop2\nvertices: 1\narrow a: 1 -> 1\narrow b: 1 -> 1\nsigma: (a b)\n".into(),
    )
}

fn nodal() -> CorpusEntry {
    entry(
        "nodal",
        "one vertex, two loops squaring nontrivially; graph is a single edge",
        "name: nodal\nvertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nsigma: (x)(y)\n".into(),
    )
}

/// Line with `n` edges: loops `x` at `1` and `y` at `n`, arrows `a_j: j → j+1`
/// and `b_j: j+1 → j` between.
pub fn line(n: usize) -> CorpusEntry {
    assert!(n >= 1);
    let mut t = String::new();
    let _ = writeln!(t, "name: line{n}");
    let vertices: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
    let _ = writeln!(t, "vertices: {}", vertices.join(" "));
    let _ = writeln!(t, "arrow x: 1 -> 1");
    for j in 1..n {
        let _ = writeln!(t, "arrow a{j}: {j} -> {}", j + 1);
        let _ = writeln!(t, "arrow b{j}: {} -> {j}", j + 1);
    }
    let _ = writeln!(t, "arrow y: {n} -> {n}");
    let mut rels = Vec::new();
    if n == 1 {
        rels.extend(["x.y".to_string(), "y.x".to_string()]);
    } else {
        rels.extend((1..n - 1).map(|j| format!("a{}.a{j}", j + 1)));
        rels.push("a1.x".into());
        rels.push("x.b1".into());
        rels.extend((1..n - 1).map(|j| format!("b{j}.b{}", j + 1)));
        rels.push(format!("b{}.y", n - 1));
        rels.push(format!("y.a{}", n - 1));
    }
    let _ = writeln!(t, "relations: {}", rels.join(", "));
    entry(&format!("line{n}"), &format!("path graph with {n} edges and {} nodes", n + 1), t)
}

fn triangle() -> CorpusEntry {
    entry(
        "triangle",
        "three vertices T, L, R; graph is a triangle",
        "name: triangle\nvertices: T L R\n\
         arrow a: L -> T\narrow b: T -> L\narrow c: T -> R\narrow d: R -> T\narrow e: R -> L\narrow f: L -> R\n\
         relations: c.a, a.e, e.c, f.b, b.d, d.f\n"
            .into(),
    )
}

fn onecycle() -> CorpusEntry {
    entry(
        "onecycle",
        "three vertices on a single σ-orbit; graph is one node with three loops",
        "name: onecycle\nvertices: T L R\n\
         arrow a: L -> T\narrow b: T -> R\narrow c: R -> L\narrow d: L -> T\narrow e: T -> R\narrow f: R -> L\n\
         sigma: (a b c d e f)\n"
            .into(),
    )
}

fn mixed() -> CorpusEntry {
    entry(
        "mixed",
        "five vertices; graph contains a loop and a triangle on vertices 2, 4, 5",
        "name: mixed\nvertices: 1 2 3 4 5\n\
         arrow x: 1 -> 1\narrow y: 1 -> 2\narrow c: 2 -> 3\narrow b: 2 -> 4\narrow g: 3 -> 3\n\
         arrow h: 3 -> 5\narrow f: 4 -> 5\narrow a: 4 -> 1\narrow e: 5 -> 4\narrow d: 5 -> 2\n\
         relations: y.x, c.y, h.c, e.h, a.e, x.a, b.d, f.b, d.f, g.g\n"
            .into(),
    )
}

/// Cycle graph with `n` nodes: `a_j: j → j+1`, `b_j: j+1 → j` modulo `n`.
pub fn circular(n: usize) -> CorpusEntry {
    assert!(n >= 1);
    let mut t = String::new();
    let _ = writeln!(t, "name: circular{n}");
    let vertices: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
    let _ = writeln!(t, "vertices: {}", vertices.join(" "));
    for j in 1..=n {
        let next = j % n + 1;
        let _ = writeln!(t, "arrow a{j}: {j} -> {next}");
        let _ = writeln!(t, "arrow b{j}: {next} -> {j}");
    }
    let cycles: String = (1..=n).map(|j| format!("(a{j} b{j})")).collect();
    let _ = writeln!(t, "sigma: {cycles}");
    entry(&format!("circular{n}"), &format!("cycle graph with {n} nodes"), t)
}

pub fn all() -> Vec<CorpusEntry> {
    let mut out = vec![loop2(), nodal()];
    out.extend((1..=4).map(line));
    out.extend([triangle(), onecycle(), mixed()]);
    out.extend((1..=6).map(circular));
    out
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Option<CorpusEntry> {
    all().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::graph_of_quiver;

    #[test]
    fn every_entry_validates() {
        for e in all() {
            let inst = e.instance();
            assert_eq!(inst.quiver.name(), e.name);
        }
        assert_eq!(all().len(), 15);
    }

    #[test]
    fn expected_sigmas() {
        let sigma = |n: &str| get(n).unwrap().instance().quiver.sigma_string();
        assert_eq!(sigma("triangle"), "(a b)(c d)(e f)");
        assert_eq!(sigma("line3"), "(x)(a1 b1)(a2 b2)(y)");
        assert_eq!(sigma("line1"), "(x)(y)");
        assert_eq!(sigma("mixed"), "(x)(a y b)(c g h d)(e f)");
    }

    #[test]
    fn graph_shapes() {
        let g = graph_of_quiver(&get("triangle").unwrap().instance().quiver);
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert!(!g.is_bipartite().is_bipartite());
        let g = graph_of_quiver(&get("circular4").unwrap().instance().quiver);
        assert!(g.is_bipartite().is_bipartite());
    }
}
