//! Ribbon graphs: nodes are σ-orbits, edges are quiver vertices, and each
//! node carries a cyclic order on the edge slots incident to it.
//!
//! A loop edge occupies two slots at its node. Slots of a graph built from a
//! quiver are indexed by arrows: arrow `a` is the slot of edge `e_{s(a)}` at
//! node `v_a`, and the next slot is `σ(a)`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::perm;
use crate::quiver::{Arrow, GentleQuiver, QuiverError, VertexId};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("node `{0}` has no slots")]
    EmptyNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("edge `{edge}` occupies {count} slots, every edge needs exactly two")]
    EdgeSlotCount { edge: String, count: usize },
    #[error("ribbon graph has no nodes")]
    Empty,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub node: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    name: String,
    node_names: Vec<String>,
    edge_names: Vec<String>,
    slots: Vec<Slot>,
    next: Vec<usize>,
    pair: Vec<usize>,
    node_slots: Vec<Vec<usize>>,
    edge_slots: Vec<[usize; 2]>,
}

/// An odd closed walk: `nodes[0] == nodes[last]`, `edges[k]` joins
/// `nodes[k]` and `nodes[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddWalk {
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BipartiteCertificate {
    /// Colour per node; every component's first node is `+`.
    Coloring(Vec<Sign>),
    OddWalk(OddWalk),
}

impl BipartiteCertificate {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, BipartiteCertificate::Coloring(_))
    }

    pub fn coloring(&self) -> Option<&[Sign]> {
        match self {
            BipartiteCertificate::Coloring(c) => Some(c),
            BipartiteCertificate::OddWalk(_) => None,
        }
    }
}

/// A simple cycle of the graph; a loop is a circle of length one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Circle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.edges.len() % 2 == 1
    }
}

impl RibbonGraph {
    /// Builds a graph from `(node, cyclic list of incident edges)`; a loop is
    /// listed twice at its node. Edges are numbered by first appearance.
    pub fn from_cyclic_orders(name: impl Into<String>, nodes: &[(String, Vec<String>)]) -> Result<Self, RibbonError> {
        if nodes.is_empty() {
            return Err(RibbonError::Empty);
        }
        let mut node_index = HashMap::new();
        let mut edge_index: HashMap<String, usize> = HashMap::new();
        let mut edge_names = Vec::new();
        let mut slots = Vec::new();
        let mut next = Vec::new();
        for (v, (node, edges)) in nodes.iter().enumerate() {
            if node_index.insert(node.clone(), v).is_some() {
                return Err(RibbonError::DuplicateNode(node.clone()));
            }
            if edges.is_empty() {
                return Err(RibbonError::EmptyNode(node.clone()));
            }
            let first = slots.len();
            for (k, e) in edges.iter().enumerate() {
                let edge = *edge_index.entry(e.clone()).or_insert_with(|| {
                    edge_names.push(e.clone());
                    edge_names.len() - 1
                });
                slots.push(Slot { node: v, edge });
                next.push(first + (k + 1) % edges.len());
            }
        }
        let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); edge_names.len()];
        for (s, slot) in slots.iter().enumerate() {
            by_edge[slot.edge].push(s);
        }
        let mut pair = vec![0; slots.len()];
        for (e, ss) in by_edge.iter().enumerate() {
            if ss.len() != 2 {
                return Err(RibbonError::EdgeSlotCount { edge: edge_names[e].clone(), count: ss.len() });
            }
            pair[ss[0]] = ss[1];
            pair[ss[1]] = ss[0];
        }
        let node_names = nodes.iter().map(|(n, _)| n.clone()).collect();
        Ok(Self::assemble(name.into(), node_names, edge_names, slots, next, pair))
    }

    fn assemble(
        name: String,
        node_names: Vec<String>,
        edge_names: Vec<String>,
        slots: Vec<Slot>,
        next: Vec<usize>,
        pair: Vec<usize>,
    ) -> Self {
        let mut node_slots: Vec<Vec<usize>> = vec![Vec::new(); node_names.len()];
        for v in 0..node_names.len() {
            if let Some(start) = slots.iter().position(|s| s.node == v) {
                let mut s = start;
                loop {
                    node_slots[v].push(s);
                    s = next[s];
                    if s == start {
                        break;
                    }
                }
            }
        }
        let mut edge_slots = vec![[usize::MAX; 2]; edge_names.len()];
        for (s, slot) in slots.iter().enumerate() {
            let entry = &mut edge_slots[slot.edge];
            if entry[0] == usize::MAX {
                entry[0] = s;
            } else {
                entry[1] = s;
            }
        }
        Self { name, node_names, edge_names, slots, next, pair, node_slots, edge_slots }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.node_names[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn slot(&self, s: usize) -> Slot {
        self.slots[s]
    }

    pub fn next_slot(&self, s: usize) -> usize {
        self.next[s]
    }

    pub fn opposite_slot(&self, s: usize) -> usize {
        self.pair[s]
    }

    /// Slots at `v` in cyclic order.
    pub fn node_slots(&self, v: usize) -> &[usize] {
        &self.node_slots[v]
    }

    /// Edges at `v` in cyclic order; a loop appears twice.
    pub fn cyclic_order(&self, v: usize) -> Vec<usize> {
        self.node_slots[v].iter().map(|&s| self.slots[s].edge).collect()
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let [s, t] = self.edge_slots[e];
        (self.slots[s].node, self.slots[t].node)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, w) = self.edge_ends(e);
        u == w
    }

    pub fn valency(&self, v: usize) -> usize {
        self.node_slots[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.valency(v) == 1
    }

    /// `(neighbour, edge)` for each slot at `v`, loops excluded.
    fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.node_slots[v].iter().filter_map(move |&s| {
            let e = self.slots[s].edge;
            let w = self.slots[self.pair[s]].node;
            (w != v).then_some((w, e))
        })
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.node_count()];
        let mut out = Vec::new();
        for start in 0..self.node_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for (w, _) in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Breadth-first two-colouring, or an odd closed walk.
    pub fn is_bipartite(&self) -> BipartiteCertificate {
        if let Some(e) = (0..self.edge_count()).find(|&e| self.is_loop(e)) {
            let (v, _) = self.edge_ends(e);
            return BipartiteCertificate::OddWalk(OddWalk { nodes: vec![v, v], edges: vec![e] });
        }
        let n = self.node_count();
        let mut color: Vec<Option<Sign>> = vec![None; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(Sign::Plus);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].expect("queued nodes are coloured");
                for (w, e) in self.neighbours(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(-cv);
                            parent[w] = Some((v, e));
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return BipartiteCertificate::OddWalk(odd_walk(&parent, v, w, e));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        BipartiteCertificate::Coloring(color.into_iter().map(|c| c.expect("all coloured")).collect())
    }

    /// Number of components that are bipartite.
    pub fn bipartite_component_count(&self) -> usize {
        self.connected_components().iter().filter(|comp| self.component_is_bipartite(comp)).count()
    }

    fn component_is_bipartite(&self, comp: &[usize]) -> bool {
        if comp.iter().any(|&v| self.node_slots[v].iter().any(|&s| self.slots[self.pair[s]].node == v)) {
            return false;
        }
        let mut color: HashMap<usize, bool> = HashMap::new();
        color.insert(comp[0], true);
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            let c = color[&v];
            for (w, _) in self.neighbours(v) {
                match color.get(&w) {
                    None => {
                        color.insert(w, !c);
                        stack.push(w);
                    }
                    Some(&cw) if cw == c => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Simple cycles, loops included, each listed once.
    pub fn circular_subgraphs(&self) -> Vec<Circle> {
        let mut out = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for e in 0..self.edge_count() {
            if self.is_loop(e) {
                let (v, _) = self.edge_ends(e);
                out.push(Circle { nodes: vec![v], edges: vec![e] });
            }
        }
        for s in 0..self.node_count() {
            let mut nodes = vec![s];
            let mut edges = Vec::new();
            let mut on_path = vec![false; self.node_count()];
            on_path[s] = true;
            self.extend_cycles(s, &mut nodes, &mut edges, &mut on_path, &mut out, &mut seen);
        }
        out
    }

    fn extend_cycles(
        &self,
        start: usize,
        nodes: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Circle>,
        seen: &mut BTreeSet<Vec<usize>>,
    ) {
        let current = *nodes.last().expect("path has a start");
        let steps: Vec<(usize, usize)> = self.neighbours(current).collect();
        for (w, e) in steps {
            if edges.contains(&e) {
                continue;
            }
            if w == start && !edges.is_empty() {
                if edges[0] < e {
                    let mut key: Vec<usize> = edges.iter().copied().chain([e]).collect();
                    key.sort_unstable();
                    if seen.insert(key) {
                        let mut cycle_edges = edges.clone();
                        cycle_edges.push(e);
                        out.push(Circle { nodes: nodes.clone(), edges: cycle_edges });
                    }
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                nodes.push(w);
                edges.push(e);
                self.extend_cycles(start, nodes, edges, on_path, out, seen);
                edges.pop();
                nodes.pop();
                on_path[w] = false;
            }
        }
    }

    /// Isomorphism of ribbon graphs as a map on slots.
    pub fn isomorphism_to(&self, other: &RibbonGraph) -> Option<Vec<usize>> {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return None;
        }
        perm::find_isomorphism(&self.next, &self.pair, &other.next, &other.pair)
    }

    pub fn is_isomorphic(&self, other: &RibbonGraph) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Node lines `(node, cyclic edge list)` in the input format.
    pub fn cyclic_orders(&self) -> Vec<(String, Vec<String>)> {
        (0..self.node_count())
            .map(|v| {
                let edges = self.cyclic_order(v).iter().map(|&e| self.edge_names[e].clone()).collect();
                (self.node_names[v].clone(), edges)
            })
            .collect()
    }

    /// Node `v`'s cyclic order as `(e1 e2 ...)`.
    pub fn cyclic_order_string(&self, v: usize) -> String {
        let names: Vec<&str> = self.cyclic_order(v).iter().map(|&e| self.edge_name(e)).collect();
        format!("({})", names.join(" "))
    }
}

fn odd_walk(parent: &[Option<(usize, usize)>], u: usize, w: usize, closing: usize) -> OddWalk {
    let ancestors = |mut v: usize| {
        let mut chain = vec![(v, None)];
        while let Some((p, e)) = parent[v] {
            chain.push((p, Some(e)));
            v = p;
        }
        chain
    };
    let up = ancestors(u);
    let wp = ancestors(w);
    let up_nodes: Vec<usize> = up.iter().map(|x| x.0).collect();
    let (wi, ui) = wp
        .iter()
        .enumerate()
        .find_map(|(j, (v, _))| up_nodes.iter().position(|x| x == v).map(|i| (j, i)))
        .expect("same BFS tree");
    // lca -> ... -> u, closing edge, w -> ... -> lca
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for k in (0..=ui).rev() {
        nodes.push(up[k].0);
        if k > 0 {
            edges.push(up[k].1.expect("non-root has a parent edge"));
        }
    }
    edges.push(closing);
    for k in 0..=wi {
        nodes.push(wp[k].0);
        if k < wi {
            edges.push(wp[k + 1].1.expect("non-root has a parent edge"));
        }
    }
    OddWalk { nodes, edges }
}

/// Nodes are the σ-orbits (named `v_<representative>`), edges the vertices.
pub fn graph_of_quiver(q: &GentleQuiver) -> RibbonGraph {
    let orbits = q.orbits();
    let node_names = (0..orbits.len()).map(|k| format!("v_{}", q.arrow_name(orbits.representative(k)))).collect();
    let edge_names = q.vertex_names().to_vec();
    let slots = q
        .arrow_ids()
        .map(|a| Slot { node: orbits.orbit_of(a), edge: q.source(a).0 })
        .collect();
    let next = q.sigma_permutation().to_vec();
    let pair = q.partner_permutation();
    RibbonGraph::assemble(q.name().to_string(), node_names, edge_names, slots, next, pair)
}

/// One arrow `e → σ_v(e)` per slot, named `<node>_<j>` with `j` counting
/// slots around the node from one.
pub fn quiver_from_ribbon_graph(g: &RibbonGraph) -> Result<GentleQuiver, RibbonError> {
    let mut arrow_of_slot = vec![0; g.slot_count()];
    let mut arrows = Vec::with_capacity(g.slot_count());
    for v in 0..g.node_count() {
        for (j, &s) in g.node_slots(v).iter().enumerate() {
            arrow_of_slot[s] = arrows.len();
            arrows.push(Arrow {
                name: format!("{}_{}", g.node_name(v), j + 1),
                source: VertexId(g.slot(s).edge),
                target: VertexId(g.slot(g.next_slot(s)).edge),
            });
        }
    }
    let mut sigma = vec![0; arrows.len()];
    for s in 0..g.slot_count() {
        sigma[arrow_of_slot[s]] = arrow_of_slot[g.next_slot(s)];
    }
    Ok(GentleQuiver::from_parts(g.name().to_string(), g.edge_names.clone(), arrows, sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(spec: &[(&str, &[&str])]) -> Vec<(String, Vec<String>)> {
        spec.iter().map(|(n, es)| (n.to_string(), es.iter().map(|e| e.to_string()).collect())).collect()
    }

    #[test]
    fn single_edge_gives_nodal_quiver() {
        let g = RibbonGraph::from_cyclic_orders("edge", &nodes(&[("u", &["e"]), ("w", &["e"])])).unwrap();
        assert!(g.is_bipartite().is_bipartite());
        let q = quiver_from_ribbon_graph(&g).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.arrow_ids().all(|a| q.sigma(a) == a));
        assert!(g.is_leaf(0));
    }

    #[test]
    fn loop_is_an_odd_walk_of_length_one() {
        let g = RibbonGraph::from_cyclic_orders("loop", &nodes(&[("v", &["e", "e"])])).unwrap();
        match g.is_bipartite() {
            BipartiteCertificate::OddWalk(w) => assert_eq!(w.edges.len(), 1),
            other => panic!("expected odd walk, got {other:?}"),
        }
        assert_eq!(g.circular_subgraphs().len(), 1);
    }

    #[test]
    fn triangle_walk_is_closed_and_odd() {
        let g = RibbonGraph::from_cyclic_orders(
            "tri",
            &nodes(&[("a", &["x", "z"]), ("b", &["x", "y"]), ("c", &["y", "z"])]),
        )
        .unwrap();
        let BipartiteCertificate::OddWalk(w) = g.is_bipartite() else { panic!("triangle is not bipartite") };
        assert_eq!(w.edges.len(), 3);
        assert_eq!(w.nodes.first(), w.nodes.last());
        for (k, &e) in w.edges.iter().enumerate() {
            let (u, v) = g.edge_ends(e);
            let (p, q) = (w.nodes[k], w.nodes[k + 1]);
            assert!((u, v) == (p, q) || (v, u) == (p, q));
        }
        let circles = g.circular_subgraphs();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].len(), 3);
    }

    #[test]
    fn malformed_orders_are_rejected() {
        let err = RibbonGraph::from_cyclic_orders("bad", &nodes(&[("v", &["e"])])).unwrap_err();
        assert!(matches!(err, RibbonError::EdgeSlotCount { count: 1, .. }));
        let err = RibbonGraph::from_cyclic_orders("bad", &nodes(&[("v", &["e", "e", "e"])])).unwrap_err();
        assert!(matches!(err, RibbonError::EdgeSlotCount { count: 3, .. }));
    }

    #[test]
    fn parallel_edges_form_a_two_circle() {
        let g = RibbonGraph::from_cyclic_orders("digon", &nodes(&[("u", &["x", "y"]), ("w", &["y", "x"])])).unwrap();
        let circles = g.circular_subgraphs();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].len(), 2);
    }
}
