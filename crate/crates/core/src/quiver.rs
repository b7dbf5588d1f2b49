//! Complete gentle quivers.
//!
//! A quiver is stored with its successor permutation `σ` and nothing else:
//! a composable product `b·a` is nonzero exactly when `b = σ(a)`, so the
//! relation ideal never has to be materialised.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// How the relations of an unvalidated quiver are described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuccessorData {
    /// Cycles of `σ`, by arrow name.
    Sigma(Vec<Vec<String>>),
    /// Zero relations `(b, a)` meaning `b·a ∈ I`.
    Relations(Vec<(String, String)>),
}

/// A quiver as written by a user, before any checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawQuiver {
    pub name: String,
    pub vertices: Vec<String>,
    /// `(name, source, target)`
    pub arrows: Vec<(String, String, String)>,
    pub successor: SuccessorData,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    Empty,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` uses unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("vertex {vertex}: out-degree {degree} \u{2260} 2")]
    OutDegree { vertex: String, degree: usize },
    #[error("vertex {vertex}: in-degree {degree} \u{2260} 2")]
    InDegree { vertex: String, degree: usize },
    #[error("sigma is not a permutation of the arrows: {0}")]
    SigmaNotPermutation(String),
    #[error("sigma({arrow}) = {successor}, but {successor} does not start where {arrow} ends")]
    SigmaIncompatible { arrow: String, successor: String },
    #[error("relation {later}.{earlier} is not a composable pair")]
    RelationNotComposable { later: String, earlier: String },
    #[error("relation {later}.{earlier} is listed twice")]
    DuplicateRelation { later: String, earlier: String },
    #[error("arrow `{arrow}` has {count} nonzero continuations, a gentle quiver needs exactly one")]
    RelationsInconsistent { arrow: String, count: usize },
    #[error("subquiver must keep a nonempty proper subset of the vertices")]
    BadVertexSubset,
    #[error("multiplicity for `{0}` must be positive")]
    ZeroMultiplicity(String),
    #[error("orbit of `{0}` is given two multiplicities")]
    DuplicateMultiplicity(String),
}

/// The σ-orbits of the arrows. Orbit `k` is the `k`-th orbit met when the
/// arrows are scanned in declared order; its member list starts at the
/// lexicographically least arrow name and follows `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    of: Vec<usize>,
    members: Vec<Vec<ArrowId>>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn orbit_of(&self, a: ArrowId) -> usize {
        self.of[a.0]
    }

    pub fn members(&self, orbit: usize) -> &[ArrowId] {
        &self.members[orbit]
    }

    pub fn representative(&self, orbit: usize) -> ArrowId {
        self.members[orbit][0]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[ArrowId]> {
        self.members.iter().map(Vec::as_slice)
    }
}

/// The repetition-free cycle `c_a = σ^{n-1}(a)···σ(a)·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub base: ArrowId,
    /// In traversal order, starting with `base`.
    pub arrows: Vec<ArrowId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A nonzero path. A path of positive length is determined by its first
/// arrow, since every later arrow is the σ-successor of the one before.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Trivial(VertexId),
    Nonzero { first: ArrowId, len: usize },
}

impl Path {
    pub fn arrow(a: ArrowId) -> Self {
        Path::Nonzero { first: a, len: 1 }
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Nonzero { len, .. } => *len,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }
}

/// One cyclic quiver of the normalization, one per σ-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicComponent {
    pub orbit: usize,
    pub arrows: Vec<ArrowId>,
}

impl CyclicComponent {
    pub fn size(&self) -> usize {
        self.arrows.len()
    }
}

/// Idempotent subquiver together with the parent path behind each arrow.
#[derive(Clone, Debug)]
pub struct Subquiver {
    pub quiver: GentleQuiver,
    /// Parent vertex of each kept vertex.
    pub kept: Vec<VertexId>,
    /// For each arrow of `quiver`, the path `σ^{m-1}(a)···a` it stands for.
    pub parent_paths: Vec<Path>,
}

#[derive(Clone, Debug)]
pub struct GentleQuiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    out: Vec<[ArrowId; 2]>,
    inc: Vec<[ArrowId; 2]>,
    orbits: Orbits,
}

impl PartialEq for GentleQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows && self.sigma == other.sigma
    }
}

impl Eq for GentleQuiver {}

fn index_names(names: impl Iterator<Item = String>) -> Result<HashMap<String, usize>, String> {
    let mut map = HashMap::new();
    for (i, n) in names.enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(n);
        }
    }
    Ok(map)
}

impl GentleQuiver {
    /// Checks a raw description and reconstructs `σ` from relations when
    /// needed.
    pub fn validate(raw: &RawQuiver) -> Result<Self, QuiverError> {
        let vindex = index_names(raw.vertices.iter().cloned()).map_err(QuiverError::DuplicateVertex)?;
        let aindex =
            index_names(raw.arrows.iter().map(|a| a.0.clone())).map_err(QuiverError::DuplicateArrow)?;
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for (name, s, t) in &raw.arrows {
            let lookup = |v: &String| {
                vindex.get(v).map(|&i| VertexId(i)).ok_or_else(|| QuiverError::UnknownVertex {
                    arrow: name.clone(),
                    vertex: v.clone(),
                })
            };
            arrows.push(Arrow { name: name.clone(), source: lookup(s)?, target: lookup(t)? });
        }
        check_degrees(&raw.vertices, &arrows)?;
        let arrow_id = |n: &String| aindex.get(n).copied().ok_or_else(|| QuiverError::UnknownArrow(n.clone()));
        let sigma = match &raw.successor {
            SuccessorData::Sigma(cycles) => {
                let mut sigma = vec![usize::MAX; arrows.len()];
                for cycle in cycles {
                    let ids = cycle.iter().map(arrow_id).collect::<Result<Vec<_>, _>>()?;
                    for (k, &a) in ids.iter().enumerate() {
                        if sigma[a] != usize::MAX {
                            return Err(QuiverError::SigmaNotPermutation(format!(
                                "`{}` appears twice",
                                arrows[a].name
                            )));
                        }
                        sigma[a] = ids[(k + 1) % ids.len()];
                    }
                }
                if let Some(a) = sigma.iter().position(|&s| s == usize::MAX) {
                    return Err(QuiverError::SigmaNotPermutation(format!(
                        "`{}` is missing",
                        arrows[a].name
                    )));
                }
                sigma
            }
            SuccessorData::Relations(rels) => sigma_from_relations(&arrows, rels, &arrow_id)?,
        };
        Self::from_parts(raw.name.clone(), raw.vertices.clone(), arrows, sigma)
    }

    /// Builds a quiver from already resolved data, running every check.
    pub fn from_parts(
        name: String,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        sigma: Vec<usize>,
    ) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::Empty);
        }
        index_names(vertices.iter().cloned()).map_err(QuiverError::DuplicateVertex)?;
        index_names(arrows.iter().map(|a| a.name.clone())).map_err(QuiverError::DuplicateArrow)?;
        check_degrees(&vertices, &arrows)?;
        if sigma.len() != arrows.len() || !perm::is_permutation(&sigma) {
            return Err(QuiverError::SigmaNotPermutation("two arrows share a successor".into()));
        }
        for (a, &b) in sigma.iter().enumerate() {
            if arrows[b].source != arrows[a].target {
                return Err(QuiverError::SigmaIncompatible {
                    arrow: arrows[a].name.clone(),
                    successor: arrows[b].name.clone(),
                });
            }
        }
        let mut out: Vec<Vec<ArrowId>> = vec![Vec::new(); vertices.len()];
        let mut inc: Vec<Vec<ArrowId>> = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            out[a.source.0].push(ArrowId(i));
            inc[a.target.0].push(ArrowId(i));
        }
        let by_name = |v: Vec<ArrowId>| {
            let mut v = v;
            v.sort_by(|x, y| arrows[x.0].name.cmp(&arrows[y.0].name));
            [v[0], v[1]]
        };
        let out = out.into_iter().map(by_name).collect();
        let inc = inc.into_iter().map(by_name).collect();
        let orbits = compute_orbits(&arrows, &sigma);
        let sigma_inv = perm::inverse(&sigma);
        Ok(Self { name, vertices, arrows, sigma, sigma_inv, out, inc, orbits })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn sigma(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.sigma[a.0])
    }

    pub fn sigma_inv(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.sigma_inv[a.0])
    }

    pub fn sigma_pow(&self, a: ArrowId, k: usize) -> ArrowId {
        let n = self.n(a);
        let mut x = a.0;
        for _ in 0..k % n {
            x = self.sigma[x];
        }
        ArrowId(x)
    }

    /// `σ` as a permutation of arrow indices.
    pub fn sigma_permutation(&self) -> &[usize] {
        &self.sigma
    }

    /// The other arrow starting where `a` starts.
    pub fn partner(&self, a: ArrowId) -> ArrowId {
        let [x, y] = self.out[self.source(a).0];
        if x == a {
            y
        } else {
            x
        }
    }

    pub fn partner_permutation(&self) -> Vec<usize> {
        self.arrow_ids().map(|a| self.partner(a).0).collect()
    }

    /// The two arrows out of `v`, lexicographically smaller name first.
    pub fn outgoing(&self, v: VertexId) -> [ArrowId; 2] {
        self.out[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> [ArrowId; 2] {
        self.inc[v.0]
    }

    pub fn orbits(&self) -> &Orbits {
        &self.orbits
    }

    /// `n(a)`, the σ-orbit size of `a`.
    pub fn n(&self, a: ArrowId) -> usize {
        self.orbits.members(self.orbits.orbit_of(a)).len()
    }

    pub fn max_n(&self) -> usize {
        self.arrow_ids().map(|a| self.n(a)).max().unwrap_or(1)
    }

    pub fn cycle_of(&self, a: ArrowId) -> Cycle {
        let mut arrows = vec![a];
        let mut x = self.sigma(a);
        while x != a {
            arrows.push(x);
            x = self.sigma(x);
        }
        Cycle { base: a, arrows }
    }

    /// `c_a` as a path.
    pub fn cycle_path(&self, a: ArrowId) -> Path {
        Path::Nonzero { first: a, len: self.n(a) }
    }

    /// Disjoint union of cyclic quivers, one per σ-orbit.
    pub fn normalization(&self) -> Vec<CyclicComponent> {
        (0..self.orbits.len())
            .map(|k| CyclicComponent { orbit: k, arrows: self.orbits.members(k).to_vec() })
            .collect()
    }

    /// The arrow out of `t(a)` other than `σ(a)`.
    pub fn resolution_successor(&self, a: ArrowId) -> ArrowId {
        self.partner(self.sigma(a))
    }

    pub fn resolution_permutation(&self) -> Vec<usize> {
        self.arrow_ids().map(|a| self.resolution_successor(a).0).collect()
    }

    pub fn resolution_period(&self, a: ArrowId) -> usize {
        perm::order_of_point(&self.resolution_permutation(), a.0)
    }

    pub fn path_source(&self, p: Path) -> VertexId {
        match p {
            Path::Trivial(v) => v,
            Path::Nonzero { first, .. } => self.source(first),
        }
    }

    pub fn path_last_arrow(&self, p: Path) -> Option<ArrowId> {
        match p {
            Path::Trivial(_) => None,
            Path::Nonzero { first, len } => Some(self.sigma_pow(first, len - 1)),
        }
    }

    pub fn path_target(&self, p: Path) -> VertexId {
        match p {
            Path::Trivial(v) => v,
            Path::Nonzero { .. } => self.target(self.path_last_arrow(p).expect("nonzero path")),
        }
    }

    /// Arrows of `p` in traversal order.
    pub fn path_arrows(&self, p: Path) -> Vec<ArrowId> {
        match p {
            Path::Trivial(_) => Vec::new(),
            Path::Nonzero { first, len } => {
                let mut out = Vec::with_capacity(len);
                let mut x = first;
                for _ in 0..len {
                    out.push(x);
                    x = self.sigma(x);
                }
                out
            }
        }
    }

    /// The path traversing `arrows` in order, or `None` when some junction
    /// is a relation or the arrows do not compose.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Option<Path> {
        let (&first, rest) = arrows.split_first()?;
        let mut prev = first;
        for &a in rest {
            if self.sigma(prev) != a {
                return None;
            }
            prev = a;
        }
        Some(Path::Nonzero { first, len: arrows.len() })
    }

    /// Every nonzero path of length at most `max_len`, idempotents first.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertex_ids().map(Path::Trivial).collect();
        for a in self.arrow_ids() {
            out.extend((1..=max_len).map(|len| Path::Nonzero { first: a, len }));
        }
        out
    }

    /// The product `later · earlier` (`earlier` is traversed first).
    pub fn compose(&self, later: Path, earlier: Path) -> Option<Path> {
        match (later, earlier) {
            (Path::Trivial(v), p) => (self.path_target(p) == v).then_some(p),
            (q, Path::Trivial(v)) => (self.path_source(q) == v).then_some(q),
            (Path::Nonzero { first: b, len: lb }, Path::Nonzero { first: a, len: la }) => {
                (self.sigma_pow(a, la) == b).then_some(Path::Nonzero { first: a, len: la + lb })
            }
        }
    }

    /// Name of a path in composition order, `ba` for "a then b". Arrow
    /// names longer than one character are separated by dots.
    pub fn path_name(&self, p: Path) -> String {
        match p {
            Path::Trivial(v) => format!("e_{}", self.vertex_name(v)),
            Path::Nonzero { .. } => {
                let names: Vec<&str> = self.path_arrows(p).iter().rev().map(|&a| self.arrow_name(a)).collect();
                let sep = if names.iter().all(|n| n.chars().count() == 1) { "" } else { "." };
                names.join(sep)
            }
        }
    }

    /// Keeps the vertices in `kept` and shortcuts σ through removed ones.
    pub fn idempotent_subquiver(&self, kept: &[VertexId]) -> Result<Subquiver, QuiverError> {
        let keep: HashSet<VertexId> = kept.iter().copied().collect();
        if keep.is_empty() || keep.len() >= self.vertex_count() {
            return Err(QuiverError::BadVertexSubset);
        }
        let kept_sorted: Vec<VertexId> = self.vertex_ids().filter(|v| keep.contains(v)).collect();
        let new_vertex: HashMap<VertexId, usize> = kept_sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let old_arrows: Vec<ArrowId> = self.arrow_ids().filter(|&a| keep.contains(&self.source(a))).collect();
        let new_arrow: HashMap<ArrowId, usize> = old_arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut arrows = Vec::new();
        let mut sigma = Vec::new();
        let mut parent_paths = Vec::new();
        for &a in &old_arrows {
            let mut m = 1;
            let mut next = self.sigma(a);
            while !keep.contains(&self.source(next)) {
                next = self.sigma(next);
                m += 1;
            }
            arrows.push(Arrow {
                name: self.arrow_name(a).to_string(),
                source: VertexId(new_vertex[&self.source(a)]),
                target: VertexId(new_vertex[&self.source(next)]),
            });
            sigma.push(new_arrow[&next]);
            parent_paths.push(Path::Nonzero { first: a, len: m });
        }
        let vertices = kept_sorted.iter().map(|&v| self.vertex_name(v).to_string()).collect();
        let quiver = Self::from_parts(format!("{}_sub", self.name), vertices, arrows, sigma)?;
        Ok(Subquiver { quiver, kept: kept_sorted, parent_paths })
    }

    /// Isomorphism of quivers respecting `σ`, as a map on arrow indices.
    pub fn isomorphism_to(&self, other: &GentleQuiver) -> Option<Vec<usize>> {
        if self.vertex_count() != other.vertex_count() {
            return None;
        }
        perm::find_isomorphism(
            &self.sigma,
            &self.partner_permutation(),
            &other.sigma,
            &other.partner_permutation(),
        )
    }

    pub fn is_isomorphic(&self, other: &GentleQuiver) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Disjoint union; names are prefixed by the quiver names.
    pub fn disjoint_union(&self, other: &GentleQuiver, name: impl Into<String>) -> GentleQuiver {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut sigma = Vec::new();
        for q in [self, other] {
            let (v0, a0) = (vertices.len(), arrows.len());
            vertices.extend(q.vertices.iter().map(|v| format!("{}_{}", q.name, v)));
            for a in &q.arrows {
                arrows.push(Arrow {
                    name: format!("{}_{}", q.name, a.name),
                    source: VertexId(a.source.0 + v0),
                    target: VertexId(a.target.0 + v0),
                });
            }
            sigma.extend(q.sigma.iter().map(|s| s + a0));
        }
        Self::from_parts(name.into(), vertices, arrows, sigma).expect("union of valid quivers is valid")
    }

    /// Back to a raw description with `σ` in cycle notation.
    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.name.clone(), self.vertices[a.source.0].clone(), self.vertices[a.target.0].clone()))
                .collect(),
            successor: SuccessorData::Sigma(
                self.orbits
                    .iter()
                    .map(|orbit| orbit.iter().map(|&a| self.arrow_name(a).to_string()).collect())
                    .collect(),
            ),
        }
    }

    /// `σ` in cycle notation, cycles starting at their representatives.
    pub fn sigma_string(&self) -> String {
        self.orbits
            .iter()
            .map(|orbit| {
                let names: Vec<&str> = orbit.iter().map(|&a| self.arrow_name(a)).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for GentleQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vertices, {} arrows, sigma = {}",
            self.name,
            self.vertex_count(),
            self.arrow_count(),
            self.sigma_string()
        )
    }
}

fn check_degrees(vertices: &[String], arrows: &[Arrow]) -> Result<(), QuiverError> {
    let mut outd = vec![0usize; vertices.len()];
    let mut ind = vec![0usize; vertices.len()];
    for a in arrows {
        outd[a.source.0] += 1;
        ind[a.target.0] += 1;
    }
    for (i, v) in vertices.iter().enumerate() {
        if outd[i] != 2 {
            return Err(QuiverError::OutDegree { vertex: v.clone(), degree: outd[i] });
        }
        if ind[i] != 2 {
            return Err(QuiverError::InDegree { vertex: v.clone(), degree: ind[i] });
        }
    }
    Ok(())
}

fn sigma_from_relations(
    arrows: &[Arrow],
    rels: &[(String, String)],
    arrow_id: &dyn Fn(&String) -> Result<usize, QuiverError>,
) -> Result<Vec<usize>, QuiverError> {
    let mut zero = HashSet::new();
    for (later, earlier) in rels {
        let (b, a) = (arrow_id(later)?, arrow_id(earlier)?);
        if arrows[b].source != arrows[a].target {
            return Err(QuiverError::RelationNotComposable { later: later.clone(), earlier: earlier.clone() });
        }
        if !zero.insert((b, a)) {
            return Err(QuiverError::DuplicateRelation { later: later.clone(), earlier: earlier.clone() });
        }
    }
    let mut sigma = Vec::with_capacity(arrows.len());
    for (a, arrow) in arrows.iter().enumerate() {
        let nonzero: Vec<usize> = (0..arrows.len())
            .filter(|&b| arrows[b].source == arrow.target && !zero.contains(&(b, a)))
            .collect();
        if nonzero.len() != 1 {
            return Err(QuiverError::RelationsInconsistent { arrow: arrow.name.clone(), count: nonzero.len() });
        }
        sigma.push(nonzero[0]);
    }
    if !perm::is_permutation(&sigma) {
        let mut seen = HashMap::new();
        for (a, &b) in sigma.iter().enumerate() {
            if let Some(prev) = seen.insert(b, a) {
                return Err(QuiverError::SigmaNotPermutation(format!(
                    "`{}` follows both `{}` and `{}`",
                    arrows[b].name, arrows[prev].name, arrows[a].name
                )));
            }
        }
    }
    Ok(sigma)
}

fn compute_orbits(arrows: &[Arrow], sigma: &[usize]) -> Orbits {
    let mut of = vec![usize::MAX; arrows.len()];
    let mut members = Vec::new();
    for start in 0..arrows.len() {
        if of[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        let mut x = sigma[start];
        while x != start {
            orbit.push(x);
            x = sigma[x];
        }
        let rep_pos = (0..orbit.len()).min_by(|&i, &j| arrows[orbit[i]].name.cmp(&arrows[orbit[j]].name)).unwrap();
        orbit.rotate_left(rep_pos);
        for &a in &orbit {
            of[a] = members.len();
        }
        members.push(orbit.into_iter().map(ArrowId).collect());
    }
    Orbits { of, members }
}

/// Positive multiplicity per σ-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityMap {
    values: Vec<u32>,
}

impl MultiplicityMap {
    pub fn uniform(q: &GentleQuiver, m: u32) -> Self {
        assert!(m >= 1, "multiplicities are positive");
        Self { values: vec![m; q.orbits().len()] }
    }

    pub fn ones(q: &GentleQuiver) -> Self {
        Self::uniform(q, 1)
    }

    /// Uniform default overridden per orbit, keyed by any arrow of the orbit.
    pub fn from_pairs(q: &GentleQuiver, default: u32, pairs: &[(String, u32)]) -> Result<Self, QuiverError> {
        if default == 0 {
            return Err(QuiverError::ZeroMultiplicity("default".into()));
        }
        let mut values = vec![default; q.orbits().len()];
        let mut set = BTreeMap::new();
        for (name, m) in pairs {
            let a = q.arrow_by_name(name).ok_or_else(|| QuiverError::UnknownArrow(name.clone()))?;
            if *m == 0 {
                return Err(QuiverError::ZeroMultiplicity(name.clone()));
            }
            let orbit = q.orbits().orbit_of(a);
            if set.insert(orbit, ()).is_some() {
                return Err(QuiverError::DuplicateMultiplicity(name.clone()));
            }
            values[orbit] = *m;
        }
        Ok(Self { values })
    }

    pub fn of_orbit(&self, orbit: usize) -> u32 {
        self.values[orbit]
    }

    /// `m_a = m(v_a)`
    pub fn of_arrow(&self, q: &GentleQuiver, a: ArrowId) -> u32 {
        self.values[q.orbits().orbit_of(a)]
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(|&m| m == 1)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `(representative name, m)` per orbit.
    pub fn entries(&self, q: &GentleQuiver) -> Vec<(String, u32)> {
        (0..self.values.len())
            .map(|k| (q.arrow_name(q.orbits().representative(k)).to_string(), self.values[k]))
            .collect()
    }

    /// Length of the top cycle power `c_a^{m_a}`.
    pub fn top_len(&self, q: &GentleQuiver, a: ArrowId) -> usize {
        self.of_arrow(q, a) as usize * q.n(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(vertices: &[&str], arrows: &[(&str, &str, &str)], successor: SuccessorData) -> RawQuiver {
        RawQuiver {
            name: "test".into(),
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect(),
            successor,
        }
    }

    fn sigma(cycles: &[&[&str]]) -> SuccessorData {
        SuccessorData::Sigma(cycles.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect())
    }

    fn loop2() -> GentleQuiver {
        GentleQuiver::validate(&raw(&["1"], &[("a", "1", "1"), ("b", "1", "1")], sigma(&[&["a", "b"]]))).unwrap()
    }

    #[test]
    fn rejects_degree_three() {
        let r = raw(&["1"], &[("a", "1", "1"), ("b", "1", "1"), ("c", "1", "1")], sigma(&[&["a", "b", "c"]]));
        let err = GentleQuiver::validate(&r).unwrap_err();
        assert_eq!(err.to_string(), "vertex 1: out-degree 3 \u{2260} 2");
    }

    #[test]
    fn rejects_incompatible_sigma() {
        let r = raw(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1"), ("x", "1", "1"), ("y", "2", "2")],
            sigma(&[&["a", "x"], &["b"], &["y"]]),
        );
        assert!(matches!(GentleQuiver::validate(&r), Err(QuiverError::SigmaIncompatible { .. })));
    }

    #[test]
    fn loop2_paths() {
        let q = loop2();
        let a = q.arrow_by_name("a").unwrap();
        let b = q.arrow_by_name("b").unwrap();
        assert_eq!(q.compose(Path::arrow(a), Path::arrow(a)), None);
        let ba = q.compose(Path::arrow(b), Path::arrow(a)).unwrap();
        assert_eq!(ba, q.cycle_path(a));
        assert_eq!(q.path_name(ba), "ba");
        assert_eq!(q.resolution_period(a), 1);
        assert_eq!(q.partner(a), b);
        let e = Path::Trivial(VertexId(0));
        assert_eq!(q.compose(e, ba), Some(ba));
    }

    #[test]
    fn relation_reconstruction_checks_gentleness() {
        // listing both continuations of x as zero leaves none
        let r = raw(
            &["1"],
            &[("x", "1", "1"), ("y", "1", "1")],
            SuccessorData::Relations(vec![("x".into(), "x".into()), ("y".into(), "x".into())]),
        );
        assert!(matches!(
            GentleQuiver::validate(&r),
            Err(QuiverError::RelationsInconsistent { count: 0, .. })
        ));
    }

    #[test]
    fn multiplicities_by_any_orbit_member() {
        let q = loop2();
        let m = MultiplicityMap::from_pairs(&q, 1, &[("b".into(), 3)]).unwrap();
        assert_eq!(m.values(), &[3]);
        assert!(MultiplicityMap::from_pairs(&q, 1, &[("a".into(), 2), ("b".into(), 3)]).is_err());
    }
}
