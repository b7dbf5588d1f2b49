//! Finite-dimensional algebras by structure constants, and the two Brauer
//! graph quotients of a ribbon graph order.

pub mod oracle;
pub mod psi;

use std::collections::HashMap;

use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::linalg::{self, RowSpace};
use crate::polarization::{Involution, Polarization};
use crate::quiver::{ArrowId, GentleQuiver, MultiplicityMap, Path, VertexId};
use crate::ribbon::{graph_of_quiver, BipartiteCertificate};
use crate::sign::Sign;

/// Sparse vector as `(basis index, coefficient)` with distinct indices.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Algebra with a fixed basis and multiplication table.
#[derive(Clone, Debug)]
pub struct FdAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
    unit: SparseVec<F::Elem>,
}

impl<F: Field> FdAlgebra<F> {
    /// `table[i][j]` is `b_i · b_j`.
    pub fn new(field: F, labels: Vec<String>, table: Vec<Vec<SparseVec<F::Elem>>>, unit: SparseVec<F::Elem>) -> Self {
        assert_eq!(labels.len(), table.len(), "one table row per basis element");
        Self { field, labels, table, unit }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i][j]
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        self.to_dense(&self.unit)
    }

    /// Number of nonzero structure constants.
    pub fn nonzero_constants(&self) -> usize {
        self.table.iter().flatten().map(Vec::len).sum()
    }

    pub fn to_dense(&self, v: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, c) in v {
            out[*i] = out[*i].clone() + c.clone();
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj.clone();
                for (k, t) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + c.clone() * t.clone();
                }
            }
        }
        out
    }

    fn mul_sparse(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x {
            for (j, yj) in y {
                let c = xi.clone() * yj.clone();
                for (k, t) in &self.table[*i][*j] {
                    out[*k] = out[*k].clone() + c.clone() * t.clone();
                }
            }
        }
        out
    }

    /// First basis triple with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let jk = &self.table[j][k];
                    let left = self.mul_sparse(ij, &vec![(k, self.field.one())]);
                    let right = self.mul_sparse(&vec![(i, self.field.one())], jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis element on which the unit fails on either side.
    pub fn unit_violation(&self) -> Option<usize> {
        let one = self.unit();
        (0..self.dim()).find(|&i| {
            let b = self.basis_vector(i);
            self.mul(&one, &b) != b || self.mul(&b, &one) != b
        })
    }

    /// `G[i][j] = φ(b_i b_j)`
    pub fn gram(&self, form: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.apply_form(form, &self.table[i][j])).collect())
            .collect()
    }

    pub fn apply_form(&self, form: &[F::Elem], v: &SparseVec<F::Elem>) -> F::Elem {
        v.iter().fold(self.field.zero(), |acc, (k, c)| acc + form[*k].clone() * c.clone())
    }

    pub fn is_nondegenerate(&self, form: &[F::Elem]) -> bool {
        let mut space = RowSpace::new(self.field.clone(), self.dim());
        for row in self.gram(form) {
            if !space.insert(row) {
                return false;
            }
        }
        true
    }

    pub fn is_symmetric_form(&self, form: &[F::Elem]) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.apply_form(form, &self.table[i][j]) == self.apply_form(form, &self.table[j][i]))
        })
    }

    /// Matrix of `x ↦ g·x` (or `x ↦ x·g`), as rows.
    fn multiplication_rows(&self, g: &SparseVec<F::Elem>, left: bool) -> Vec<Vec<F::Elem>> {
        let n = self.dim();
        let mut m = vec![vec![self.field.zero(); n]; n];
        for j in 0..n {
            for (i, c) in g {
                let prod = if left { &self.table[*i][j] } else { &self.table[j][*i] };
                for (k, t) in prod {
                    m[*k][j] = m[*k][j].clone() + c.clone() * t.clone();
                }
            }
        }
        m
    }

    /// `{ x : g·x = 0 = x·g for every g }`
    pub fn two_sided_annihilator(&self, generators: &[SparseVec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let mut space = RowSpace::new(self.field.clone(), self.dim());
        for g in generators {
            for left in [true, false] {
                for row in self.multiplication_rows(g, left) {
                    space.insert(row);
                }
                if space.is_full() {
                    return Vec::new();
                }
            }
        }
        space.nullspace()
    }

    /// First basis pair where `f(b_i b_j) ≠ f(b_i) f(b_j)` for a linear map
    /// `f` into `target` given by basis images; `Some((usize::MAX, 0))` when
    /// the unit is not preserved.
    pub fn algebra_map_violation(&self, target: &FdAlgebra<F>, images: &[SparseVec<F::Elem>]) -> Option<(usize, usize)> {
        let apply = |v: &SparseVec<F::Elem>| {
            let mut out = vec![target.field.zero(); target.dim()];
            for (i, c) in v {
                for (k, t) in &images[*i] {
                    out[*k] = out[*k].clone() + c.clone() * t.clone();
                }
            }
            out
        };
        if apply(&self.unit) != target.unit() {
            return Some((usize::MAX, 0));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if apply(&self.table[i][j]) != target.mul_sparse(&images[i], &images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Rank of a linear map given by basis images into a space of
    /// dimension `target_dim`.
    pub fn image_rank(&self, images: &[SparseVec<F::Elem>], target_dim: usize) -> usize {
        let mut space = RowSpace::new(self.field.clone(), target_dim);
        for img in images {
            space.insert_sparse(img);
        }
        space.rank()
    }

    pub fn same_table(&self, other: &FdAlgebra<F>) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.to_dense(&self.table[i][j]) == other.to_dense(&other.table[i][j])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientKind {
    /// `Λ/zΛ`, cycle powers anticommute at each vertex.
    Twisted,
    /// `Λ/ΛwΛ`, cycle powers commute at each vertex.
    Untwisted,
}

impl QuotientKind {
    /// Sign of the ε-negative top `c_b^{m_b}` in terms of the positive one.
    fn identification(self) -> Sign {
        match self {
            QuotientKind::Twisted => Sign::Minus,
            QuotientKind::Untwisted => Sign::Plus,
        }
    }
}

/// A Brauer graph quotient with its path basis: every `e_i`, and `a_ℓ` for
/// `1 ≤ ℓ ≤ m_a n(a)` except the ε-negative top at each vertex.
#[derive(Clone, Debug)]
pub struct BrauerQuotient<F: Field> {
    algebra: FdAlgebra<F>,
    quiver: GentleQuiver,
    kind: QuotientKind,
    eps: Polarization,
    multiplicity: MultiplicityMap,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<F: Field> BrauerQuotient<F> {
    pub fn build(field: F, q: &GentleQuiver, m: &MultiplicityMap, eps: &Polarization, kind: QuotientKind) -> Self {
        let mut paths: Vec<Path> = q.vertex_ids().map(Path::Trivial).collect();
        for a in q.arrow_ids() {
            let top = m.top_len(q, a);
            let last = if eps.sign(a).is_plus() { top } else { top - 1 };
            paths.extend((1..=last).map(|len| Path::Nonzero { first: a, len }));
        }
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let scratch = Self {
            algebra: FdAlgebra::new(field.clone(), Vec::new(), Vec::new(), Vec::new()),
            quiver: q.clone(),
            kind,
            eps: eps.clone(),
            multiplicity: m.clone(),
            paths: paths.clone(),
            index,
        };
        let table = paths
            .iter()
            .map(|&p| {
                paths
                    .iter()
                    .map(|&r| q.compose(p, r).map(|pr| scratch.residue(pr)).unwrap_or_default())
                    .collect()
            })
            .collect();
        let labels = paths.iter().map(|&p| q.path_name(p)).collect();
        let unit = q.vertex_ids().map(|v| (v.0, field.one())).collect();
        Self { algebra: FdAlgebra::new(field, labels, table, unit), ..scratch }
    }

    /// `ĀI = Λ/zΛ`
    pub fn twisted(field: F, q: &GentleQuiver, m: &MultiplicityMap, eps: &Polarization) -> Self {
        Self::build(field, q, m, eps, QuotientKind::Twisted)
    }

    /// `B̄I = Λ/ΛwΛ` with `w = Σ_a ε_a c_a^{m_a}`
    pub fn untwisted(field: F, q: &GentleQuiver, m: &MultiplicityMap, eps: &Polarization) -> Self {
        Self::build(field, q, m, eps, QuotientKind::Untwisted)
    }

    pub fn algebra(&self) -> &FdAlgebra<F> {
        &self.algebra
    }

    pub fn quiver(&self) -> &GentleQuiver {
        &self.quiver
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn polarization(&self) -> &Polarization {
        &self.eps
    }

    pub fn multiplicity(&self) -> &MultiplicityMap {
        &self.multiplicity
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The relation ideal fails to be admissible when some `c_a = a` has
    /// multiplicity one; the quotient is still well defined.
    pub fn is_admissible(&self) -> bool {
        !self.quiver.arrow_ids().any(|a| self.quiver.n(a) == 1 && self.multiplicity.of_arrow(&self.quiver, a) == 1)
    }

    /// Residue of a nonzero path of the order in the basis.
    pub fn residue(&self, p: Path) -> SparseVec<F::Elem> {
        let field = self.algebra.field();
        match p {
            Path::Trivial(_) => vec![(self.index[&p], field.one())],
            Path::Nonzero { first, len } => {
                let top = self.multiplicity.top_len(&self.quiver, first);
                if len < top || (len == top && self.eps.sign(first).is_plus()) {
                    vec![(self.index[&p], field.one())]
                } else if len == top {
                    let other = self.quiver.partner(first);
                    let other_top = Path::Nonzero { first: other, len: self.multiplicity.top_len(&self.quiver, other) };
                    vec![(self.index[&other_top], self.kind.identification().to_elem(field))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    pub fn arrow_image(&self, a: ArrowId) -> SparseVec<F::Elem> {
        self.residue(Path::arrow(a))
    }

    pub fn idempotent_index(&self, v: VertexId) -> usize {
        v.0
    }

    /// Index of the kept top `c_a^{m_a}` for the positive arrow at `v`.
    pub fn top_index(&self, v: VertexId) -> usize {
        let a = self.eps.positive_arrow(&self.quiver, v);
        self.index[&Path::Nonzero { first: a, len: self.multiplicity.top_len(&self.quiver, a) }]
    }

    /// The form dual to the sum of the kept tops, weighted per vertex.
    pub fn top_form_with(&self, weight: impl Fn(VertexId) -> F::Elem) -> Vec<F::Elem> {
        let mut form = vec![self.algebra.field().zero(); self.dim()];
        for v in self.quiver.vertex_ids() {
            form[self.top_index(v)] = weight(v);
        }
        form
    }

    /// `φ̄`: one on every kept top, zero on the rest of the basis.
    pub fn top_form(&self) -> Vec<F::Elem> {
        let one = self.algebra.field().one();
        self.top_form_with(|_| one.clone())
    }

    /// Forms tried before any search: the top form and, for a bipartite
    /// graph, the top form signed by a two-colouring of the nodes.
    pub fn candidate_forms(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![self.top_form()];
        if let BipartiteCertificate::Coloring(colors) = graph_of_quiver(&self.quiver).is_bipartite() {
            let field = self.algebra.field().clone();
            out.push(self.top_form_with(|v| {
                let a = self.eps.positive_arrow(&self.quiver, v);
                colors[self.quiver.orbits().orbit_of(a)].to_elem(&field)
            }));
        }
        out
    }

    pub fn arrow_images(&self) -> Vec<SparseVec<F::Elem>> {
        self.quiver.arrow_ids().map(|a| self.arrow_image(a)).collect()
    }

    /// Elements killed by every arrow on both sides.
    pub fn socle(&self) -> Vec<Vec<F::Elem>> {
        self.algebra.two_sided_annihilator(&self.arrow_images())
    }

    /// `ν̄` on the basis: each basis path `p` is sent to `ν(p)`.
    pub fn nakayama_involution_bar(&self, inv: &Involution) -> Vec<SparseVec<F::Elem>> {
        let field = self.algebra.field();
        self.paths
            .iter()
            .enumerate()
            .map(|(i, &p)| vec![(i, inv.path_sign(&self.quiver, p).to_elem(field))])
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NuBarReport {
    pub algebra_map: bool,
    pub involution: bool,
    pub fixes_idempotents: bool,
    pub identity: bool,
}

impl NuBarReport {
    pub fn passed(&self) -> bool {
        self.algebra_map && self.involution && self.fixes_idempotents
    }
}

/// Checks that `ν̄` respects the quotient's relations, squares to the
/// identity and fixes every `e_i`.
pub fn check_nakayama_involution_bar<F: Field>(a: &BrauerQuotient<F>, inv: &Involution) -> NuBarReport {
    let images = a.nakayama_involution_bar(inv);
    let alg = a.algebra();
    let squared_is_id = images.iter().enumerate().all(|(i, img)| {
        img.iter().all(|(k, c)| {
            let back = &images[*k];
            back.len() == 1 && back[0].0 == i && (c.clone() * back[0].1.clone()).is_one()
        })
    });
    let fixes = a.quiver().vertex_ids().all(|v| {
        let img = &images[a.idempotent_index(v)];
        img.len() == 1 && img[0].1.is_one()
    });
    NuBarReport {
        algebra_map: alg.algebra_map_violation(alg, &images).is_none(),
        involution: squared_is_id,
        fixes_idempotents: fixes,
        identity: images.iter().all(|img| img[0].1.is_one()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub pairs_checked: usize,
    /// Pairs `(q, p)` with `φ̄(qp) ≠ φ̄(ν̄(p) q)`.
    pub violations: Vec<(String, String)>,
    pub nondegenerate: bool,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.nondegenerate
    }
}

/// `x ↦ x·φ̄` is a bimodule isomorphism onto the dual twisted by `ν̄` when
/// `φ̄` is `ν̄`-symmetric and nondegenerate.
pub fn check_canonical_bimodule_twist<F: Field>(a: &BrauerQuotient<F>, inv: &Involution) -> TwistReport {
    let alg = a.algebra();
    let phi = a.top_form();
    let nu = a.nakayama_involution_bar(inv);
    let n = alg.dim();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.apply_form(&phi, alg.product(i, j));
            let (k, s) = (nu[j][0].0, nu[j][0].1.clone());
            let rhs = s * alg.apply_form(&phi, alg.product(k, i));
            if lhs != rhs {
                violations.push((alg.label(i).to_string(), alg.label(j).to_string()));
            }
        }
    }
    TwistReport { pairs_checked: n * n, violations, nondegenerate: alg.is_nondegenerate(&phi) }
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleQuotientReport {
    pub socle_dim: (usize, usize),
    /// Whether both socles are spanned by basis vectors.
    pub basis_spanned: bool,
    /// Table equality of the socle quotients, when comparable.
    pub tables_equal: Option<bool>,
}

/// Compares `A/soc A` and `B/soc B` basis-wise for two quotients sharing a
/// path basis.
pub fn compare_socle_quotients<F: Field>(a: &BrauerQuotient<F>, b: &BrauerQuotient<F>) -> SocleQuotientReport {
    let basis_support = |q: &BrauerQuotient<F>| -> (usize, Option<Vec<usize>>) {
        let socle = q.socle();
        let support: Vec<usize> = (0..q.dim())
            .filter(|&i| {
                let mut space = RowSpace::new(q.algebra().field().clone(), q.dim());
                for v in &socle {
                    space.insert(v.clone());
                }
                space.contains(&q.algebra().basis_vector(i))
            })
            .collect();
        let spanned = support.len() == socle.len();
        (socle.len(), spanned.then_some(support))
    };
    let (da, sa) = basis_support(a);
    let (db, sb) = basis_support(b);
    let tables_equal = match (&sa, &sb) {
        (Some(x), Some(y)) if a.paths() == b.paths() => {
            if x != y {
                Some(false)
            } else {
                let keep: Vec<usize> = (0..a.dim()).filter(|i| !x.contains(i)).collect();
                let project = |v: &SparseVec<F::Elem>| -> Vec<(usize, F::Elem)> {
                    let mut w: Vec<(usize, F::Elem)> =
                        v.iter().filter(|(k, c)| !x.contains(k) && !c.is_zero()).cloned().collect();
                    w.sort_by_key(|(k, _)| *k);
                    w
                };
                Some(keep.iter().all(|&i| {
                    keep.iter().all(|&j| project(a.algebra().product(i, j)) == project(b.algebra().product(i, j)))
                }))
            }
        }
        _ => None,
    };
    SocleQuotientReport { socle_dim: (da, db), basis_spanned: sa.is_some() && sb.is_some(), tables_equal }
}

/// `Σ_a m(v_a) n(a)`
pub fn expected_dimension(q: &GentleQuiver, m: &MultiplicityMap) -> usize {
    q.arrow_ids().map(|a| m.top_len(q, a)).sum()
}

/// Determinant of the Gram matrix of a form; handy for reports.
pub fn gram_determinant<F: Field>(alg: &FdAlgebra<F>, form: &[F::Elem]) -> F::Elem {
    linalg::determinant(alg.field(), &alg.gram(form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::polarization::involution_of;
    use crate::quiver::{RawQuiver, SuccessorData};

    fn loop2() -> GentleQuiver {
        GentleQuiver::validate(&RawQuiver {
            name: "loop2".into(),
            vertices: vec!["1".into()],
            arrows: vec![("a".into(), "1".into(), "1".into()), ("b".into(), "1".into(), "1".into())],
            successor: SuccessorData::Sigma(vec![vec!["a".into(), "b".into()]]),
        })
        .unwrap()
    }

    #[test]
    fn loop2_quotients() {
        let q = loop2();
        let f = PrimeField::new(3).unwrap();
        let m = MultiplicityMap::ones(&q);
        let eps = Polarization::standard(&q);
        let twisted = BrauerQuotient::twisted(f, &q, &m, &eps);
        assert_eq!(twisted.algebra().labels(), &["e_1", "a", "ba", "b"]);
        let (a, b) = (q.arrow_by_name("a").unwrap(), q.arrow_by_name("b").unwrap());
        let ia = twisted.index_of(&Path::arrow(a)).unwrap();
        let ib = twisted.index_of(&Path::arrow(b)).unwrap();
        let ba = twisted.top_index(VertexId(0));
        // ab = -ba
        assert_eq!(twisted.algebra().product(ia, ib), &vec![(ba, -f.one())]);
        assert_eq!(twisted.algebra().product(ib, ia), &vec![(ba, f.one())]);
        assert!(twisted.algebra().associativity_violation().is_none());
        assert!(twisted.algebra().unit_violation().is_none());
        let untwisted = BrauerQuotient::untwisted(f, &q, &m, &eps);
        assert_eq!(untwisted.algebra().product(ia, ib), &vec![(ba, f.one())]);
        let socle = twisted.socle();
        assert_eq!(socle.len(), 1);
        assert!(!socle[0][ba].is_zero());
        let nu = involution_of(&q, &eps, 3);
        assert!(check_nakayama_involution_bar(&twisted, &nu).passed());
        assert!(check_canonical_bimodule_twist(&twisted, &nu).passed());
        let cmp = compare_socle_quotients(&twisted, &untwisted);
        assert_eq!(cmp.tables_equal, Some(true));
    }

    #[test]
    fn nodal_quotient_is_not_admissible() {
        let q = GentleQuiver::validate(&RawQuiver {
            name: "nodal".into(),
            vertices: vec!["1".into()],
            arrows: vec![("x".into(), "1".into(), "1".into()), ("y".into(), "1".into(), "1".into())],
            successor: SuccessorData::Sigma(vec![vec!["x".into()], vec!["y".into()]]),
        })
        .unwrap();
        let f = PrimeField::new(5).unwrap();
        let eps = Polarization::standard(&q);
        let a = BrauerQuotient::twisted(f, &q, &MultiplicityMap::ones(&q), &eps);
        assert_eq!(a.dim(), 2);
        assert!(!a.is_admissible());
        let y = q.arrow_by_name("y").unwrap();
        assert_eq!(a.arrow_image(y), vec![(1, -f.one())]);
    }
}
