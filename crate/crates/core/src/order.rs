//! Exact arithmetic in the ribbon graph order: elements, the canonical
//! basis over `k[t]`, the Frobenius form, the maps `θ` and `ψ`, and the
//! Cartan matrix.
//!
//! Every element that is ever built is a finite combination of paths, so
//! coordinates over `k⟦t⟧` are always polynomials.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Rationals, Scalar};
use crate::linalg::{self, PolyMatrix};
use crate::polarization::{involution_of, Involution, Polarization};
use crate::poly::Poly;
use crate::quiver::{ArrowId, GentleQuiver, MultiplicityMap, Path, VertexId};
use crate::ribbon::graph_of_quiver;
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("elements belong to different quivers")]
    Mismatch,
    #[error("the canonical basis is only available for multiplicity one")]
    UnsupportedMultiplicity,
}

fn fingerprint(q: &GentleQuiver) -> u64 {
    let mut h = DefaultHasher::new();
    q.vertex_names().hash(&mut h);
    for a in q.arrows() {
        (&a.name, a.source, a.target).hash(&mut h);
    }
    q.sigma_permutation().hash(&mut h);
    h.finish()
}

/// A finite linear combination of nonzero paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderElement<E> {
    terms: BTreeMap<Path, E>,
    fingerprint: u64,
}

impl<E: Scalar> OrderElement<E> {
    pub fn terms(&self) -> &BTreeMap<Path, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&E> {
        self.terms.get(p)
    }

    fn add_term(&mut self, p: Path, c: E) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            None => {
                self.terms.insert(p, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(p, sum);
                }
            }
        }
    }
}

/// The order of a complete gentle quiver over a field.
#[derive(Clone, Debug)]
pub struct Order<'q, F: Field> {
    quiver: &'q GentleQuiver,
    field: F,
    fingerprint: u64,
}

impl<'q, F: Field> Order<'q, F> {
    pub fn new(quiver: &'q GentleQuiver, field: F) -> Self {
        Self { quiver, field, fingerprint: fingerprint(quiver) }
    }

    pub fn quiver(&self) -> &'q GentleQuiver {
        self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn zero(&self) -> OrderElement<F::Elem> {
        OrderElement { terms: BTreeMap::new(), fingerprint: self.fingerprint }
    }

    pub fn term(&self, p: Path, c: F::Elem) -> OrderElement<F::Elem> {
        let mut x = self.zero();
        x.add_term(p, c);
        x
    }

    pub fn path(&self, p: Path) -> OrderElement<F::Elem> {
        self.term(p, self.field.one())
    }

    pub fn arrow(&self, a: ArrowId) -> OrderElement<F::Elem> {
        self.path(Path::arrow(a))
    }

    pub fn idempotent(&self, v: VertexId) -> OrderElement<F::Elem> {
        self.path(Path::Trivial(v))
    }

    pub fn one(&self) -> OrderElement<F::Elem> {
        let mut x = self.zero();
        for v in self.quiver.vertex_ids() {
            x.add_term(Path::Trivial(v), self.field.one());
        }
        x
    }

    fn check(&self, x: &OrderElement<F::Elem>) -> Result<(), OrderError> {
        if x.fingerprint == self.fingerprint {
            Ok(())
        } else {
            Err(OrderError::Mismatch)
        }
    }

    pub fn add(&self, x: &OrderElement<F::Elem>, y: &OrderElement<F::Elem>) -> Result<OrderElement<F::Elem>, OrderError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        for (p, c) in &y.terms {
            out.add_term(*p, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, x: &OrderElement<F::Elem>, c: &F::Elem) -> OrderElement<F::Elem> {
        let mut out = self.zero();
        for (p, d) in &x.terms {
            out.add_term(*p, d.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, x: &OrderElement<F::Elem>, y: &OrderElement<F::Elem>) -> Result<OrderElement<F::Elem>, OrderError> {
        self.add(x, &self.scale(y, &-self.field.one()))
    }

    /// `x · y`, where `y` acts first.
    pub fn multiply(
        &self,
        x: &OrderElement<F::Elem>,
        y: &OrderElement<F::Elem>,
    ) -> Result<OrderElement<F::Elem>, OrderError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (p, c) in &x.terms {
            for (r, d) in &y.terms {
                if let Some(pr) = self.quiver.compose(*p, *r) {
                    out.add_term(pr, c.clone() * d.clone());
                }
            }
        }
        Ok(out)
    }

    /// `z = Σ_a c_a^{m_a}`
    pub fn central_element_z(&self, m: &MultiplicityMap) -> OrderElement<F::Elem> {
        let mut z = self.zero();
        for a in self.quiver.arrow_ids() {
            z.add_term(Path::Nonzero { first: a, len: m.top_len(self.quiver, a) }, self.field.one());
        }
        z
    }

    /// `z^r`
    pub fn z_power(&self, m: &MultiplicityMap, r: usize) -> OrderElement<F::Elem> {
        let mut acc = self.one();
        let z = self.central_element_z(m);
        for _ in 0..r {
            acc = self.multiply(&acc, &z).expect("same order");
        }
        acc
    }

    /// Whether `x` commutes with every arrow and idempotent.
    pub fn commutes_with_generators(&self, x: &OrderElement<F::Elem>) -> bool {
        let gens = self
            .quiver
            .vertex_ids()
            .map(|v| self.idempotent(v))
            .chain(self.quiver.arrow_ids().map(|a| self.arrow(a)));
        gens.into_iter().all(|g| self.multiply(&g, x).ok() == self.multiply(x, &g).ok())
    }

    /// `ν(x)`
    pub fn apply_involution(&self, inv: &Involution, x: &OrderElement<F::Elem>) -> OrderElement<F::Elem> {
        let mut out = self.zero();
        for (p, c) in &x.terms {
            out.add_term(*p, inv.path_sign(self.quiver, *p).to_elem(&self.field) * c.clone());
        }
        out
    }

    pub fn display(&self, x: &OrderElement<F::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(p, c)| {
                let name = self.quiver.path_name(*p);
                if c.is_one() {
                    name
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element of the canonical basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElem {
    /// `e_i`
    Idempotent(VertexId),
    /// `x_i`, the cycle of the positive arrow at `i`.
    Top(VertexId),
    /// `a_m` for `1 ≤ m < n(a)`.
    Arrow { first: ArrowId, len: usize },
}

/// Coordinates over `k[t]` with respect to the canonical basis.
pub type RVector<E> = Vec<Poly<E>>;

/// The basis `{e_i, x_i} ∪ {a_m : 1 ≤ m < n(a)}` of the order over `k⟦t⟧`.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    eps: Polarization,
    elems: Vec<BasisElem>,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    idem: Vec<usize>,
    top: Vec<usize>,
}

impl CanonicalBasis {
    pub fn new(q: &GentleQuiver, eps: &Polarization) -> Self {
        let mut elems: Vec<BasisElem> = q.vertex_ids().map(BasisElem::Idempotent).collect();
        elems.extend(q.vertex_ids().map(BasisElem::Top));
        for a in q.arrow_ids() {
            elems.extend((1..q.n(a)).map(|len| BasisElem::Arrow { first: a, len }));
        }
        let paths: Vec<Path> = elems
            .iter()
            .map(|b| match *b {
                BasisElem::Idempotent(v) => Path::Trivial(v),
                BasisElem::Top(v) => q.cycle_path(eps.positive_arrow(q, v)),
                BasisElem::Arrow { first, len } => Path::Nonzero { first, len },
            })
            .collect();
        let index = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let nv = q.vertex_count();
        Self {
            eps: eps.clone(),
            elems,
            paths,
            index,
            idem: (0..nv).collect(),
            top: (nv..2 * nv).collect(),
        }
    }

    /// The basis exists only in the multiplicity-one frame.
    pub fn for_multiplicity(q: &GentleQuiver, eps: &Polarization, m: &MultiplicityMap) -> Result<Self, OrderError> {
        if !m.is_one() {
            return Err(OrderError::UnsupportedMultiplicity);
        }
        Ok(Self::new(q, eps))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn polarization(&self) -> &Polarization {
        &self.eps
    }

    pub fn elems(&self) -> &[BasisElem] {
        &self.elems
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> Path {
        self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent_index(&self, v: VertexId) -> usize {
        self.idem[v.0]
    }

    pub fn top_index(&self, v: VertexId) -> usize {
        self.top[v.0]
    }

    pub fn name(&self, q: &GentleQuiver, i: usize) -> String {
        q.path_name(self.paths[i])
    }

    pub fn names(&self, q: &GentleQuiver) -> Vec<String> {
        (0..self.len()).map(|i| self.name(q, i)).collect()
    }

    /// `∂^m c_a = σ^m(a)_{n(a) - m}` for the basis element `a_m`.
    pub fn complement(&self, q: &GentleQuiver, i: usize) -> Option<usize> {
        match self.elems[i] {
            BasisElem::Arrow { first, len } => {
                let rest = Path::Nonzero { first: q.sigma_pow(first, len), len: q.n(first) - len };
                self.index_of(&rest)
            }
            _ => None,
        }
    }

    /// Coordinates of a single path.
    pub fn path_coordinates<F: Field>(&self, q: &GentleQuiver, field: &F, p: Path) -> RVector<F::Elem> {
        let mut v = vec![Poly::zero(); self.len()];
        self.add_path(q, p, &field.one(), &mut v);
        v
    }

    fn add_path<E: Scalar>(&self, q: &GentleQuiver, p: Path, c: &E, out: &mut RVector<E>) {
        let mut bump = |i: usize, poly: Poly<E>| out[i] = &out[i] + &poly;
        match p {
            Path::Trivial(v) => bump(self.idempotent_index(v), Poly::constant(c.clone())),
            Path::Nonzero { first, len } => {
                let n = q.n(first);
                let (r, m) = (len / n, len % n);
                if m != 0 {
                    let i = self.index_of(&Path::Nonzero { first, len: m }).expect("a_m is a basis element");
                    bump(i, Poly::monomial(c.clone(), r));
                } else {
                    let v = q.source(first);
                    let x = self.top_index(v);
                    if self.eps.sign(first).is_plus() {
                        bump(x, Poly::monomial(c.clone(), r - 1));
                    } else {
                        // c_b = y_i = t e_i - x_i
                        bump(self.idempotent_index(v), Poly::monomial(c.clone(), r));
                        bump(x, Poly::monomial(-c.clone(), r - 1));
                    }
                }
            }
        }
    }

    pub fn coordinates<F: Field>(&self, order: &Order<'_, F>, x: &OrderElement<F::Elem>) -> RVector<F::Elem> {
        let mut v = vec![Poly::zero(); self.len()];
        for (p, c) in x.terms() {
            self.add_path(order.quiver(), *p, c, &mut v);
        }
        v
    }

    /// Back from coordinates, reading `t` as `z = Σ_a c_a`.
    pub fn expand<F: Field>(&self, order: &Order<'_, F>, v: &RVector<F::Elem>) -> OrderElement<F::Elem> {
        let q = order.quiver();
        let mut out = order.zero();
        for (i, poly) in v.iter().enumerate() {
            for (r, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match self.elems[i] {
                    BasisElem::Idempotent(vtx) => {
                        if r == 0 {
                            out.add_term(Path::Trivial(vtx), c.clone());
                        } else {
                            for a in q.outgoing(vtx) {
                                out.add_term(Path::Nonzero { first: a, len: r * q.n(a) }, c.clone());
                            }
                        }
                    }
                    BasisElem::Top(vtx) => {
                        let a = self.eps.positive_arrow(q, vtx);
                        out.add_term(Path::Nonzero { first: a, len: (r + 1) * q.n(a) }, c.clone());
                    }
                    BasisElem::Arrow { first, len } => {
                        out.add_term(Path::Nonzero { first, len: len + r * q.n(first) }, c.clone());
                    }
                }
            }
        }
        out
    }

    /// `φ`: the sum of the `x_i`-coordinates.
    pub fn frobenius<E: Scalar>(&self, v: &RVector<E>) -> Poly<E> {
        self.top.iter().fold(Poly::zero(), |acc, &i| &acc + &v[i])
    }

    pub fn frobenius_eval<F: Field>(&self, order: &Order<'_, F>, x: &OrderElement<F::Elem>) -> Poly<F::Elem> {
        self.frobenius(&self.coordinates(order, x))
    }

    /// `φ(b_q · b_p)`
    pub fn frobenius_of_product<F: Field>(&self, q: &GentleQuiver, field: &F, i: usize, j: usize) -> Poly<F::Elem> {
        match q.compose(self.paths[i], self.paths[j]) {
            None => Poly::zero(),
            Some(p) => frobenius_closed_form(q, &self.eps, field, p),
        }
    }
}

/// `φ(c_a^r) = ε_a t^{r-1}`, and `φ` vanishes on every other path.
pub fn frobenius_closed_form<F: Field>(q: &GentleQuiver, eps: &Polarization, field: &F, p: Path) -> Poly<F::Elem> {
    match p {
        Path::Nonzero { first, len } if len % q.n(first) == 0 => {
            Poly::monomial(eps.sign(first).to_elem(field), len / q.n(first) - 1)
        }
        _ => Poly::zero(),
    }
}

/// The ordered basis pairs `(q, p)` with `φ(q·p) ≠ 0` predicted by the
/// closed-form list: `(x_i, x_i)`, `(x_i, e_i)`, `(e_i, x_i)` and
/// `(∂^m c_a, a_m)`.
pub fn predicted_nonzero_pairs(q: &GentleQuiver, basis: &CanonicalBasis) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for v in q.vertex_ids() {
        let (e, x) = (basis.idempotent_index(v), basis.top_index(v));
        out.extend([(x, x), (x, e), (e, x)]);
    }
    for i in 0..basis.len() {
        if let Some(c) = basis.complement(q, i) {
            out.insert((c, i));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NuSymmetryReport {
    pub pairs_checked: usize,
    /// Basis pairs `(q, p)` with `φ(qp) ≠ φ(ν(p)q)`.
    pub violations: Vec<(String, String)>,
    pub nonzero_pairs: Vec<(String, String)>,
    pub nonzero_list_matches: bool,
}

impl NuSymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.nonzero_list_matches
    }
}

/// Checks `φ(qp) = φ(ν(p)q)` on all ordered basis pairs and compares the
/// nonzero pairs to the predicted list.
pub fn check_nu_symmetry<F: Field>(q: &GentleQuiver, eps: &Polarization, field: &F) -> NuSymmetryReport {
    let basis = CanonicalBasis::new(q, eps);
    let order = Order::new(q, field.clone());
    let nu = involution_of(q, eps, field.characteristic());
    let names = basis.names(q);
    let mut violations = Vec::new();
    let mut nonzero = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let qp = order.multiply(&order.path(basis.path(i)), &order.path(basis.path(j))).expect("same order");
            let lhs = basis.frobenius_eval(&order, &qp);
            if !lhs.is_zero() {
                nonzero.insert((i, j));
            }
            let nu_p = order.apply_involution(&nu, &order.path(basis.path(j)));
            let prod = order.multiply(&nu_p, &order.path(basis.path(i))).expect("same order");
            let rhs = basis.frobenius_eval(&order, &prod);
            if lhs != rhs {
                violations.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let matches = nonzero == predicted_nonzero_pairs(q, &basis);
    NuSymmetryReport {
        pairs_checked: basis.len() * basis.len(),
        violations,
        nonzero_pairs: nonzero.iter().map(|&(i, j)| (names[i].clone(), names[j].clone())).collect(),
        nonzero_list_matches: matches,
    }
}

/// `Θ[q][p] = φ(b_q · b_p)`: column `p` is `θ(p) = p·φ` in the dual basis.
pub fn theta_matrix<F: Field>(q: &GentleQuiver, basis: &CanonicalBasis, field: &F) -> PolyMatrix<F::Elem> {
    let order = Order::new(q, field.clone());
    (0..basis.len())
        .map(|i| {
            (0..basis.len())
                .map(|j| {
                    let prod = order.multiply(&order.path(basis.path(i)), &order.path(basis.path(j))).expect("same order");
                    basis.frobenius_eval(&order, &prod)
                })
                .collect()
        })
        .collect()
}

/// `θ` from its closed form: `e_i ↦ x_i^∨`, `x_i ↦ e_i^∨ + t x_i^∨`,
/// `a_m ↦ ε_a (∂^m c_a)^∨`.
pub fn theta_closed_form<F: Field>(q: &GentleQuiver, basis: &CanonicalBasis, field: &F) -> PolyMatrix<F::Elem> {
    let n = basis.len();
    let mut m = vec![vec![Poly::zero(); n]; n];
    for v in q.vertex_ids() {
        let (e, x) = (basis.idempotent_index(v), basis.top_index(v));
        m[x][e] = Poly::constant(field.one());
        m[e][x] = Poly::constant(field.one());
        m[x][x] = Poly::monomial(field.one(), 1);
    }
    for i in 0..n {
        if let (BasisElem::Arrow { first, .. }, Some(c)) = (basis.elems()[i], basis.complement(q, i)) {
            m[c][i] = Poly::constant(basis.polarization().sign(first).to_elem(field));
        }
    }
    m
}

/// `ψ`: `x_i^∨ ↦ e_i`, `e_i^∨ ↦ x_i − t e_i`, `a_m^∨ ↦ ε_{σ^m(a)} ∂^m c_a`.
pub fn psi_closed_form<F: Field>(q: &GentleQuiver, basis: &CanonicalBasis, field: &F) -> PolyMatrix<F::Elem> {
    let n = basis.len();
    let mut m = vec![vec![Poly::zero(); n]; n];
    for v in q.vertex_ids() {
        let (e, x) = (basis.idempotent_index(v), basis.top_index(v));
        m[e][x] = Poly::constant(field.one());
        m[x][e] = Poly::constant(field.one());
        m[e][e] = Poly::monomial(-field.one(), 1);
    }
    for i in 0..n {
        if let (BasisElem::Arrow { first, len }, Some(c)) = (basis.elems()[i], basis.complement(q, i)) {
            let s = basis.polarization().sign(q.sigma_pow(first, len));
            m[c][i] = Poly::constant(s.to_elem(field));
        }
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaPsiReport {
    pub rank: usize,
    pub theta_matches_closed_form: bool,
    pub theta_psi_is_identity: bool,
    pub psi_theta_is_identity: bool,
    pub det_theta: String,
    pub det_is_unit: bool,
    /// Failures of `θ(u·ν(p)) = θ(u)·p`, as `(u, p)`.
    pub right_violations: Vec<(String, String)>,
    /// Failures of `θ(p·u) = p·θ(u)`, as `(u, p)`.
    pub left_violations: Vec<(String, String)>,
}

impl ThetaPsiReport {
    pub fn passed(&self) -> bool {
        self.theta_matches_closed_form
            && self.theta_psi_is_identity
            && self.psi_theta_is_identity
            && self.det_is_unit
            && self.right_violations.is_empty()
            && self.left_violations.is_empty()
    }
}

pub fn verify_theta_psi<F: Field>(q: &GentleQuiver, eps: &Polarization, field: &F) -> ThetaPsiReport {
    let basis = CanonicalBasis::new(q, eps);
    let order = Order::new(q, field.clone());
    let nu = involution_of(q, eps, field.characteristic());
    let theta = theta_matrix(q, &basis, field);
    let psi = psi_closed_form(q, &basis, field);
    let n = basis.len();
    let id = linalg::poly_identity(&field.one(), n);
    let det = linalg::poly_determinant(&field.one(), &theta);

    let generators: Vec<Path> =
        q.vertex_ids().map(Path::Trivial).chain(q.arrow_ids().map(Path::arrow)).collect();
    let coords = |x: &OrderElement<F::Elem>| basis.coordinates(&order, x);
    // θ(v)(y) for an element with coordinates v
    let theta_at = |v: &RVector<F::Elem>, y: usize| {
        (0..n).fold(Poly::zero(), |acc, k| if v[k].is_zero() { acc } else { &acc + &(&v[k] * &theta[y][k]) })
    };
    // θ(u)(w) for a basis element u and an element with coordinates w
    let theta_u_on = |u: usize, w: &RVector<F::Elem>| {
        (0..n).fold(Poly::zero(), |acc, k| if w[k].is_zero() { acc } else { &acc + &(&theta[k][u] * &w[k]) })
    };
    let names = basis.names(q);
    let mut right = Vec::new();
    let mut left = Vec::new();
    for u in 0..n {
        let bu = order.path(basis.path(u));
        for &p in &generators {
            let bp = order.path(p);
            let nu_p = order.apply_involution(&nu, &bp);
            let u_nup = coords(&order.multiply(&bu, &nu_p).expect("same order"));
            let p_u = coords(&order.multiply(&bp, &bu).expect("same order"));
            let mut right_ok = true;
            let mut left_ok = true;
            for y in 0..n {
                let by = order.path(basis.path(y));
                let p_y = coords(&order.multiply(&bp, &by).expect("same order"));
                let y_p = coords(&order.multiply(&by, &bp).expect("same order"));
                right_ok &= theta_at(&u_nup, y) == theta_u_on(u, &p_y);
                left_ok &= theta_at(&p_u, y) == theta_u_on(u, &y_p);
            }
            if !right_ok {
                right.push((names[u].clone(), q.path_name(p)));
            }
            if !left_ok {
                left.push((names[u].clone(), q.path_name(p)));
            }
        }
    }
    ThetaPsiReport {
        rank: n,
        theta_matches_closed_form: theta == theta_closed_form(q, &basis, field),
        theta_psi_is_identity: linalg::poly_mat_mul(&theta, &psi) == id,
        psi_theta_is_identity: linalg::poly_mat_mul(&psi, &theta) == id,
        det_theta: det.to_string(),
        det_is_unit: det.is_unit(),
        right_violations: right,
        left_violations: left,
    }
}

/// `C[j][i]` counts canonical basis elements from vertex `i` to vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn new(q: &GentleQuiver, basis: &CanonicalBasis) -> Self {
        let n = q.vertex_count();
        let mut entries = vec![vec![0u64; n]; n];
        for &p in basis.paths() {
            entries[q.path_target(p).0][q.path_source(p).0] += 1;
        }
        Self { entries }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let field = Rationals;
        let rows: Vec<Vec<BigRational>> =
            self.entries.iter().map(|r| r.iter().map(|&x| field.from_int(x as i64)).collect()).collect();
        linalg::rank(&field, &rows, self.entries.len())
    }
}

pub fn cartan_matrix(q: &GentleQuiver, eps: &Polarization) -> CartanMatrix {
    CartanMatrix::new(q, &CanonicalBasis::new(q, eps))
}

/// Cartan rank against `|G_0| − c_G` and against `|G_0|` minus the number of
/// bipartite components.
#[derive(Clone, Debug, Serialize)]
pub struct CartanRankReport {
    pub rank: usize,
    pub nodes: usize,
    pub components: usize,
    pub bipartite_components: usize,
    pub bipartite: bool,
    /// `rank = |G_0| − c_G`
    pub formula_holds: bool,
    /// `rank = |G_0| − #bipartite components`
    pub refined_holds: bool,
}

impl CartanRankReport {
    /// The criterion predicts `formula_holds` exactly when the graph is
    /// bipartite.
    pub fn agrees_with_bipartiteness(&self) -> bool {
        self.formula_holds == self.bipartite
    }
}

pub fn cartan_rank_check(q: &GentleQuiver) -> CartanRankReport {
    let g = graph_of_quiver(q);
    let rank = cartan_matrix(q, &Polarization::standard(q)).rank();
    let nodes = g.node_count();
    let components = g.connected_components().len();
    let bipartite_components = g.bipartite_component_count();
    CartanRankReport {
        rank,
        nodes,
        components,
        bipartite_components,
        bipartite: g.is_bipartite().is_bipartite(),
        formula_holds: rank + components == nodes,
        refined_holds: rank + bipartite_components == nodes,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    /// `Σ_a m(v_a) n(a)`
    pub rank: usize,
    /// Size of the canonical basis when `m ≡ 1`.
    pub basis_size: Option<usize>,
}

impl RankReport {
    pub fn consistent(&self) -> bool {
        self.basis_size.is_none_or(|b| b == self.rank)
    }
}

pub fn rank_formula_check(q: &GentleQuiver, m: &MultiplicityMap) -> RankReport {
    let rank = q.arrow_ids().map(|a| m.top_len(q, a)).sum();
    let basis_size = m.is_one().then(|| CanonicalBasis::new(q, &Polarization::standard(q)).len());
    RankReport { rank, basis_size }
}

/// The cycle type of `σ` as a sorted multiset of orbit sizes.
pub fn cycle_type(q: &GentleQuiver) -> Vec<usize> {
    let mut sizes: Vec<usize> = q.orbits().iter().map(<[ArrowId]>::len).collect();
    sizes.sort_unstable();
    sizes
}

/// Signs of the positive arrow at each vertex, for reports.
pub fn positive_arrows(q: &GentleQuiver, eps: &Polarization) -> Vec<(String, String)> {
    q.vertex_ids()
        .map(|v| (q.vertex_name(v).to_string(), q.arrow_name(eps.positive_arrow(q, v)).to_string()))
        .collect()
}

/// `ε` as `+`/`−` per arrow.
pub fn sign_table(q: &GentleQuiver, eps: &Polarization) -> Vec<(String, Sign)> {
    eps.named(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::{RawQuiver, SuccessorData};

    fn quiver(arrows: &[&str], sigma: &[&[&str]]) -> GentleQuiver {
        GentleQuiver::validate(&RawQuiver {
            name: "q".into(),
            vertices: vec!["1".into()],
            arrows: arrows.iter().map(|a| (a.to_string(), "1".into(), "1".into())).collect(),
            successor: SuccessorData::Sigma(
                sigma.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
            ),
        })
        .unwrap()
    }

    #[test]
    fn loop2_basis_and_coordinates() {
        let q = quiver(&["a", "b"], &[&["a", "b"]]);
        let eps = Polarization::standard(&q);
        let basis = CanonicalBasis::new(&q, &eps);
        assert_eq!(basis.names(&q), vec!["e_1", "ba", "a", "b"]);
        let f = PrimeField::new(5).unwrap();
        let b = q.arrow_by_name("b").unwrap();
        // abab = c_b^2 = t (t e_1 - x_1)
        let v = basis.path_coordinates(&q, &f, Path::Nonzero { first: b, len: 4 });
        assert_eq!(v[0], Poly::monomial(f.one(), 2));
        assert_eq!(v[1], Poly::monomial(-f.one(), 1));
        assert_eq!(basis.frobenius(&v), Poly::monomial(-f.one(), 1));
    }

    #[test]
    fn nodal_theta_matrix() {
        let q = quiver(&["x", "y"], &[&["x"], &["y"]]);
        let eps = Polarization::standard(&q);
        let basis = CanonicalBasis::new(&q, &eps);
        let f = PrimeField::new(3).unwrap();
        let theta = theta_matrix(&q, &basis, &f);
        let one = Poly::constant(f.one());
        assert_eq!(theta, vec![vec![Poly::zero(), one.clone()], vec![one, Poly::monomial(f.one(), 1)]]);
        assert!(verify_theta_psi(&q, &eps, &f).passed());
        assert_eq!(cartan_matrix(&q, &eps).entries, vec![vec![2]]);
    }

    #[test]
    fn mismatched_quivers_are_rejected() {
        let q1 = quiver(&["a", "b"], &[&["a", "b"]]);
        let q2 = quiver(&["x", "y"], &[&["x"], &["y"]]);
        let f = PrimeField::new(3).unwrap();
        let o1 = Order::new(&q1, f);
        let o2 = Order::new(&q2, f);
        assert_eq!(o1.multiply(&o1.one(), &o2.one()), Err(OrderError::Mismatch));
    }
}
