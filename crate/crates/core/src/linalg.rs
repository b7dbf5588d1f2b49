//! Exact dense linear algebra over a [`Field`], plus a fraction-free
//! determinant over `k[t]`.

use crate::field::{Field, Scalar};
use crate::poly::Poly;

/// Row space of a growing set of vectors, kept in echelon form.
///
/// Every stored row has leading coefficient `1` at its pivot and zeros in
/// all columns before it.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self { field, ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let factor = v[c].clone();
                for (x, y) in v[c..].iter_mut().zip(&self.rows[r][c..]) {
                    if !y.is_zero() {
                        *x = x.clone() - factor.clone() * y.clone();
                    }
                }
            }
        }
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero field element is invertible");
        for x in v[p..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(v);
        true
    }

    /// Inserts sparse `(column, value)` entries, summing repeated columns.
    pub fn insert_sparse(&mut self, entries: &[(usize, F::Elem)]) -> bool {
        let mut v = vec![self.field.zero(); self.ncols];
        for (c, x) in entries {
            v[*c] = v[*c].clone() + x.clone();
        }
        self.insert(v)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Basis of `{ v : r · v = 0 for every row r }`.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let reduced = self.reduced_rows();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (row, &p) in reduced.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Fully reduced rows (each pivot column is zero in every other row),
    /// in insertion order.
    pub fn reduced_rows(&self) -> Vec<Vec<F::Elem>> {
        let mut rows = self.rows.clone();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.pivots[r]));
        for &r in &order {
            let p = self.pivots[r];
            for other in 0..rows.len() {
                if other == r || rows[other][p].is_zero() {
                    continue;
                }
                let factor = rows[other][p].clone();
                let (src, dst) = if r < other {
                    let (a, b) = rows.split_at_mut(other);
                    (&a[r], &mut b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[other])
                };
                for (x, y) in dst[p..].iter_mut().zip(&src[p..]) {
                    if !y.is_zero() {
                        *x = x.clone() - factor.clone() * y.clone();
                    }
                }
            }
        }
        rows
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut space = RowSpace::new(field.clone(), ncols);
    for r in rows {
        space.insert(r.clone());
    }
    space.rank()
}

/// Right null space of a matrix given by rows.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut space = RowSpace::new(field.clone(), ncols);
    for r in rows {
        space.insert(r.clone());
    }
    space.nullspace()
}

pub fn determinant<F: Field>(field: &F, matrix: &[Vec<F::Elem>]) -> F::Elem {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return field.zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = det * pivot.clone();
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].clone() * inv.clone();
            for j in k..n {
                let sub = factor.clone() * m[k][j].clone();
                m[i][j] = m[i][j].clone() - sub;
            }
        }
    }
    det
}

pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub type PolyMatrix<E> = Vec<Vec<Poly<E>>>;

pub fn poly_identity<E: Scalar>(one: &E, n: usize) -> PolyMatrix<E> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::constant(one.clone()) } else { Poly::zero() }).collect())
        .collect()
}

pub fn poly_mat_mul<E: Scalar>(a: &PolyMatrix<E>, b: &PolyMatrix<E>) -> PolyMatrix<E> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Poly::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&row[k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant over `k[t]` by Bareiss elimination. Every division is exact.
pub fn poly_determinant<E: Scalar>(one: &E, matrix: &PolyMatrix<E>) -> Poly<E> {
    let n = matrix.len();
    if n == 0 {
        return Poly::constant(one.clone());
    }
    let mut m = matrix.clone();
    let mut negate = false;
    let mut prev = Poly::constant(one.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
