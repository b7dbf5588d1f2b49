//! Deciding whether a finite-dimensional algebra is symmetric.
//!
//! A symmetric form vanishes on commutators, so the candidates form the
//! annihilator `S` of the commutator span. The algebra is symmetric iff some
//! element of `S` has a nonsingular Gram matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::linalg::RowSpace;

use super::FdAlgebra;

#[derive(Clone, Debug, Serialize)]
pub struct OracleConfig {
    /// Larger algebras are left undecided.
    pub max_dim: usize,
    /// Enumerate `S` outright when `|k|^{dim S}` is at most this.
    pub enumeration_cap: u64,
    pub random_trials: usize,
    /// Starting box for random integer coefficients over `Q`; doubles every
    /// 16 trials.
    pub initial_bound: u64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_dim: 256, enumeration_cap: 1024, random_trials: 128, initial_bound: 3, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// A form handed in by the caller.
    Candidate(usize),
    Enumeration,
    Random { trial: usize },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonSymmetryProof<E> {
    /// A nonzero `u` with `φ(x u) = 0` for all `x` and all symmetric `φ`,
    /// so every symmetric Gram matrix is singular.
    CommonRadical { element: Vec<E>, in_socle: Option<bool> },
    /// Every element of `S` was tried.
    Exhaustive { forms: u64 },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SymmetryVerdict<E> {
    Symmetric { witness: Vec<E>, strategy: Strategy },
    NotSymmetric { proof: NonSymmetryProof<E> },
    /// Random search over an infinite field found nothing.
    ProbablyNotSymmetric { trials: usize, bound: u64 },
    Undecided { reason: String },
}

impl<E> SymmetryVerdict<E> {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric { .. })
    }
    pub fn is_not_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::NotSymmetric { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleOutcome<E> {
    pub dim: usize,
    /// `dim S`
    pub symmetric_forms: usize,
    pub verdict: SymmetryVerdict<E>,
}

/// Basis of the forms vanishing on every commutator `b_i b_j − b_j b_i`.
pub fn symmetric_form_space<F: Field>(alg: &FdAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let n = alg.dim();
    let mut commutators = RowSpace::new(alg.field().clone(), n);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (alg.product(i, j), alg.product(j, i));
            if x.is_empty() && y.is_empty() {
                continue;
            }
            let mut d = alg.to_dense(x);
            for (k, c) in y {
                d[*k] = d[*k].clone() - c.clone();
            }
            if d.iter().any(|c| !c.is_zero()) {
                commutators.insert(d);
            }
        }
    }
    commutators.nullspace()
}

/// `{ u : φ(b_x u) = 0 for all x and all φ in forms }`
pub fn common_radical<F: Field>(alg: &FdAlgebra<F>, forms: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = alg.dim();
    let mut rows = RowSpace::new(alg.field().clone(), n);
    'outer: for phi in forms {
        for x in 0..n {
            let row: Vec<F::Elem> = (0..n).map(|l| alg.apply_form(phi, alg.product(x, l))).collect();
            rows.insert(row);
            if rows.is_full() {
                break 'outer;
            }
        }
    }
    rows.nullspace()
}

fn combine<F: Field>(field: &F, basis: &[Vec<F::Elem>], coeffs: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o = o.clone() + c.clone() * x.clone();
        }
    }
    out
}

/// Decides symmetry. `candidates` are tried first and only count if they
/// lie in `S`; `socle` lets a common-radical certificate say whether it
/// sits in the socle.
pub fn is_symmetric_oracle<F: Field>(
    alg: &FdAlgebra<F>,
    candidates: &[Vec<F::Elem>],
    socle: Option<&[Vec<F::Elem>]>,
    config: &OracleConfig,
) -> OracleOutcome<F::Elem> {
    let n = alg.dim();
    let field = alg.field();
    if n > config.max_dim {
        return OracleOutcome {
            dim: n,
            symmetric_forms: 0,
            verdict: SymmetryVerdict::Undecided { reason: format!("dimension {n} exceeds {}", config.max_dim) },
        };
    }
    let s = symmetric_form_space(alg);
    let outcome = |verdict| OracleOutcome { dim: n, symmetric_forms: s.len(), verdict };

    let radical = common_radical(alg, &s);
    if let Some(u) = radical.into_iter().next() {
        let in_socle = socle.map(|soc| {
            let mut space = RowSpace::new(field.clone(), n);
            for v in soc {
                space.insert(v.clone());
            }
            space.contains(&u)
        });
        return outcome(SymmetryVerdict::NotSymmetric {
            proof: NonSymmetryProof::CommonRadical { element: u, in_socle },
        });
    }

    for (idx, phi) in candidates.iter().enumerate() {
        if alg.is_symmetric_form(phi) && alg.is_nondegenerate(phi) {
            return outcome(SymmetryVerdict::Symmetric { witness: phi.clone(), strategy: Strategy::Candidate(idx) });
        }
    }

    if let (Some(elements), Some(q)) = (field.elements(), field.order()) {
        let total = q.checked_pow(s.len() as u32);
        if let Some(total) = total.filter(|&t| t <= config.enumeration_cap) {
            let mut digits = vec![0usize; s.len()];
            for _ in 1..total {
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < elements.len() {
                        break;
                    }
                    *d = 0;
                }
                let coeffs: Vec<F::Elem> = digits.iter().map(|&d| elements[d].clone()).collect();
                let phi = combine(field, &s, &coeffs, n);
                if alg.is_nondegenerate(&phi) {
                    return outcome(SymmetryVerdict::Symmetric { witness: phi, strategy: Strategy::Enumeration });
                }
            }
            return outcome(SymmetryVerdict::NotSymmetric { proof: NonSymmetryProof::Exhaustive { forms: total } });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut bound = config.initial_bound.max(1);
    for trial in 0..config.random_trials {
        bound = config.initial_bound.max(1).saturating_mul(1 << (trial / 16).min(30));
        let coeffs: Vec<F::Elem> = s.iter().map(|_| field.sample(&mut rng, bound)).collect();
        let phi = combine(field, &s, &coeffs, n);
        if alg.is_nondegenerate(&phi) {
            return outcome(SymmetryVerdict::Symmetric { witness: phi, strategy: Strategy::Random { trial } });
        }
    }
    if field.order().is_some() {
        return outcome(SymmetryVerdict::Undecided {
            reason: format!("{} random forms failed and S is too large to enumerate", config.random_trials),
        });
    }
    outcome(SymmetryVerdict::ProbablyNotSymmetric { trials: config.random_trials, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    /// `k[x]/(x²)`
    fn dual_numbers<F: Field>(f: F) -> FdAlgebra<F> {
        let one = f.one();
        FdAlgebra::new(
            f,
            vec!["1".into(), "x".into()],
            vec![vec![vec![(0, one.clone())], vec![(1, one.clone())]], vec![vec![(1, one.clone())], vec![]]],
            vec![(0, one)],
        )
    }

    /// Upper triangular 2×2 matrices: `e1, e2, u` with `e1 u = u = u e2`.
    fn triangular<F: Field>(f: F) -> FdAlgebra<F> {
        let one = f.one();
        let o = |k| vec![(k, one.clone())];
        FdAlgebra::new(
            f.clone(),
            vec!["e1".into(), "e2".into(), "u".into()],
            vec![vec![o(0), vec![], o(2)], vec![vec![], o(1), vec![]], vec![vec![], o(2), vec![]]],
            vec![(0, f.one()), (1, f.one())],
        )
    }

    #[test]
    fn dual_numbers_are_symmetric() {
        let out = is_symmetric_oracle(&dual_numbers(Rationals), &[], None, &OracleConfig::default());
        assert_eq!(out.symmetric_forms, 2);
        assert!(out.verdict.is_symmetric());
        let out = is_symmetric_oracle(&dual_numbers(PrimeField::new(2).unwrap()), &[], None, &OracleConfig::default());
        assert!(matches!(out.verdict, SymmetryVerdict::Symmetric { strategy: Strategy::Enumeration, .. }));
    }

    #[test]
    fn triangular_matrices_are_not() {
        let alg = triangular(Rationals);
        assert!(alg.associativity_violation().is_none());
        let out = is_symmetric_oracle(&alg, &[], None, &OracleConfig::default());
        assert!(out.verdict.is_not_symmetric(), "{:?}", out.verdict);
    }
}
