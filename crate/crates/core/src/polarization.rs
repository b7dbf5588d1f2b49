//! Polarizations and the involution they induce.

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{ArrowId, GentleQuiver, Path, VertexId};
use crate::ribbon::{graph_of_quiver, BipartiteCertificate, OddWalk};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolarizationError {
    #[error("expected {expected} signs, got {got}")]
    Length { expected: usize, got: usize },
    #[error("arrows out of vertex {0} carry the same sign")]
    NotOpposite(String),
}

/// A sign per arrow, opposite on the two arrows out of each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polarization {
    signs: Vec<Sign>,
}

impl Polarization {
    pub fn new(q: &GentleQuiver, signs: Vec<Sign>) -> Result<Self, PolarizationError> {
        if signs.len() != q.arrow_count() {
            return Err(PolarizationError::Length { expected: q.arrow_count(), got: signs.len() });
        }
        for v in q.vertex_ids() {
            let [a, b] = q.outgoing(v);
            if signs[a.0] == signs[b.0] {
                return Err(PolarizationError::NotOpposite(q.vertex_name(v).to_string()));
            }
        }
        Ok(Self { signs })
    }

    /// Polarization number `bits` in enumeration order: the first vertex
    /// is the most significant bit, and a zero bit gives `+` to the
    /// lexicographically smaller outgoing arrow.
    pub fn from_bits(q: &GentleQuiver, bits: u64) -> Self {
        let n = q.vertex_count();
        let mut signs = vec![Sign::Plus; q.arrow_count()];
        for v in q.vertex_ids() {
            let flipped = (bits >> (n - 1 - v.0)) & 1 == 1;
            let [small, large] = q.outgoing(v);
            let s = if flipped { Sign::Minus } else { Sign::Plus };
            signs[small.0] = s;
            signs[large.0] = -s;
        }
        Self { signs }
    }

    /// The first polarization in enumeration order.
    pub fn standard(q: &GentleQuiver) -> Self {
        Self::from_bits(q, 0)
    }

    pub fn sign(&self, a: ArrowId) -> Sign {
        self.signs[a.0]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn positive_arrow(&self, q: &GentleQuiver, v: VertexId) -> ArrowId {
        let [a, b] = q.outgoing(v);
        if self.sign(a).is_plus() {
            a
        } else {
            b
        }
    }

    pub fn negative_arrow(&self, q: &GentleQuiver, v: VertexId) -> ArrowId {
        q.partner(self.positive_arrow(q, v))
    }

    pub fn is_sigma_stable(&self, q: &GentleQuiver) -> bool {
        q.arrow_ids().all(|a| self.sign(a) == self.sign(q.sigma(a)))
    }

    /// `(arrow name, sign)` pairs in arrow order.
    pub fn named(&self, q: &GentleQuiver) -> Vec<(String, Sign)> {
        q.arrow_ids().map(|a| (q.arrow_name(a).to_string(), self.sign(a))).collect()
    }
}

/// All `2^{|Q_0|}` polarizations in enumeration order.
pub fn enumerate_polarizations(q: &GentleQuiver) -> Vec<Polarization> {
    assert!(q.vertex_count() < 32, "too many vertices to enumerate polarizations");
    (0..1u64 << q.vertex_count()).map(|bits| Polarization::from_bits(q, bits)).collect()
}

/// A σ-stable polarization pulled back from a two-colouring of the graph,
/// or the odd walk showing that none exists.
pub fn find_sigma_stable(q: &GentleQuiver) -> Result<Polarization, OddWalk> {
    let g = graph_of_quiver(q);
    match g.is_bipartite() {
        BipartiteCertificate::Coloring(colors) => {
            let signs = q.arrow_ids().map(|a| colors[q.orbits().orbit_of(a)]).collect();
            Ok(Polarization::new(q, signs).expect("adjacent nodes have different colours"))
        }
        BipartiteCertificate::OddWalk(w) => Err(w),
    }
}

/// The involution `a ↦ ε_{σ(a)} ε_a · a`, signs read in a field of the
/// given characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Involution {
    symbolic: Vec<Sign>,
    characteristic: u64,
}

impl Involution {
    /// Sign of `a` as the field sees it.
    pub fn sign(&self, a: ArrowId) -> Sign {
        self.symbolic[a.0].in_characteristic(self.characteristic)
    }

    /// `ε_{σ(a)} ε_a` before interpretation in the field.
    pub fn symbolic_sign(&self, a: ArrowId) -> Sign {
        self.symbolic[a.0]
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// `ν(p) = path_sign(p) · p`
    pub fn path_sign(&self, q: &GentleQuiver, p: Path) -> Sign {
        q.path_arrows(p).into_iter().fold(Sign::Plus, |acc, a| acc * self.sign(a))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.symbolic.len()).all(|a| self.sign(ArrowId(a)).is_plus())
    }
}

pub fn involution_of(q: &GentleQuiver, eps: &Polarization, characteristic: u64) -> Involution {
    let symbolic = q.arrow_ids().map(|a| eps.sign(q.sigma(a)) * eps.sign(a)).collect();
    Involution { symbolic, characteristic }
}

pub fn is_involution_trivial(inv: &Involution) -> bool {
    inv.is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{RawQuiver, SuccessorData};

    fn single_vertex(a: &str, b: &str, sigma: &[&[&str]]) -> GentleQuiver {
        GentleQuiver::validate(&RawQuiver {
            name: "q".into(),
            vertices: vec!["1".into()],
            arrows: vec![(a.into(), "1".into(), "1".into()), (b.into(), "1".into(), "1".into())],
            successor: SuccessorData::Sigma(
                sigma.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
            ),
        })
        .unwrap()
    }

    #[test]
    fn loop2_involution_is_parity() {
        let q = single_vertex("a", "b", &[&["a", "b"]]);
        let all = enumerate_polarizations(&q);
        assert_eq!(all.len(), 2);
        let eps = &all[0];
        assert_eq!(eps.sign(ArrowId(0)), Sign::Plus);
        let nu = involution_of(&q, eps, 0);
        assert_eq!(nu.sign(ArrowId(0)), Sign::Minus);
        assert!(!nu.is_trivial());
        assert!(involution_of(&q, eps, 2).is_trivial());
        assert!(find_sigma_stable(&q).is_err());
    }

    #[test]
    fn nodal_involution_is_identity() {
        let q = single_vertex("x", "y", &[&["x"], &["y"]]);
        let eps = Polarization::standard(&q);
        assert_eq!(eps.sign(q.arrow_by_name("x").unwrap()), Sign::Plus);
        assert!(involution_of(&q, &eps, 3).is_trivial());
        assert!(find_sigma_stable(&q).unwrap().is_sigma_stable(&q));
    }

    #[test]
    fn rejects_equal_signs_at_a_vertex() {
        let q = single_vertex("x", "y", &[&["x"], &["y"]]);
        assert!(Polarization::new(&q, vec![Sign::Plus, Sign::Plus]).is_err());
    }
}
